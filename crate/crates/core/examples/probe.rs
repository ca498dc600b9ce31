//! Runs one search and prints the outcome and witness.
//!
//! `cargo run --release --example probe -- <kind> <n> [days] [workers] [timeout-secs]`

use std::time::Duration;

use fairseq::search::{search_with_progress, Progress, SearchConfig};
use fairseq::ConditionKind;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.len() < 2 {
        eprintln!("usage: probe <kind> <n> [days] [workers] [timeout-secs]");
        std::process::exit(3);
    }
    let kind: ConditionKind = args[0].parse().expect("condition kind");
    let n: usize = args[1].parse().expect("n");
    let arg = |i: usize, default: u64| args.get(i).map_or(default, |s| s.parse().expect("number"));
    let cfg = SearchConfig::new(n, kind)
        .with_max_days(arg(2, n as u64) as usize)
        .with_workers(arg(3, 1) as usize)
        .with_timeout(Duration::from_secs(arg(4, 120)));
    let report = |p: Progress| eprintln!("{p:?}");
    let out = search_with_progress(&cfg, Some(&report)).expect("valid config");
    println!(
        "{} nodes={} depth={} {:?}",
        out.status.name(),
        out.nodes_expanded,
        out.max_depth_reached,
        out.elapsed
    );
    if let Some(seq) = out.status.witness() {
        print!("{}", fairseq::io::to_csv(seq));
    }
}
