//! `fairseq`: verify, generate, search, bounds and certificate commands.
//!
//! Exit codes: 0 valid or sat, 1 invalid or unsat, 2 timeout, 3 usage.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fairseq::conditions::{self, ConditionKind};
use fairseq::construct::{build_top_balanced, build_value_greedy, is_ef1};
use fairseq::io;
use fairseq::proportionality::{build_prop1_certificate, is_perpetually_prop_c, Valuation};
use fairseq::search::{search_with_progress, Progress, SearchConfig, SearchStatus};
use fairseq::store::ResultStore;
use fairseq::{bounds, fixtures, Error, RepeatedAssignment};

const USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "fairseq", version, about = "Fair repeated assignment toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a sequence file against a condition and/or ordinal PROP-c.
    Verify(VerifyArgs),
    /// Construct a sequence.
    Generate(GenerateArgs),
    /// Backtracking search for a sequence meeting a condition.
    Search(SearchArgs),
    /// Closed-form non-existence verdicts.
    Bounds(BoundsArgs),
    /// Dominance grid certifying PROP1 for one player and day.
    Certificate(CertificateArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// JSON or CSV file, or the name of a fixture.
    file: String,
    #[arg(long)]
    kind: Option<ConditionKind>,
    #[arg(long = "prop-c", value_name = "C")]
    prop_c: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    TopBalanced,
    ValueGreedy,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "top-balanced")]
    algo: Algo,
    #[arg(long)]
    seed: Option<u64>,
    /// JSON array of strictly decreasing values, numbers or "p/q" strings.
    #[arg(long)]
    valuation: Option<PathBuf>,
    /// Number of days for value-greedy (default n).
    #[arg(long)]
    days: Option<usize>,
    /// Output file (.json or .csv); stdout JSON when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "balanced")]
    kind: ConditionKind,
    #[arg(long = "max-days")]
    max_days: Option<usize>,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    timeout: Option<f64>,
    #[arg(long = "node-limit")]
    node_limit: Option<u64>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// With several workers, report the witness serial search would find.
    #[arg(long)]
    deterministic: bool,
    /// Disable symmetry breaking.
    #[arg(long = "no-symmetry")]
    no_symmetry: bool,
    /// Witness output file (.json or .csv).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Result store directory.
    #[arg(long, default_value = "results")]
    store: PathBuf,
    /// Emit progress records on standard error.
    #[arg(long)]
    progress: bool,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("which").required(true).args(["n", "range"]))]
struct BoundsArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    range: Option<Vec<usize>>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CertificateArgs {
    file: String,
    #[arg(long)]
    agent: usize,
    #[arg(long)]
    day: usize,
    /// CSV output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn diag(level: &str, message: &str) {
    let line = json!({ "level": level, "message": message });
    let _ = writeln!(std::io::stderr(), "{line}");
}

/// Exit code for a failure: usage and input problems are 3, everything
/// else is a negative verdict.
fn failure_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Usage(_) | Error::Parse { .. } | Error::Io(_)) => USAGE,
        Some(_) => 1,
        None if err.downcast_ref::<std::io::Error>().is_some() => USAGE,
        None => 1,
    }
}

fn fixture_dir() -> Option<PathBuf> {
    std::env::var_os("FAIRSEQ_FIXTURES").map(PathBuf::from)
}

/// Reads `spec` as a path, then inside the fixture directory, then as an
/// embedded fixture name.
fn load_sequence(spec: &str) -> anyhow::Result<RepeatedAssignment> {
    let path = Path::new(spec);
    if path.exists() {
        return Ok(io::read_file(path)?);
    }
    let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    if let Some(dir) = fixture_dir() {
        for candidate in [dir.join(spec), dir.join(&name), dir.join(format!("{name}.csv"))] {
            if candidate.is_file() {
                return Ok(io::read_file(&candidate)?);
            }
        }
    }
    let stem = name.strip_suffix(".csv").unwrap_or(&name);
    fixtures::get(stem).ok_or_else(|| Error::Io(format!("{spec}: no such file or fixture")).into())
}

fn write_sequence(path: &Path, seq: &RepeatedAssignment) -> anyhow::Result<()> {
    io::write_file(path, seq)?;
    Ok(())
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn print_json(value: &Value) {
    emit(&format!("{}\n", serde_json::to_string_pretty(value).expect("json values serialize")));
}

fn cmd_verify(args: VerifyArgs) -> anyhow::Result<u8> {
    let seq = load_sequence(&args.file)?;
    let kind = match (args.kind, args.prop_c) {
        (None, None) => Some(ConditionKind::Balanced),
        (kind, _) => kind,
    };
    let mut ok = true;
    let mut report = json!({ "file": args.file, "n": seq.n(), "days": seq.len() });
    if let Some(kind) = kind {
        let verdict = conditions::check(&seq, kind);
        ok &= verdict.is_valid();
        report["kind"] = json!(kind);
        report["valid"] = json!(verdict.is_valid());
        report["violations"] = serde_json::to_value(&verdict.violations)?;
    }
    if let Some(c) = args.prop_c {
        let failure = is_perpetually_prop_c(&seq, c);
        ok &= failure.is_none();
        report["prop_c"] = json!({ "c": c, "holds": failure.is_none(), "first_failure": failure });
    }
    print_json(&report);
    Ok(if ok { 0 } else { 1 })
}

fn cmd_generate(args: GenerateArgs) -> anyhow::Result<u8> {
    let seq = match args.algo {
        Algo::TopBalanced => {
            let seq = build_top_balanced(args.n, args.seed)?;
            if !conditions::is_valid(&seq, ConditionKind::TopBalanced) {
                return Err(Error::Internal("generated sequence is not top-balanced".into()).into());
            }
            seq
        }
        Algo::ValueGreedy => {
            let path = args
                .valuation
                .ok_or_else(|| Error::Usage("value-greedy needs --valuation".into()))?;
            let text = fs::read_to_string(&path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let v = Valuation::from_json(&text)?;
            let seq = build_value_greedy(args.n, args.days.unwrap_or(args.n), &v)?;
            if let Some(t) = (1..=seq.len()).find(|&t| !is_ef1(&seq, t, &v)) {
                diag("warning", &format!("value-greedy sequence is not EF1 after day {t}"));
            }
            seq
        }
    };
    match args.out {
        Some(path) => {
            write_sequence(&path, &seq)?;
            diag("info", &format!("wrote {}", path.display()));
        }
        None => emit(&io::to_json(&seq)),
    }
    Ok(0)
}

fn cmd_search(args: SearchArgs) -> anyhow::Result<u8> {
    let mut cfg = SearchConfig::new(args.n, args.kind)
        .with_workers(args.workers)
        .with_symmetry_breaking(!args.no_symmetry);
    if let Some(days) = args.max_days {
        cfg = cfg.with_max_days(days);
    }
    if let Some(secs) = args.timeout {
        if !(secs.is_finite() && secs > 0.0) {
            return Err(Error::Usage(format!("timeout must be positive, got {secs}")).into());
        }
        cfg = cfg.with_timeout(Duration::from_secs_f64(secs));
    }
    cfg.node_limit = args.node_limit;
    cfg.deterministic = args.deterministic || args.workers == 1;
    cfg.validate()?;

    let report_progress = |p: Progress| {
        let line = json!({ "level": "progress", "progress": p });
        let _ = writeln!(std::io::stderr(), "{line}");
    };
    let progress: Option<&(dyn Fn(Progress) + Sync)> = if args.progress { Some(&report_progress) } else { None };
    let outcome = search_with_progress(&cfg, progress)?;

    let store = ResultStore::open(&args.store)?;
    let record = store.append(&cfg, &outcome)?;
    if let (Some(path), Some(seq)) = (&args.out, outcome.status.witness()) {
        write_sequence(path, seq)?;
    }
    print_json(&json!({
        "n": cfg.n,
        "kind": cfg.kind,
        "max_days": cfg.max_days,
        "status": outcome.status.name(),
        "nodes": outcome.nodes_expanded,
        "max_depth": outcome.max_depth_reached,
        "elapsed_secs": outcome.elapsed.as_secs_f64(),
        "record": record,
        "witness": outcome.status.witness().map(|s| s.days()),
    }));
    Ok(match outcome.status {
        SearchStatus::Sat(_) => 0,
        SearchStatus::Unsat => 1,
        SearchStatus::Timeout => 2,
    })
}

fn cmd_bounds(args: BoundsArgs) -> anyhow::Result<u8> {
    let (lo, hi) = match (args.n, args.range.as_deref()) {
        (Some(n), _) => (n, n),
        (None, Some(&[a, b])) => (a, b),
        _ => return Err(Error::Usage("give --n or --range A B".into()).into()),
    };
    if lo == 0 || lo > hi {
        return Err(Error::Usage(format!("need 1 <= A <= B, got {lo}..{hi}")).into());
    }
    let verdicts: Vec<_> = (lo..=hi).map(bounds::verdict).collect();
    if args.json {
        print_json(&serde_json::to_value(&verdicts)?);
    } else {
        for v in &verdicts {
            let word = |impossible| if impossible { "impossible" } else { "unknown" };
            emit(&format!(
                "n={}\tbalanced: {} ({})\tweak: {} ({})\n",
                v.n,
                word(v.balanced_impossible),
                v.balanced_reason,
                word(v.weak_impossible),
                v.weak_reason
            ));
        }
    }
    Ok(0)
}

fn cmd_certificate(args: CertificateArgs) -> anyhow::Result<u8> {
    let seq = load_sequence(&args.file)?;
    if args.agent == 0 || args.agent > seq.n() || args.day == 0 || args.day > seq.len() {
        return Err(Error::Usage(format!(
            "agent {} / day {} outside the {} x {} sequence",
            args.agent,
            args.day,
            seq.n(),
            seq.len()
        ))
        .into());
    }
    let cert = match build_prop1_certificate(&seq, args.agent, args.day) {
        Ok(cert) => cert,
        Err(Error::Precondition { j, bound, actual }) => {
            diag(
                "error",
                &format!(
                    "agent {} after day {}: item {j} of the bundle is {actual}, above the bound {bound}",
                    args.agent, args.day
                ),
            );
            return Ok(1);
        }
        Err(e) => return Err(e.into()),
    };
    let csv = cert.to_csv();
    match args.out {
        Some(path) => fs::write(&path, csv).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
        None => emit(&csv),
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let rendered = e.render().to_string();
            diag("error", rendered.trim());
            return ExitCode::from(USAGE);
        }
    };
    let result = match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Generate(args) => cmd_generate(args),
        Command::Search(args) => cmd_search(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Certificate(args) => cmd_certificate(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            diag("error", &format!("{err:#}"));
            ExitCode::from(failure_code(&err))
        }
    }
}
