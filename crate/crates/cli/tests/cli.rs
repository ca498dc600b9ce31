use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fairseq"))
        .args(args)
        .env_remove("FAIRSEQ_FIXTURES")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn stderr_lines(out: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&out.stderr)
        .lines()
        .map(|l| serde_json::from_str(l).expect("diagnostics are json lines"))
        .collect()
}

#[test]
fn verify_published_tables() {
    let weak = fixture("n12_weak.csv");
    let out = run(&["verify", weak.to_str().unwrap(), "--kind", "weak-balanced"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["violations"], serde_json::json!([]));

    let out = run(&["verify", weak.to_str().unwrap(), "--kind", "balanced"]);
    assert_eq!(code(&out), 1);

    let cyclic = fixture("n6_cyclic.csv");
    let out = run(&["verify", cyclic.to_str().unwrap(), "--kind", "top-balanced"]);
    assert_eq!(code(&out), 1);
    let report = stdout_json(&out);
    assert_eq!(report["violations"][0]["day"], 2);
    assert!(report["violations"].as_array().unwrap().len() > 1);

    let out = run(&["verify", fixture("n10_balanced.csv").to_str().unwrap(), "--prop-c", "1"]);
    assert_eq!(code(&out), 0);

    let out = run(&["verify", cyclic.to_str().unwrap(), "--prop-c", "1"]);
    assert_eq!(code(&out), 1);
    let failure = &stdout_json(&out)["prop_c"]["first_failure"];
    assert_eq!((failure["agent"].as_u64(), failure["day"].as_u64()), (Some(5), Some(2)));
}

#[test]
fn fixture_names_and_directory_override() {
    assert_eq!(code(&run(&["verify", "n11_balanced"])), 0);
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("mine.csv"), "1,2\n2,1\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_fairseq"))
        .args(["verify", "mine.csv"])
        .env("FAIRSEQ_FIXTURES", dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["n"], 2);
    assert_eq!(code(&run(&["verify", "mine.csv"])), 3);
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "1,2\n2,x\n").unwrap();
    let out = run(&["verify", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    let diag = &stderr_lines(&out)[0];
    assert_eq!(diag["level"], "error");
    assert!(diag["message"].as_str().unwrap().contains("line 2, field 2"));

    assert_eq!(code(&run(&["verify", "n6_cyclic", "--kind", "fair"])), 3);
    assert_eq!(code(&run(&["frobnicate"])), 3);
    assert_eq!(code(&run(&["search"])), 3);
    assert_eq!(code(&run(&["bounds"])), 3);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn generate_top_balanced() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g15.csv");
    let out = run(&["generate", "--n", "15", "--algo", "top-balanced", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(code(&run(&["verify", path.to_str().unwrap(), "--kind", "top-balanced"])), 0);

    let out = run(&["generate", "--n", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["days"], serde_json::json!([[1]]));

    let a = run(&["generate", "--n", "30", "--seed", "7"]);
    let b = run(&["generate", "--n", "30", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, run(&["generate", "--n", "30"]).stdout);
}

#[test]
fn generate_value_greedy() {
    assert_eq!(code(&run(&["generate", "--n", "4", "--algo", "value-greedy"])), 3);
    let dir = tempfile::tempdir().unwrap();
    let v = dir.path().join("v.json");
    std::fs::write(&v, r#"[10, 7, "7/2", 1]"#).unwrap();
    let out = run(&["generate", "--n", "4", "--algo", "value-greedy", "--valuation", v.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["days"][0], serde_json::json!([1, 2, 3, 4]));
    std::fs::write(&v, "[1, 2, 3, 4]").unwrap();
    let out = run(&["generate", "--n", "4", "--algo", "value-greedy", "--valuation", v.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
}

#[test]
fn search_exit_codes_and_store() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("store");
    let witness = dir.path().join("w.csv");
    let s = store.to_str().unwrap();

    let out = run(&["search", "--n", "11", "--kind", "balanced", "--store", s, "--out", witness.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["status"], "sat");
    assert_eq!(code(&run(&["verify", witness.to_str().unwrap(), "--kind", "balanced"])), 0);

    let out = run(&["search", "--n", "12", "--kind", "weak-balanced", "--store", s]);
    assert_eq!(code(&out), 0);

    let out = run(&["search", "--n", "12", "--kind", "balanced", "--max-days", "3", "--store", s]);
    assert_eq!(code(&out), 0);

    let out = run(&["search", "--n", "8", "--kind", "windowed-top", "--store", s]);
    assert_eq!(code(&out), 1);

    let out = run(&["search", "--n", "12", "--timeout", "0.05", "--store", s, "--progress"]);
    assert_eq!(code(&out), 2);

    assert_eq!(code(&run(&["search", "--n", "5", "--max-days", "9", "--store", s])), 3);
    assert_eq!(std::fs::read_dir(&store).unwrap().count(), 5);
}

#[test]
fn bounds_table() {
    let out = run(&["bounds", "--n", "12"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("balanced: impossible (6k, k=2)"), "{text}");

    let out = run(&["bounds", "--range", "62", "100", "--json"]);
    let rows = stdout_json(&out);
    assert_eq!(rows.as_array().unwrap().len(), 39);
    assert!(rows.as_array().unwrap().iter().all(|r| r["balanced_impossible"] == true));

    let out = run(&["bounds", "--n", "5", "--json"]);
    assert_eq!(stdout_json(&out)[0]["balanced_impossible"], false);
    assert_eq!(code(&run(&["bounds", "--range", "9", "3"])), 3);
}

#[test]
fn certificate_grids() {
    let n10 = fixture("n10_balanced.csv");
    let out = run(&["certificate", n10.to_str().unwrap(), "--agent", "1", "--day", "6"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<usize>> = text
        .lines()
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 10);
    for (x, row) in rows.iter().enumerate() {
        assert_eq!(&row[..6], &[x + 1; 6]);
        assert!(row[6..].iter().all(|&d| d <= x + 1));
    }

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.csv");
    let out = run(&["certificate", "n11_balanced", "--agent", "3", "--day", "11", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let grid = std::fs::read_to_string(&path).unwrap();
    assert_eq!(grid.lines().nth(4).unwrap(), "5,5,5,5,5,5,5,5,5,5,5,5,5,5,5,5,5,5,5,5,5,5");

    let out = run(&["certificate", fixture("n6_cyclic.csv").to_str().unwrap(), "--agent", "5", "--day", "2"]);
    assert_eq!(code(&out), 1);
    assert!(stderr_lines(&out)[0]["message"].as_str().unwrap().contains("bound 4"));
    assert_eq!(code(&run(&["certificate", "n6_cyclic", "--agent", "9", "--day", "2"])), 3);
}
