use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitcensus")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn star_check_holds_at_seven() {
    let o = run(&["star", "check", "--e", "16", "--w", "7", "--b", "1", "--m", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], "holds");
    assert_eq!(v["W"], "7");
    assert_eq!(v["variant"], "corrected");
    assert_eq!(v["per_term"].as_array().unwrap().len(), 5);
}

#[test]
fn failing_star_check_exits_one() {
    let o = run(&["star", "check", "--e", "8", "--w", "17"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("Fails"));
}

#[test]
fn big_values_are_strings() {
    let v = json(&run(&["star", "check", "--e", "16", "--w", "7", "--b", "2", "--json"]));
    let rhs = v["rhs"].as_str().unwrap();
    assert_eq!(rhs.len(), 28); // 7^32 - 1 overflows 64 bits
}

#[test]
fn inadmissible_parameters_are_usage_errors() {
    let o = run(&["star", "check", "--e", "9", "--w", "11", "--m", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("3 does not divide"));
    assert_eq!(run(&["star", "check", "--e", "5", "--w", "11"]).status.code(), Some(2));
    assert_eq!(run(&["census", "no_such_model"]).status.code(), Some(2));
    assert_eq!(run(&["census", "q8_normalizer", "--q", "4"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "everything"]).status.code(), Some(2));
}

#[test]
fn wreath_census_json() {
    let o = run(&["census", "s3_wr_s4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["model"], "s3_wr_s4");
    assert_eq!(v["report"]["order"], "31104");
    assert_eq!(v["report"]["total_nep"], "1883");
    assert_eq!(v["report"]["primes"]["2"]["npc"]["7"], "12");
    // stable key order: identical bytes on a second run
    assert_eq!(o.stdout, run(&["census", "s3_wr_s4", "--json"]).stdout);
}

#[test]
fn golden_suite_passes() {
    let o = run(&["verify", "lemma210", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["passed"], 4);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["command"], "verify lemma210");
}

#[test]
fn threshold_suite_reports_failures_with_exit_one() {
    let o = run(&["verify", "star-thresholds"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL [6] star.e2.b1.prime_power"));
}

#[test]
fn scan_output() {
    let v = json(&run(&["star", "scan", "--e", "8", "--b", "1", "--mode", "prime", "--max", "100", "--json"]));
    assert_eq!(v["minimal_pass"], 18);
    assert_eq!(v["failing"], serde_json::json!([3, 5, 7, 11, 13, 17]));
    assert_eq!(v["mode"], "prime");
}

#[test]
fn orbit_scan_of_scalars() {
    let v = json(&run(&["orbit", "gamma0", "--q", "5", "--m", "2", "--json"]));
    assert_eq!(v["report"]["has_regular_orbit"], true);
    assert_eq!(v["report"]["free_vector_count"], "24");
    let o = run(&["orbit", "s3_wr_s2"]);
    assert!(stdout(&o).contains("regular orbit: no"));
}

#[test]
fn generator_file_input() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "field 2 1\ndim 2\n# S3\n0 1\n1 0\n\n0 1\n1 1").unwrap();
    let v = json(&run(&["census", "--file", f.path().to_str().unwrap(), "--json"]));
    assert_eq!(v["report"]["primes"]["2"]["nep"], "3");
    assert_eq!(v["report"]["primes"]["3"]["nep"], "2");
}

#[test]
fn model_listing() {
    let v = json(&run(&["models", "--json"]));
    let rows = v.as_array().unwrap();
    let f20 = rows.iter().find(|r| r["name"] == "s3_wr_f20").unwrap();
    assert_eq!(f20["expected_order"], "155520");
}

#[test]
fn thread_variable_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_orbitcensus"))
        .args(["verify", "lemma210"])
        .env("ORBITCENSUS_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_orbitcensus"))
        .args(["verify", "lemma210"])
        .env("ORBITCENSUS_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
