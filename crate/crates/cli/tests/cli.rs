use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sporadic"))
        .args(args)
        .env_remove("SPORADIC_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn apery_terms() {
    let o = run(&["seq", "apery", "--n-max", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1 5 73 1445");
}

#[test]
fn tsv_sequence() {
    let o = run(&["--format", "tsv", "seq", "A", "--n-max", "3"]);
    assert_eq!(stdout(&o), "n\tvalue\n0\t1\n1\t2\n2\t10\n3\t56\n");
}

#[test]
fn verify_emits_passing_json() {
    let o = run(&["verify", "thm2-D"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert!(!lines.is_empty());
    for l in lines {
        assert!(l.starts_with('{') && l.contains("\"pass\":true"), "{l}");
    }
}

#[test]
fn unknown_claim_is_an_error() {
    let o = run(&["verify", "no-such-claim"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown claim"));
}

#[test]
fn congruence_summary() {
    let o = run(&["--format", "human", "congruence", "thm1", "--prime-max", "30"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("thm1\tD\t3..29\t9\t9"), "{out}");
    assert!(out.trim_end().ends_with("all pass"));
}

#[test]
fn config_file_is_read() {
    let path = std::env::temp_dir().join(format!("sporadic-cli-test-{}.conf", std::process::id()));
    std::fs::write(&path, "output_format=tsv\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_sporadic"))
        .args(["seq", "B", "--n-max", "1"])
        .env("SPORADIC_CONFIG", &path)
        .output()
        .unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(stdout(&o), "n\tvalue\n0\t1\n1\t3\n");
}

#[test]
fn json_output_is_deterministic() {
    let args = ["verify", "hurwitz"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}
