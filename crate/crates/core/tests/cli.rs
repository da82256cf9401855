use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_superchar"));
    c.env_remove("SUPERCHAR_CACHE");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_prints_bell_number() {
    let o = run(&["count", "--n", "3", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "5\n");
}

#[test]
fn restriction_example_renders() {
    let o = run(&["restrict", "--n", "7", "--q", "2", "--char", "1-5:1", "--subgroup", "[2,5]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "ambient={1|2,3,4,5|6|7} p=2\n(1) [n=7]\n(1) [n=7; 2-5:1]\n(1) [n=7; 3-5:1]\n(1) [n=7; 4-5:1]\n"
    );
}

#[test]
fn orthogonality_suite_exits_zero() {
    let o = run(&["verify", "--suite", "orthogonality", "--max-n", "4", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["count"]).status.code(), Some(2));
    assert_eq!(run(&["restrict", "--n", "3", "--char", "1-9:1", "--subgroup", "[1,2]"]).status.code(), Some(2));
    let o = run(&["verify", "--suite", "orthogonality", "--max-n", "4", "--q", "3", "--budget", "81"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("729"));
}

#[test]
fn output_is_deterministic() {
    let args = ["tensor", "--n", "5", "--q", "3", "--char", "1-4:1,2-5:2", "--with", "1-5:1", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn cache_gives_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["sind", "--n", "4", "--q", "2", "--char", "1-2:1", "--subgroup", "{1,2|3,4}"];
    let plain = run(&args);
    let first = bin().args(args).env("SUPERCHAR_CACHE", dir.path()).output().unwrap();
    let second = bin().args(args).arg("--cache-dir").arg(dir.path()).output().unwrap();
    let checked = bin().args(args).arg("--cache-dir").arg(dir.path()).arg("--verify-cache").output().unwrap();
    assert_eq!(plain.stdout, first.stdout);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, checked.stdout);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn tampered_cache_is_repaired_on_verification() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["count", "--n", "4", "--q", "3"];
    let good = bin().args(args).arg("--cache-dir").arg(dir.path()).output().unwrap();
    let entry = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&entry).unwrap()).unwrap();
    v["output"] = "0\n".into();
    std::fs::write(&entry, v.to_string()).unwrap();
    let stale = bin().args(args).arg("--cache-dir").arg(dir.path()).output().unwrap();
    assert_eq!(stdout(&stale), "0\n");
    let fixed = bin().args(args).arg("--cache-dir").arg(dir.path()).arg("--verify-cache").output().unwrap();
    assert_eq!(fixed.stdout, good.stdout);
}

#[test]
fn ncsym_star_by_words() {
    let o = run(&["ncsym", "star", "--x", "p{1,2}", "--y", "p{1}", "--blocks", "{1,3|2}", "--to", "p"]);
    assert_eq!(stdout(&o), "p{1,3|2}\n");
    let j = run(&["ncsym", "convert", "--x", "p{1|2}", "--n", "2", "--to", "m", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["basis"], "m");
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
}
