use std::path::PathBuf;
use std::process::{Command, Output};

fn configs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn cfg(name: &str) -> String {
    configs().join(name).to_str().unwrap().to_string()
}

fn hallforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hallforge"))
        .args(args)
        .env_remove("HALLFORGE_CACHE_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn eval_lattice_json() {
    let o = hallforge(&[
        "eval",
        "--json",
        "--config",
        &cfg("a2.json"),
        "--algebra",
        "lattice",
        "--expr",
        "Z{0}[S1]*Z{0}[S2]",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["algebra"], "lattice");
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);
    assert_eq!(v["terms"][0]["sites"], serde_json::json!([[0, "S1+S2"]]));
    assert_eq!(v["terms"][0]["k"], serde_json::json!([0, 0]));
    assert_eq!(v["terms"][0]["coeff"], serde_json::json!({"a": "1", "b": "0"}));
}

#[test]
fn eval_commutator_text() {
    let o = hallforge(&[
        "eval",
        "--algebra",
        "lattice",
        "--expr",
        "Z{1}[S1]*Z{0}[S1] - Z{0}[S1]*Z{1}[S1]",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "K[(-1,0)]");
}

#[test]
fn eval_errors_exit_two() {
    for (alg, expr) in [
        ("lattice", "Z{0}[S9]"),
        ("lattice", "Zp[S1]"),
        ("heis", "Zp[S1] *"),
        ("B", "Zp[S1]^3"),
    ] {
        let o = hallforge(&["eval", "--algebra", alg, "--expr", expr]);
        assert_eq!(o.status.code(), Some(2), "{alg} {expr}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    }
}

#[test]
fn table_info_uses_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let run = |action: &str| {
        Command::new(env!("CARGO_BIN_EXE_hallforge"))
            .args(["table", action, "--json", "--config", &cfg("a2.json"), "--q", "3"])
            .env("HALLFORGE_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let built = run("build");
    assert_eq!(built.status.code(), Some(0));
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let info = run("info");
    assert_eq!(stdout(&built), stdout(&info));
    let v: serde_json::Value = serde_json::from_str(&stdout(&info)).unwrap();
    assert_eq!(v["summary"]["q"], 3);
    assert_eq!(v["summary"]["classes"], 14);
}

#[test]
fn tilt_discover_writes_a_checkable_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.json");
    let o = hallforge(&[
        "tilt",
        "discover",
        "--config",
        &cfg("a2.json"),
        "--target",
        &cfg("a2-reversed.json"),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("4 tilting tables"));
    let o = hallforge(&[
        "tilt",
        "check",
        "--config",
        &cfg("a2.json"),
        "--target",
        &cfg("a2-reversed.json"),
        "--tilt",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn corrupted_tilt_dumps_failing_pairs() {
    let o = hallforge(&[
        "tilt",
        "check",
        "--config",
        &cfg("a2.json"),
        "--target",
        &cfg("a2-reversed.json"),
        "--tilt",
        &cfg("tilt-a2-corrupted.json"),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("FAIL graded-hom")), "{text}");
    assert!(text
        .lines()
        .any(|l| l.starts_with("FAIL lattice-image") && l.contains("lhs = ")));
}

#[test]
fn bracket_free_associativity_failure_is_reported() {
    let o = hallforge(&["verify", "--json", "--suite", "falgebra-assoc", "--window", "0:1"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], false);
    let failing = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["pass"] == false)
        .count();
    assert_eq!(failing, v["summary"]["failed"].as_u64().unwrap() as usize);
    assert!(failing > 0);
}

#[test]
fn a3_serre_needs_room() {
    let o = hallforge(&[
        "verify",
        "--config",
        &cfg("a3.json"),
        "--suite",
        "serre",
        "--window",
        "-1:1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("skipped"));
    let o = hallforge(&[
        "verify",
        "--config",
        &cfg("a3.json"),
        "--bound",
        "2,2,2",
        "--suite",
        "serre",
        "--window",
        "-1:1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("note: Serre sign placement: alternating"));
}
