use std::process::Command;
use serde_json::Value;

fn genconj() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_genconj"));
    c.env_remove("GENCONJ_DATA");
    c
}

/// Runs the binary, returning the parsed report and the exit code.
fn run(args: &[&str]) -> (Value, i32) {
    let out = genconj().args(args).output().unwrap();
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (v, code)
}

const S3: &str = r#"{"name":"S3","order":6,"exponent":6,"centerless":true,"classes":[{"name":"1a","order":1,"size":1,"centralizer":6},{"name":"2a","order":2,"size":3,"centralizer":2},{"name":"3a","order":3,"size":2,"centralizer":3}],"power_maps":{"2":[0,0,2],"3":[0,1,0]},"characters":[[1,1,1],[1,-1,1],[2,0,-1]]}"#;

#[test]
fn delta_examples() {
    let (v, code) = run(&["delta", "S3", "2a", "2a", "3a"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["result"]["delta"], 3);
    assert_eq!(run(&["delta", "S3", "1a", "3a", "3a"]).0["result"]["delta"], 1);
    let (m, _) = run(&["delta", "M11", "5a", "5a", "11a"]);
    let (o, _) = run(&["oracle", "delta", "M11", "5a", "5a", "11a"]);
    assert_eq!(m["result"]["delta"], o["result"]["delta"]);
}

#[test]
fn theta_and_alpha_examples() {
    for t in [["5a", "5a", "11a"], ["3a", "3a", "8a"]] {
        let mut args = vec!["theta", "M11"];
        args.extend(t);
        let (v, code) = run(&args);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["verdict"], "GENERATED");
    }
    let (v, code) = run(&["alpha", "M11", "5a"]);
    assert_eq!((code, &v["result"]["lower"], &v["result"]["upper"]), (0, &2.into(), &2.into()));
    let (v, _) = run(&["alpha", "M11", "2a"]);
    assert_eq!((&v["result"]["lower"], &v["result"]["upper"]), (&3.into(), &3.into()));
    let (v, code) = run(&["alpha", "M11", "1a"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "usage");
}

#[test]
fn undecided_verdict_exits_4() {
    let (v, code) = run(&["theta", "A5", "2a", "2a", "5a"]);
    assert_eq!(v["result"]["verdict"], "UNDECIDED");
    assert_eq!(v["status"], "indefinite");
    assert_eq!(code, 4);
}

#[test]
fn classify_examples() {
    let (v, code) = run(&["classify", "--factors", "2:(x-1)^2,(x-1)^8"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["class"], "NEITHER");
    let (v, _) = run(&["classify", "--factors", "2:(x-1),(x^23-1)"]);
    assert_eq!(v["result"]["class"], "ALMOST_CYCLIC");
    assert_eq!(v["result"]["alpha"], "1");
    assert_eq!(v["result"]["h"], 1);

    let dir = tempfile::tempdir().unwrap();
    let id = dir.path().join("id.txt");
    std::fs::write(&id, "3 1 3\n1 0 0\n0 1 0\n0 0 1\n").unwrap();
    let (v, _) = run(&["classify", id.to_str().unwrap()]);
    assert_eq!(v["result"]["class"], "SCALAR");

    let (v, code) = run(&["classify", "--pair", "2:(x-1)^8,(x-1)^10"]);
    assert_eq!((code, &v["result"]["class"]), (4, &"UNDETERMINED".into()));

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "3 1 2\n1 0\n").unwrap();
    assert_eq!(run(&["classify", bad.to_str().unwrap()]).1, 2);
}

#[test]
fn screen_and_restrict() {
    let (v, code) = run(&["screen"]);
    assert_eq!(code, 0);
    let rows = v["result"]["results"].as_array().unwrap();
    assert!(rows
        .iter()
        .filter(|r| r["group"] == "M")
        .all(|r| r["outcome"] == "EXCLUDED"));
    assert!(rows
        .iter()
        .any(|r| r["group"] == "M11" && r["class"] == "8a" && r["n"] == 10 && r["outcome"] == "SURVIVES"));
    assert_eq!(run(&["restrict", "H7"]).0["result"]["decompositions"][0]["label"], "chi12+chi13");
    assert_eq!(run(&["restrict", "H12"]).0["result"]["decompositions"][0]["label"], "chi9");
}

#[test]
fn oracle_examples() {
    let (v, _) = run(&["oracle", "classes", "A5"]);
    assert_eq!(v["result"]["classes"].as_array().unwrap().len(), 5);
    assert_eq!(run(&["oracle", "delta", "S3", "2a", "2a", "3a"]).0["result"]["delta"], 3);
    assert_eq!(run(&["oracle", "delta-star", "A5", "2a", "2a", "5a"]).0["result"]["delta_star"], 0);
    assert_eq!(run(&["oracle", "h", "S4", "S3", "2b"]).0["result"]["h"], 2);
    let (v, code) = run(&["oracle", "delta", "M11", "5a", "5a", "5a", "11a", "--budget", "10"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "budget");
}

#[test]
fn validate_pass_and_fail() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("s3.json");
    std::fs::write(&good, S3).unwrap();
    let (v, code) = run(&["validate", good.to_str().unwrap()]);
    assert_eq!((code, &v["result"]["valid"]), (0, &true.into()));

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, S3.replace("[2,0,-1]", "[2,1,-1]")).unwrap();
    let (v, code) = run(&["validate", broken.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "error");

    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "").unwrap();
    let (v, code) = run(&["validate", empty.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(v["error"]["message"].as_str().unwrap().contains("syntax"));
}

#[test]
fn data_dir_override() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::create_dir(dir.path().join("tables")).unwrap();
    std::fs::write(dir.path().join("tables/S3.json"), S3).unwrap();
    let out = genconj()
        .env("GENCONJ_DATA", dir.path())
        .args(["delta", "S3", "2a", "2a", "3a"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = genconj()
        .env("GENCONJ_DATA", dir.path())
        .args(["delta", "A5", "2a", "2a", "3a"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&["delta", "S3", "2a", "2a"]).1, 1);
    assert_eq!(run(&["frobnicate"]).1, 1);
    assert_eq!(run(&["delta", "S3", "2a", "2a", "9z"]).1, 1);
    assert_eq!(run(&["--help"]).1, 0);
}

#[test]
fn reports_are_deterministic() {
    let a = genconj().args(["theta", "M11", "4a", "4a", "11a"]).output().unwrap().stdout;
    let b = genconj().args(["theta", "M11", "4a", "4a", "11a"]).output().unwrap().stdout;
    assert_eq!(a, b);
    let c = genconj().args(["theta", "M11", "6a", "6a", "11a"]).output().unwrap().stdout;
    let da: Value = serde_json::from_slice(&a).unwrap();
    let dc: Value = serde_json::from_slice(&c).unwrap();
    assert_ne!(da["inputs_digest"], dc["inputs_digest"]);
}

#[test]
fn pretty_output_is_text() {
    let out = genconj().args(["oracle", "classes", "S3", "--pretty"]).output().unwrap();
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("command: oracle classes S3 --pretty\nstatus:  ok\n"), "{s}");
    assert!(s.contains("label"));
}
