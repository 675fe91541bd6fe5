use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn corpus(name: &str) -> String {
    root().join("corpus").join(name).display().to_string()
}

fn qs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qs")).args(args).output().expect("qs runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qs-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(o: &Output) -> serde_json::Value {
    assert!(o.status.success(), "{}", stderr(o));
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn check_coxeter_passes() {
    let o = qs(&["--format", "text", "check", &corpus(""), "--suite", "coxeter", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("pass coxeter"));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let o = qs(&["--format", "text", "check", &corpus(""), "--suite", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error[unknown_suite]"));
    let o = qs(&["check", &corpus(""), "--suite", "bogus"]);
    let err: serde_json::Value = serde_json::from_str(&stderr(&o)).unwrap();
    assert_eq!(err["error"]["code"], "unknown_suite");
    assert_eq!(qs(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn parse_round_trips_and_reports_positions() {
    let o = qs(&["--format", "text", "parse", &corpus("example_ii_d3.quiver")]);
    let path = scratch("again.quiver");
    fs::write(&path, stdout(&o)).unwrap();
    let again = qs(&["--format", "text", "parse", path.to_str().unwrap()]);
    assert_eq!(stdout(&o), stdout(&again));
    let dot = stdout(&qs(&["parse", &corpus("a3.quiver"), "--dot"]));
    assert!(dot.starts_with("digraph"), "{dot}");
    let bad = qs(&["--format", "text", "parse", &corpus("malformed/edge_loop.quiver")]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).starts_with("error[edge_loop_forbidden]: 4:11:"), "{}", stderr(&bad));
}

#[test]
fn cartan_dim_and_reflect() {
    let c = json(&qs(&["cartan", &corpus("example_i_d3.quiver")]));
    assert_eq!(c["C"], serde_json::json!([[2, -3, -1], [-1, 2, 0], [-1, 0, 2]]));
    let d = json(&qs(&["dim", &corpus("a3.quiver"), "--v", "1,1,1"]));
    assert_eq!(d["expected_dim"], 2 - 2);
    let lam = scratch("lam.json");
    fs::write(&lam, r#"{"i": ["2"], "j": ["0", "1", "0"]}"#).unwrap();
    let r = json(&qs(&["reflect", &corpus("example_i_d3.quiver"), "--vertex", "0", "--lambda", lam.to_str().unwrap(), "--v", "1,1,1"]));
    assert_eq!(r["vertex"], "i");
    assert_eq!(r["lambda"]["j"], serde_json::json!(["0", "1", "6"]));
    assert_eq!(r["lambda"]["k"], serde_json::json!(["2"]));
    assert_eq!(r["v"]["i"], 3);
}

#[test]
fn random_rep_is_deterministic_and_feeds_moment() {
    let file = corpus("example_i_d2.quiver");
    let a = qs(&["random-rep", &file, "--v", "1,2,1", "--seed", "4"]);
    let b = qs(&["random-rep", &file, "--v", "1,2,1", "--seed", "4"]);
    assert_eq!(a.stdout, b.stdout);
    let rep = scratch("rep.json");
    fs::write(&rep, &a.stdout).unwrap();
    let m = json(&qs(&["moment", &file, "--rep", rep.to_str().unwrap()]));
    assert_eq!(m["perpendicularity"], "0");
    let lam = scratch("zero.json");
    fs::write(&lam, "{}").unwrap();
    let mesh = qs(&["mesh", &file, "--rep", rep.to_str().unwrap(), "--lambda", lam.to_str().unwrap()]);
    assert_eq!(mesh.status.code(), Some(1));
}

#[test]
fn functor_on_a_level_point() {
    let file = corpus("example_ii_d2.quiver");
    let lam = scratch("lam_ii.json");
    fs::write(&lam, r#"{"i": ["1", "2"], "j": ["3", "0"], "k": ["1"]}"#).unwrap();
    let lam = lam.to_str().unwrap();
    let point = qs(&["random-level", &file, "--vertex", "k", "--lambda", lam, "--v", "1,1,1", "--seed", "2"]);
    let rep = scratch("level.json");
    fs::write(&rep, &point.stdout).unwrap();
    let out = scratch("image.json");
    let f = json(&qs(&["functor", &file, "--vertex", "k", "--lambda", lam, "--rep", rep.to_str().unwrap(), "--out", out.to_str().unwrap()]));
    assert_eq!(f["v"], serde_json::json!({"i": 1, "j": 1, "k": 1}));
    assert!(out.exists());
    let empty = qs(&["--format", "text", "random-level", &file, "--vertex", "k", "--lambda", lam, "--v", "0,0,1"]);
    assert_eq!(empty.status.code(), Some(1));
    assert!(stderr(&empty).starts_with("error[empty_level_set]"));
}

#[test]
fn orbit_commands() {
    let spec = scratch("spec.json");
    fs::write(&spec, r#"{"d": 1, "blocks": [{"dim": 1, "theta": ["1"]}, {"dim": 1, "theta": ["0"]}]}"#).unwrap();
    let spec = spec.to_str().unwrap();
    let map = |flat: &str| {
        format!(r#"{{"src": {{"rank": 2, "order": 1}}, "dst": {{"rank": 2, "order": 1}}, "base": 1, "flat": {flat}}}"#)
    };
    let a = scratch("a.json");
    fs::write(&a, map(r#"[["1", "1"], ["0", "0"]]"#)).unwrap();
    let m = json(&qs(&["orbit-check", spec, "--a", a.to_str().unwrap()]));
    assert_eq!(m["member"], true);
    let b = json(&qs(&["leg-factor", spec, "--a", a.to_str().unwrap()]));
    assert_eq!(b["down"].as_array().unwrap().len(), 1);
    let bad = scratch("bad.json");
    fs::write(&bad, map(r#"[["1", "0"], ["0", "1"]]"#)).unwrap();
    assert_eq!(qs(&["orbit-check", spec, "--a", bad.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(qs(&["leg-factor", spec, "--a", bad.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn legs_regularize_and_verify() {
    let file = corpus("star_n3_d3.quiver");
    let legs = json(&qs(&["legs", &file]));
    assert_eq!(legs[0]["vertices"], serde_json::json!(["b0", "p"]));
    let out = scratch("reg.quiver");
    let lam = scratch("lam_star.json");
    fs::write(&lam, r#"{"p": ["1", "2", "3"], "b0": ["4"], "b1": ["5"]}"#).unwrap();
    let r = json(&qs(&[
        "regularize", &file, "--leg", "b0,p", "--lambda", lam.to_str().unwrap(), "--v", "1,1,1", "--out", out.to_str().unwrap(),
    ]));
    assert_eq!(r["lambda"]["p"], serde_json::json!(["7"]));
    assert!(fs::read_to_string(&out).unwrap().contains("reg_b0_p_0"));
    let v = qs(&["--format", "text", "reg-verify", &file, "--leg", "b0,p"]);
    assert_eq!(v.status.code(), Some(0));
    assert!(!stdout(&v).contains("FAIL"));
    let bad = qs(&["--format", "text", "regularize", &file, "--leg", "b1,b0"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).starts_with("error[invalid_leg]"));
}
