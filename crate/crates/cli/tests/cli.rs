use std::path::PathBuf;
use std::process::{Command, Output};

fn regulous(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regulous")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).display().to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn check_cartan_quotient() {
    let o = regulous(&["check", "x^3/(x^2+y^2)", "--vars", "x,y", "--k", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Regulous(0), value 0 at (0,0)");
}

#[test]
fn check_reports_arc_witness() {
    let o = regulous(&["check", "x*y/(x^2+y^2)"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("NotRegulous"), "{s}");
    assert!(s.contains("(t, 0)") && s.contains("(t, t)"), "{s}");
}

#[test]
fn unknown_exits_with_two() {
    let o = regulous(&["check", "x^3/(x^2+y^2+z^2)", "--vars", "x,y,z"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("Unknown"));
}

#[test]
fn bad_input_exits_with_one() {
    let o = regulous(&["check", "1/(x"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn json_output_is_stable() {
    let a = regulous(&["--json", "check", "x*y/(x^2+y^2)"]);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["verdict"], "not_regulous");
    let again = serde_json::to_string_pretty(&v).unwrap();
    assert_eq!(again.trim(), stdout(&a).trim());
}

#[test]
fn kmax_of_cartan_quotient() {
    let o = regulous(&["kmax", "x^3/(x^2+y^2)"]);
    assert!(stdout(&o).starts_with("kmax = 0"), "{}", stdout(&o));
}

#[test]
fn resolve_lists_charts() {
    let o = regulous(&["resolve", "x^3/(x^2+y^2)"]);
    let s = stdout(&o);
    assert!(s.starts_with("status Resolved, depth 1, 3 charts"), "{s}");
    let j = regulous(&["--json", "resolve", "x^3/(x^2+y^2)"]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 3);
}

#[test]
fn zero_sets() {
    assert_eq!(stdout(&regulous(&["zeroset", "x^3/(x^2+y^2)"])).trim(), "Z(x)");
    assert_eq!(stdout(&regulous(&["zeroset", "x^3-x^2-y^2"])).trim(), "Z(x^3 - x^2 - y^2)");
}

#[test]
fn closure_audit_places_z1_in_second_pass() {
    let o = regulous(&["closure", &fixture("ex-algo.json")]);
    let s = stdout(&o);
    assert!(s.contains("pass 2: Z1 (dim 1) included"), "{s}");
    assert!(s.contains("closure: {W, Z1, Z2a, Z2b} after 2 passes"), "{s}");
}

#[test]
fn loja_certificate_verifies_from_file() {
    let path = scratch("loja.json");
    let o = regulous(&["loja", "x^2+y^2", "1/(x^2+2*y^2)", "--out", path.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("N = 2"), "{}", stdout(&o));
    let v = regulous(&["verify", path.to_str().unwrap()]);
    assert_eq!(stdout(&v).trim(), "valid");
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn tampered_certificate_is_rejected() {
    let path = scratch("radical.json");
    regulous(&["radmember", "x", "x^2+y^2", "--out", path.to_str().unwrap()]);
    let text = std::fs::read_to_string(&path).unwrap().replace("\"n\": 3", "\"n\": 2");
    std::fs::write(&path, text).unwrap();
    let v = regulous(&["verify", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(1));
    assert!(stdout(&v).starts_with("invalid"));
}

#[test]
fn radical_refutation() {
    let s = stdout(&regulous(&["radmember", "x", "y"]));
    assert!(s.starts_with("Refuted at"), "{s}");
}

#[test]
fn nss_verify_plain_file() {
    let path = scratch("nss.json");
    let body = r#"{"vars":["x","y"],"generators":["x^2+y^2"],"target":"x","n":3,"multipliers":["x^3/(x^2+y^2)"]}"#;
    std::fs::write(&path, body).unwrap();
    assert_eq!(stdout(&regulous(&["nss-verify", path.to_str().unwrap()])).trim(), "valid");
}

#[test]
fn fixture_catalog_replays() {
    let o = regulous(&["fixtures"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("of 19 fixtures match"));
    let o = regulous(&["fixtures", &fixture("catalog.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn cartan_mesh_passes_through_origin() {
    let path = scratch("cartan.obj");
    let o = regulous(&["mesh", "x^3/(x^2+y^2)", "--region", "-1,1,-1,1", "--resolution", "50", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let obj = std::fs::read_to_string(&path).unwrap();
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 51 * 51);
    assert!(obj.lines().any(|l| l == "v 0.000000 0.000000 0.000000"));
}

#[test]
fn constant_mesh_is_flat() {
    let s = stdout(&regulous(&["mesh", "0", "--resolution", "4"]));
    assert!(s.lines().filter(|l| l.starts_with("v ")).all(|l| l.ends_with(" 0.000000")));
}

#[test]
fn zero_set_samples_as_csv() {
    let s = stdout(&regulous(&["mesh", "z*x^2-y^2", "--vars", "x,y,z", "--solve", "z", "--region", "-1,1,-1,1,-2,2", "--resolution", "4"]));
    assert_eq!(s.lines().next(), Some("x,y,z"));
    assert!(s.lines().any(|l| l == "-1.000000,-0.500000,0.250000"));
}
