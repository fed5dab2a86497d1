use std::path::PathBuf;
use std::process::{Command, Output};

fn cubicq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubicq")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", "radu", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("cubicq-{}-{name}", std::process::id()))
}

#[test]
fn expand_prints_overpartition_counts() {
    let o = cubicq(&["expand", "--family", "abar", "--c", "1", "--order", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1, 2, 4");
    let o = cubicq(&["expand", "--family", "a", "--c", "1", "--order", "6", "--mod", "5"]);
    assert_eq!(stdout(&o).trim(), "1, 1, 2, 3, 0, 2");
}

#[test]
fn claim_passes_and_writes_a_report() {
    let path = temp_path("claim.json");
    let o = cubicq(&["claim", "--id", "a37-43n+12", "--depth", "500", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["claims"][0]["instantiations"][0]["verdict"]["kind"], "pass");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn false_conjecture_exits_one() {
    let o = cubicq(&["claim", "--id", "a25-31^2n+41", "--depth", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("COUNTEREXAMPLE"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(cubicq(&["claim", "--id", "no-such-entry"]).status.code(), Some(2));
    assert_eq!(cubicq(&["claim"]).status.code(), Some(2));
    assert_eq!(cubicq(&["density", "--family", "a", "--c", "1", "--x", "10"]).status.code(), Some(2));
    assert_eq!(cubicq(&["radu", "--file", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(cubicq(&["expand", "--family", "b", "--c", "1"]).status.code(), Some(2));
}

#[test]
fn radu_reports_the_mod_49_instance() {
    let o = cubicq(&["radu", "--file", &fixture("a3-49n+39.json")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("P(t) = {39}"), "{out}");
    assert!(out.contains("⌊ν⌋ = 55"), "{out}");
    assert!(out.contains("proved"), "{out}");
}

#[test]
fn radu_with_capped_depth_is_only_consistent() {
    let o = cubicq(&["radu", "--file", &fixture("a3-49n+39.json"), "--depth", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("consistent to n = 10"));
}

#[test]
fn hecke_row_is_proved() {
    let o = cubicq(&["hecke", "--c", "53"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("weight 62, Sturm bound 31"));
}

#[test]
fn eta_reports_form_data() {
    let path = temp_path("eta.json");
    let o = cubicq(&["eta", "--level", "4", "--product", "f1^816/f2^36", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Sturm bound 195"));
    let meta: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(meta["sturm_bound"], 195);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn eta_lift_sampling_is_seeded() {
    let a = cubicq(&["eta", "--lift", "mod3", "--samples", "4", "--seed", "9"]);
    let b = cubicq(&["eta", "--lift", "mod3", "--samples", "4", "--seed", "9"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).lines().count(), 4);
}

#[test]
fn density_and_characterize() {
    let o = cubicq(&["density", "--family", "abar", "--c", "2", "--mod", "4", "--x", "50000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("abar2: 49619/50000"));
    let o = cubicq(&["characterize", "--c", "5", "--n-max", "500"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains("matches")).count(), 2);
    assert_eq!(cubicq(&["characterize", "--c", "5", "--mod", "3"]).status.code(), Some(2));
}

#[test]
fn identity_exit_code_tracks_failures() {
    assert_eq!(cubicq(&["identity", "--filter", "functional-equation", "--order", "100"]).status.code(), Some(0));
    assert_eq!(cubicq(&["identity", "--filter", "abar2-4n+2", "--order", "100"]).status.code(), Some(1));
}
