use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn gact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gact")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json report")
}

fn scratch(name: &str, contents: &[u8]) -> String {
    let dir = std::env::temp_dir().join(format!("gact-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn validate_fixtures() {
    for f in ["pt.json", "sd2.json", "c3.json", "c4.json", "c6.json", "c3star.json", "ft.json"] {
        let o = gact(&["validate", &fixture(f)]);
        assert_eq!(code(&o), 0, "{f}");
        assert_eq!(report(&o)["valid"], true);
    }
}

#[test]
fn broken_self_map_is_rejected_by_clause() {
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(fixture("c4.json")).unwrap()).unwrap();
    doc["homs"] = serde_json::json!([{ "source": "a0", "target": "a0", "map": ["1", "0"] }]);
    let path = scratch("c4_bad_self.json", doc.to_string().as_bytes());
    let o = gact(&["validate", &path]);
    assert_eq!(code(&o), 1);
    assert_eq!(report(&o)["clause"], "identity map");
}

#[test]
fn dangling_group_names_the_field() {
    let text = std::fs::read_to_string(fixture("c4.json")).unwrap();
    let mut doc: Value = serde_json::from_str(&text).unwrap();
    doc["indices"][2]["group"] = "nope".into();
    let path = scratch("dangling.json", doc.to_string().as_bytes());
    let o = gact(&["validate", &path]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("indices[2].group"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&gact(&["validate", "--no-such-flag", &fixture("c4.json")])), 2);
    assert_eq!(code(&gact(&["validate", "/no/such/file.json"])), 2);
    assert_eq!(code(&gact(&["fixture", "nope"])), 2);
}

#[test]
fn frames() {
    let o = gact(&["frames", "0,1", &fixture("c4.json")]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["witness"], "a0");
    assert_eq!(code(&gact(&["frames", "0,2", &fixture("c4.json")])), 1);
}

#[test]
fn fundamental_groups() {
    let o = gact(&["pi1", "--base", "0", &fixture("c4.json")]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["summary"], "1 generator, 0 relations");
    let o = gact(&["abelian", &fixture("c4.json")]);
    assert_eq!(report(&o)["summary"], "free rank 1");
    let o = gact(&["abelian", &fixture("ft.json")]);
    assert_eq!(report(&o)["trivial"], true);
    let o = gact(&["pi0", &fixture("c6.json")]);
    assert_eq!(report(&o)["count"], 1);
}

#[test]
fn homotopy_search() {
    let o = gact(&["homotopic", "--first", "a,b,c,a", "--second", "a", "--width", "4", &fixture("ft.json")]);
    assert_eq!(code(&o), 0);
    let cert = serde_json::to_string(&report(&o)["certificate"]).unwrap();
    let path = scratch("cert.json", cert.as_bytes());
    assert_eq!(code(&gact(&["grid", &path, &fixture("ft.json")])), 0);

    let o = gact(&["homotopic", "--first", "0,1,2,3,0", "--second", "0", &fixture("c4.json")]);
    assert_eq!(code(&o), 1);
    assert_eq!(report(&o)["answer"], "unknown");
    let o = gact(&["homotopic", "--first", "0,1,2,3,0", "--second", "0", "--mode", "plain", &fixture("c4.json")]);
    assert_eq!(code(&o), 2);
}

#[test]
fn cover_then_check() {
    let o = gact(&["cover", "--base", "0", "--subgroup", "g^2", &fixture("c3.json")]);
    assert_eq!(code(&o), 0);
    let doc = report(&o);
    assert_eq!(doc["source"]["points"].as_array().unwrap().len(), 6);
    let path = scratch("cover.json", &o.stdout);
    let o = gact(&["check-covering", &path]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["fibers"], serde_json::json!([2, 2, 2]));

    let o = gact(&["cover", "--base", "0", "--max-cosets", "64", &fixture("c4.json")]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("64"));
}

#[test]
fn coverings_and_lifts() {
    assert_eq!(code(&gact(&["check-covering", &fixture("c6_to_c3.json")])), 0);
    assert_eq!(code(&gact(&["check-covering", &fixture("c3_identity.json")])), 0);
    assert_eq!(code(&gact(&["check-covering", &fixture("c6_fold.json")])), 1);

    let o = gact(&["lift-path", "--path", "0,1,2,0", "--start", "0", &fixture("c6_to_c3.json")]);
    assert_eq!(report(&o)["closed"], false);
    let o = gact(&["lift-path", "--path", "0,1,2,0,1,2,0", "--start", "0", &fixture("c6_to_c3.json")]);
    assert_eq!(report(&o)["closed"], true);

    let o = gact(&["lift-criterion", "--map", &fixture("c3_identity.json"), "--start", "0", &fixture("c6_to_c3.json")]);
    assert_eq!(code(&o), 1);
    assert_eq!(report(&o)["generator"], "g");
    let o = gact(&["lift-criterion", "--map", &fixture("c3_identity.json"), "--start", "1", &fixture("c3_identity.json")]);
    assert_eq!(code(&o), 2);
    let o = gact(&["lift-criterion", "--map", &fixture("c3_identity.json"), "--start", "0", &fixture("c3_identity.json")]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["lift"], serde_json::json!(["0", "1", "2"]));
}

#[test]
fn morphism_spaces() {
    let o = gact(&["morspace", &fixture("pt.json"), &fixture("c3.json")]);
    assert_eq!(report(&o)["morphisms"].as_array().unwrap().len(), 3);
    let o = gact(&["morspace", "--emit", &fixture("sd2.json"), &fixture("sd2.json")]);
    let path = scratch("space.json", &o.stdout);
    assert_eq!(code(&gact(&["validate", &path])), 0);
    let o = gact(&["explaw", &fixture("pt.json"), &fixture("sd2.json"), &fixture("sd2.json")]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["curried_count"], report(&o)["uncurried_count"]);
    assert_eq!(code(&gact(&["normality", "--probe", &fixture("pt.json"), &fixture("sd2_identity.json")])), 0);
    assert_eq!(code(&gact(&["morspace", "--budget", "2", &fixture("c4.json"), &fixture("c4.json")])), 2);
}

#[test]
fn infimum() {
    assert_eq!(code(&gact(&["infimum", &fixture("c3.json")])), 1);
    assert_eq!(code(&gact(&["infimum", &fixture("c3star.json")])), 0);
    let o = gact(&["infimum", "--strong", &fixture("sd2.json")]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["order_clause"], true);
}

#[test]
fn dot_and_determinism() {
    let a = gact(&["dot", &fixture("ft.json")]);
    let text = String::from_utf8(a.stdout.clone()).unwrap();
    assert!(text.starts_with("graph frames {"));
    assert!(text.contains("// triangle 0 1 2"));
    let b = gact(&["dot", &fixture("ft.json")]);
    assert_eq!(a.stdout, b.stdout);
    let c1 = gact(&["cover", "--base", "0", "--subgroup", "g^2", &fixture("c3.json")]);
    let c2 = gact(&["cover", "--base", "0", "--subgroup", "g^2", &fixture("c3.json")]);
    assert_eq!(c1.stdout, c2.stdout);
}

#[test]
fn fixtures_round_trip_through_the_binary() {
    for (name, file) in [("C4", "c4.json"), ("FT", "ft.json"), ("SD2", "sd2.json")] {
        let o = gact(&["fixture", name]);
        assert_eq!(o.stdout, std::fs::read(fixture(file)).unwrap(), "{name}");
    }
}
