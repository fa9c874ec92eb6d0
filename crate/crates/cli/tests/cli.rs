use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use twocat_cli::{load, parse, run, CommandError, LoadError, Options, Status};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn twocat(args: &[&str], file: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twocat")).args(args).arg("--input").arg(fixture(file)).output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn args(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

#[test]
fn load_errors_are_classified() {
    assert!(matches!(load(&fixture("malformed.json")), Err(LoadError::Parse { line: 4, .. })));
    assert!(matches!(load(&fixture("bad_reference.json")), Err(LoadError::Reference(n)) if n == "three"));
    assert!(matches!(load(&fixture("missing.json")), Err(LoadError::Io { .. })));
    let dup = r#"{"categories": {"a": {"chain": 2}, "a": {"chain": 3}}}"#;
    assert!(matches!(parse(dup), Err(LoadError::Parse { .. })));
    let unknown_field = r#"{"categories": {"a": {"chain": 2, "colour": 1}}}"#;
    assert!(matches!(parse(unknown_field), Err(LoadError::Parse { .. })));
    let two_forms = r#"{"categories": {"a": {"chain": 2, "builtin": "terminal"}}}"#;
    assert!(matches!(parse(two_forms), Err(LoadError::Invalid { .. })));
}

#[test]
fn non_monoid_table_rejected() {
    let text = r#"{"monoids": {"m": {"elements": ["a", "b"], "table": [["a", "a"], ["b", "b"]], "unit": "a"}}}"#;
    assert!(matches!(parse(text), Err(LoadError::Invalid { name, .. }) if name == "m"));
}

#[test]
fn ill_typed_functor_rejected() {
    // f : 0 → 1 cannot go to a morphism 1 → 1 when 0 ↦ 0
    let text = r#"{
        "categories": {"two": {"builtin": "walking_arrow"}},
        "universes": {"u": {"seeds": ["two"]}},
        "algebras": {"y": {"universe": "u", "carrier": "two", "kind": "monad",
            "t": {"objects": {"0": "0", "1": "1"}, "morphisms": {"f": "id_1"}}, "mu": {}, "eta": {}}}
    }"#;
    assert!(matches!(parse(text), Err(LoadError::Invalid { .. })));
}

#[test]
fn command_errors() {
    let ws = load(&fixture("z2_action.json")).unwrap();
    let o = Options::default();
    assert!(matches!(run(&ws, "frobnicate", &[], &o), Err(CommandError::UnknownCommand(_))));
    assert!(matches!(run(&ws, "check-algebra", &[], &o), Err(CommandError::Arity { .. })));
    assert!(matches!(run(&ws, "check-algebra", &args(&["nope"]), &o), Err(CommandError::UnknownName { .. })));
    assert!(matches!(run(&ws, "hom", &args(&["swap", "swap", "sideways"]), &o), Err(CommandError::Unsupported(_))));
    assert!(matches!(run(&ws, "kleisli", &args(&["swap"]), &o), Err(CommandError::Unsupported(_))));
}

#[test]
fn exit_codes() {
    assert_eq!(twocat(&["check-algebra", "swap"], "z2_action.json").status.code(), Some(0));
    assert_eq!(twocat(&["preorder-leq", "s0_d0_d", "d"], "identity_on_two.json").status.code(), Some(2));
    assert_eq!(twocat(&["validate"], "malformed.json").status.code(), Some(3));
    assert_eq!(twocat(&["bogus"], "z2_action.json").status.code(), Some(3));
    // a free loop never completes under a tiny budget
    let out = twocat(&["strictify", "involution", "--budget", "1"], "monads.json");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["status"], "undecided");
}

#[test]
fn failing_morphism_reports_fail() {
    // fbar = s on the identity of the involution monad breaks the unit pasting
    let text = std::fs::read_to_string(fixture("monads.json")).unwrap();
    let mut doc: Value = serde_json::from_str(&text).unwrap();
    let f = serde_json::json!({"objects": {"*": "*"}, "morphisms": {"s": "s"}});
    doc["morphisms"] = serde_json::json!({
        "bent": {"from": "involution", "to": "involution", "f": f, "fbar": {"*": "s"}},
        "straight": {"from": "involution", "to": "involution", "f": f, "fbar": {"*": "e"}}
    });
    let ws = parse(&doc.to_string()).unwrap();
    let o = Options::default();
    assert_eq!(run(&ws, "check-morphism", &args(&["bent"]), &o).unwrap().status, Status::Fail);
    let ok = run(&ws, "check-morphism", &args(&["straight"]), &o).unwrap();
    assert_eq!(ok.status, Status::Pass);
    assert_eq!(ok.data["class"], "strict");
}

#[test]
fn prop_descent_witnesses_pair_hom_and_descent_objects() {
    let out = twocat(&["verify-prop-descent", "y", "y"], "const_one.json");
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["data"]["lax"]["objects"], 3);
    assert_eq!(r["data"]["pseudo"]["objects"], 2);
    let lax = r["witnesses"].as_array().unwrap().iter().filter(|w| w["class"] == "lax").count();
    assert_eq!(lax, 3);
}

#[test]
fn kleisli_matches_golden() {
    let out = twocat(&["kleisli", "const_one"], "monads.json");
    let golden = std::fs::read(fixture("kleisli_const_one.golden.json")).unwrap();
    assert_eq!(out.stdout, golden);
}

#[test]
fn strictify_has_the_golden_kleisli_shape() {
    let golden: Value = serde_json::from_slice(&std::fs::read(fixture("kleisli_const_one.golden.json")).unwrap()).unwrap();
    let s = report(&twocat(&["strictify", "const_one"], "monads.json"));
    let shape = |c: &Value| {
        let objs = c["objects"].as_array().unwrap().len();
        let mors = c["morphisms"].as_array().unwrap().len();
        (objs, mors)
    };
    assert_eq!(shape(&s["data"]["category"]), shape(&golden["data"]["category"]));
    let v = report(&twocat(&["verify-codescent", "const_one"], "monads.json"));
    assert_eq!(v["status"], "pass");
    assert_eq!(v["data"]["probes"]["2"]["isomorphic"], true);
}

#[test]
fn out_flag_writes_the_same_report() {
    let dir = std::env::temp_dir().join(format!("twocat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let out = twocat(&["hom", "swap", "fixed", "pseudo", "--out", path.to_str().unwrap()], "z2_action.json");
    assert!(out.stdout.is_empty());
    let direct = twocat(&["hom", "swap", "fixed", "pseudo"], "z2_action.json");
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn normalize_reports_boundary() {
    let r = report(&twocat(&["normalize-2cell", "theta_then_unit"], "identity_on_two.json"));
    assert_eq!(r["data"]["source"], "d1∘d");
    assert_eq!(r["data"]["target"], "d0∘s0∘d0∘d");
    assert_eq!(r["data"]["normal_form"], r["data"]["input"]);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for (cmd, file) in [
        (vec!["lax-descent", "t_swap"], "z2_action.json"),
        (vec!["verify-codescent", "closure"], "monads.json"),
        (vec!["build-tzy", "y", "y"], "const_one.json"),
    ] {
        let a = twocat(&cmd, file);
        let b = twocat(&cmd, file);
        assert_eq!(a.stdout, b.stdout);
    }
}
