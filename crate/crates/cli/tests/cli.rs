//! End-to-end runs of the `celab` binary: exit-code conventions, JSON shape,
//! and byte-identical reproducibility of seeded commands.

use std::process::{Command, Output};

fn celab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_celab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn group_verify_succeeds() {
    let out = celab(&["group", "--p", "2", "--n", "1", "verify"]);
    assert!(out.status.success(), "{out:?}");
    assert!(stdout(&out).contains("axioms ok"));
    assert!(stdout(&out).contains("exhaustive"));
}

#[test]
fn group_bound_reports_inequality() {
    let out = celab(&["group", "--p", "2", "--n", "2", "bound", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["bound_holds"], true);
    assert!(v["result"]["min_index_times_derived"].as_u64().unwrap() >= 4);
    assert_eq!(v["tool"], "celab");
    assert!(v["config"]["seed"].is_number());
    assert!(v["budgets"]["subgroup_enumeration_order"].is_number());
}

#[test]
fn budget_violations_exit_two() {
    let out = celab(&["group", "--p", "3", "--n", "2", "subgroups"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("budget"), "{err}");
}

#[test]
fn unknown_spec_exits_two() {
    let out = celab(&["ce", "--algebra", "nope:1", "--mode", "exhaustive"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn negative_verdicts_are_successful_runs() {
    let out = celab(&["ce", "--algebra", "mat:2:2", "--mode", "exhaustive", "--json"]);
    assert!(out.status.success(), "negative verdict still exits 0");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["verdict"], "not-essential");
    assert!(v["result"]["witness"].is_array());
}

#[test]
fn ce_essential_verdict_json() {
    let out = celab(&["ce", "--algebra", "ga:2:1", "--mode", "exhaustive", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["verdict"], "essential");
    assert_eq!(v["result"]["certificate_counts"]["probed"], 255);
}

#[test]
fn pi_reports_amitsur_levitzki_bound() {
    let out = celab(&["pi", "--algebra", "mat:2:2", "--degrees", "2..5", "--mode", "basis", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["d_min"], 4);
    assert_eq!(v["result"]["proof_grade"], true);
}

#[test]
fn algdeg_sweep_agreement() {
    let out = celab(&["algdeg", "--algebra", "ga:2:1", "--sweep", "exhaustive", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["m1"], 2);
    assert_eq!(v["result"]["exact"], true);
    assert_eq!(v["result"]["n1_equals_n2"], true);
}

#[test]
fn q8_algebra_over_f3_is_not_local_but_still_runs() {
    // 3 does not divide |Q8|, so the augmentation fast path must not apply.
    // By Maschke the algebra is semisimple with an M_2(F_3) block, hence
    // not centrally essential; 3^8 elements are within the exhaustive budget.
    let out = celab(&["ce", "--algebra", "q8:3", "--mode", "exhaustive", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["verdict"], "not-essential");
}

#[test]
fn seeded_reruns_are_byte_identical() {
    let commands: Vec<Vec<&str>> = vec![
        vec!["ce", "--algebra", "ga:2:2", "--mode", "randomized", "--samples", "300", "--seed", "42", "--json"],
        vec!["pi", "--algebra", "ga:2:2", "--degrees", "2..3", "--mode", "randomized", "--samples", "40", "--seed", "7", "--json"],
        vec!["algdeg", "--algebra", "ga:2:2", "--sweep", "randomized", "--samples", "20", "--seed", "9", "--json"],
        vec!["product", "--specs", "ga:2:1,ga:2:2", "--action", "escape", "--seed", "42", "--json"],
        vec!["group", "--p", "2", "--n", "1", "subgroups", "--json"],
    ];
    for args in commands {
        let first = celab(&args);
        let second = celab(&args);
        assert!(first.status.success(), "{args:?}: {first:?}");
        assert_eq!(
            first.stdout, second.stdout,
            "rerun of {args:?} differs"
        );
    }
}

#[test]
fn fixture_group_file_round_trip() {
    let dir = std::env::temp_dir().join("celab-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c6.json");
    let table: Vec<Vec<usize>> = (0..6).map(|g| (0..6).map(|h| (g + h) % 6).collect()).collect();
    let file = serde_json::json!({"name": "C6", "order": 6, "table": table});
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    let out = celab(&["group", "--fixture", path.to_str().unwrap(), "info", "--json"]);
    assert!(out.status.success(), "{out:?}");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["order"], 6);
    assert_eq!(v["result"]["nilpotency_class"], 1);

    // verify on a fixture group skips the G(n)-only formula check
    let out = celab(&["group", "--fixture", path.to_str().unwrap(), "verify"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("not applicable"));
}

#[test]
fn polynomial_fixture_search() {
    let dir = std::env::temp_dir().join("celab-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("commutator.json");
    std::fs::write(
        &path,
        r#"{"degree": 2, "terms": [{"perm": [1, 2], "coeff": 1}, {"perm": [2, 1], "coeff": -1}]}"#,
    )
    .unwrap();
    let out = celab(&[
        "pi",
        "--algebra",
        "ga:2:1",
        "--poly",
        path.to_str().unwrap(),
        "--mode",
        "basis",
        "--json",
    ]);
    assert!(out.status.success(), "{out:?}");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["result"]["outcome"]["witness"].is_object());
}

#[test]
fn mutually_exclusive_element_and_sweep() {
    let out = celab(&["algdeg", "--algebra", "ga:2:1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = celab(&[
        "algdeg", "--algebra", "ga:2:1", "--element", "basis:0", "--sweep", "exhaustive",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
