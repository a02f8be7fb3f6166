//! End-to-end runs of the `qst` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use qst_cli::report::{Body, Report};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn scratch(name: &str) -> String {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR"))
        .join(name)
        .display()
        .to_string()
}

fn qst(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qst"))
        .args(args)
        .env_remove("QST_CAPS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn report(o: &Output) -> Report {
    serde_json::from_slice(&o.stdout).expect("json report")
}

#[test]
fn lattice_check_mo2() {
    let o = qst(&["lattice-check", "mo:2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("6 elements"));
    assert!(text.contains("boolean subalgebras: 3"));
    assert!(text.contains("fiber sizes: 1/2/2"));
}

#[test]
fn lattice_check_files_agree_with_generator() {
    for f in ["mo2.toml", "mo2-projections.toml"] {
        let o = qst(&["--json", "lattice-check", &fixture(f)]);
        assert_eq!(code(&o), 0, "{f}");
        let Body::LatticeCheck(b) = report(&o).body else {
            panic!()
        };
        assert_eq!(b.elements.len(), 6);
        assert_eq!(b.subalgebras.len(), 3);
        assert_eq!(b.fiber_sizes, vec![1, 2, 2]);
        assert_eq!(b.subobjects, Some(17));
    }
}

#[test]
fn lattice_check_boolean3_counts() {
    let o = qst(&["--json", "lattice-check", "boolean:3"]);
    assert_eq!(code(&o), 0);
    let Body::LatticeCheck(b) = report(&o).body else {
        panic!()
    };
    assert_eq!(b.elements.len(), 8);
    assert_eq!(b.subalgebras.len(), 5);
    assert!(b.distributive);
}

#[test]
fn benzene_is_rejected_with_a_witness() {
    let o = qst(&["lattice-check", &fixture("o6.toml")]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("not orthomodular"), "{}", stderr(&o));
}

#[test]
fn missing_file_is_invalid_input() {
    let o = qst(&["lattice-check", &fixture("nope.toml")]);
    assert_eq!(code(&o), 2);
}

#[test]
fn theorems_all_pass_on_small_lattices() {
    for l in ["mo:2", "boolean:2", "mo:3"] {
        let o = qst(&["--json", "theorems", l]);
        assert_eq!(code(&o), 0, "{l}: {}", stdout(&o));
        let Body::Theorems(b) = report(&o).body else {
            panic!()
        };
        assert!(b.passed());
        assert!(b.suites.iter().any(|s| s.id == "negative"));
    }
}

#[test]
fn theorems_single_suite() {
    let o = qst(&["--json", "theorems", "mo:2", "--which", "4.2"]);
    assert_eq!(code(&o), 0);
    let Body::Theorems(b) = report(&o).body else {
        panic!()
    };
    assert_eq!(b.suites.len(), 1);
    assert_eq!(b.suites[0].selector, "4.2");
}

#[test]
fn unknown_suite_is_invalid_input() {
    let o = qst(&["theorems", "mo:2", "--which", "9.9"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn caps_flag_and_environment_give_exit_three() {
    let o = qst(&["theorems", "mo:3", "--caps", "subobject_bits=4"]);
    assert_eq!(code(&o), 3);
    let o = Command::new(env!("CARGO_BIN_EXE_qst"))
        .args(["lattice-check", "mo:2"])
        .env("QST_CAPS", "lattice_elements=4")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    let o = qst(&["lattice-check", "mo:2", "--caps", "nonsense=1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn logic_reports_are_byte_identical_across_runs() {
    for args in [
        vec!["--json", "logic", "mo:2"],
        vec![
            "--json",
            "logic",
            "mo:2",
            "--mode",
            "sampled",
            "--seed",
            "11",
            "--samples",
            "300",
        ],
        vec!["--json", "logic", "mo:2", "--profile", "heyting"],
    ] {
        let a = report(&qst(&args)).to_json_without_timestamp();
        let b = report(&qst(&args)).to_json_without_timestamp();
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn logic_heyting_shows_excluded_middle_counterexample() {
    let o = qst(&["--json", "logic", "mo:2", "--profile", "heyting"]);
    assert_eq!(code(&o), 0);
    let Body::Logic(b) = report(&o).body else {
        panic!()
    };
    let lem = b.entries.iter().find(|e| e.label == "axiom 8").unwrap();
    assert_eq!(lem.status, "counterexample");
    assert!(lem.counterexample.is_some());
}

#[test]
fn unknown_profile_is_invalid_input() {
    let o = qst(&["logic", "mo:2", "--profile", "intuitionist"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn logic_counterexamples_replay() {
    for profile in ["star", "heyting", "coheyting"] {
        let out = scratch(&format!("logic-{profile}.json"));
        let o = qst(&["logic", "mo:2", "--profile", profile, "--out", &out]);
        assert_eq!(code(&o), 0);
        let r = qst(&["--json", "logic", "mo:2", "--replay", &out]);
        assert_eq!(code(&r), 0, "{}", stdout(&r));
        let Body::Replay(b) = report(&r).body else {
            panic!()
        };
        assert!(b.all_replayed());
        assert!(b.items.iter().any(|i| i.replayed == Some(true)));
    }
}

#[test]
fn theorem_witnesses_replay() {
    let out = scratch("theorems-mo2.json");
    assert_eq!(code(&qst(&["theorems", "mo:2", "--out", &out])), 0);
    let r = qst(&["--json", "theorems", "mo:2", "--replay", &out]);
    assert_eq!(code(&r), 0);
    let Body::Replay(b) = report(&r).body else {
        panic!()
    };
    assert!(b.items.len() >= 5);
    assert!(b.items.iter().all(|i| i.replayed == Some(true)));
}

#[test]
fn tampered_witness_fails_replay() {
    let out = scratch("logic-tampered.json");
    assert_eq!(
        code(&qst(&[
            "logic",
            "mo:2",
            "--profile",
            "heyting",
            "--out",
            &out
        ])),
        0
    );
    let mut r: Report = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let Body::Logic(b) = &mut r.body else {
        panic!()
    };
    let cx = b
        .entries
        .iter_mut()
        .find_map(|e| e.counterexample.as_mut())
        .unwrap();
    for (_, v) in cx.valuation.iter_mut() {
        v.encoded = "1.3.3".into();
    }
    std::fs::write(&out, r.to_json()).unwrap();
    let o = qst(&["logic", "mo:2", "--replay", &out]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    cx_garbage(&out);
}

fn cx_garbage(path: &str) {
    let mut r: Report = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let Body::Logic(b) = &mut r.body else {
        panic!()
    };
    let cx = b
        .entries
        .iter_mut()
        .find_map(|e| e.counterexample.as_mut())
        .unwrap();
    cx.value.encoded = "zz".into();
    std::fs::write(path, r.to_json()).unwrap();
    assert_eq!(code(&qst(&["logic", "mo:2", "--replay", path])), 2);
}

#[test]
fn bridge_distinguishes_diagonals() {
    let o = qst(&["--json", "bridge", &fixture("diag12-vs-diag13.toml")]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let Body::Bridge(b) = report(&o).body else {
        panic!()
    };
    let inj = &b.injectivity[0];
    assert!(!inj.star_is_top);
    assert_eq!(inj.family_differs_at.as_deref(), Some("5/2"));
    assert!(inj.g_differs_at.is_some());
    assert!(b
        .matrices
        .iter()
        .all(|m| m.round_trip.iter().all(|p| p.equal)));
}

#[test]
fn bridge_single_matrix_reports_family_flags() {
    let o = qst(&["--json", "bridge", &fixture("single-diag.toml")]);
    assert_eq!(code(&o), 0);
    let Body::Bridge(b) = report(&o).body else {
        panic!()
    };
    let m = &b.matrices[0];
    assert!(m.dedekind.as_ref().unwrap().holds);
    let g = m.g_family.as_ref().unwrap();
    assert!(g.bottom && g.continuity);
    assert!(b.injectivity.is_empty());
}

#[test]
fn bridge_rejects_grid_that_misses_spectrum() {
    let o = qst(&["bridge", &fixture("bad-grid.toml")]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("does not bracket"), "{}", stderr(&o));
}

#[test]
fn bridge_reports_are_byte_identical_across_runs() {
    let f = fixture("swap-eigenpairs.toml");
    let a = report(&qst(&["--json", "bridge", &f])).to_json_without_timestamp();
    let b = report(&qst(&["--json", "bridge", &f])).to_json_without_timestamp();
    assert_eq!(a, b);
}

#[test]
fn out_file_matches_stdout_json() {
    let out = scratch("lattice-mo2.json");
    let o = qst(&["--json", "--out", &out, "lattice-check", "mo:2"]);
    let file: Report = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(
        file.to_json_without_timestamp(),
        report(&o).to_json_without_timestamp()
    );
    assert_eq!(file.header.schema, qst_cli::report::SCHEMA_VERSION);
}
