use std::fs;
use std::process::{Command, Output};

fn nonlocal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nonlocal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn analyze_named_gate() {
    let out = nonlocal(&["analyze", "--name", "b_gate"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("B_GATE"), "{text}");
    assert!(text.contains("0.222222222222"), "{text}");
    assert!(text.contains("SPE"), "{text}");
}

#[test]
fn analyze_point_in_degrees() {
    let out = nonlocal(&["analyze", "--point", "45,45,0", "--deg"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("0.166666666667"));
}

#[test]
fn analyze_input_errors_exit_2() {
    for args in [
        &["analyze", "--point", "1,2"][..],
        &["analyze", "--point", "a,b,c"],
        &["analyze", "--name", "NOPE"],
        &["analyze", "--name", "SPE:xyz"],
        &["scan", "--edge", "XX", "--steps", "3"],
        &["scan", "--chamber", "1"],
    ] {
        let out = nonlocal(args);
        assert_eq!(code(&out), 2, "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(!err.trim().is_empty(), "{args:?}");
    }
}

#[test]
fn matrix_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let first = nonlocal(&["analyze", "--name", "DCNOT", "--json"]);
    assert_eq!(code(&first), 0);
    let path = dir.path().join("dcnot.json");
    fs::write(&path, &first.stdout).unwrap();

    let again = nonlocal(&["analyze", "--matrix", path.to_str().unwrap(), "--json"]);
    assert_eq!(code(&again), 0, "{}", String::from_utf8_lossy(&again.stderr));
    let a: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&again.stdout).unwrap();
    let g2 = |v: &serde_json::Value| v["g2"].as_f64().unwrap();
    assert!((g2(&a) - g2(&b)).abs() < 1e-10);
    assert!((g2(&b) + 1.0).abs() < 1e-10);
}

#[test]
fn non_unitary_matrix_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let row = |k: usize| {
        (0..4)
            .map(|j| if j == k { "[2.0, 0.0]" } else { "[0.0, 0.0]" })
            .collect::<Vec<_>>()
            .join(", ")
    };
    let rows = (0..4).map(|k| format!("[{}]", row(k))).collect::<Vec<_>>().join(", ");
    fs::write(&path, format!("{{\"matrix\": [{rows}]}}")).unwrap();
    let out = nonlocal(&["analyze", "--matrix", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);

    fs::write(&path, "not json").unwrap();
    assert_eq!(code(&nonlocal(&["analyze", "--matrix", path.to_str().unwrap()])), 2);
}

#[test]
fn scan_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("qp.csv");
    let out = nonlocal(&["scan", "--edge", "QP", "--steps", "11", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let csv = fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("c1,c2,c3,g1_abs,g2,ep,pe_geometric,pe_invariant"));
    assert_eq!(lines.count(), 11);
}

#[test]
fn unwritable_path_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let out = nonlocal(&["scan", "--chamber", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
}

#[test]
fn scan_is_byte_deterministic() {
    let a = nonlocal(&["scan", "--chamber", "8"]);
    let b = nonlocal(&["scan", "--chamber", "8"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_routes_passes() {
    let out = nonlocal(&["verify", "routes", "--n", "100", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).trim_end().ends_with("0 violations"));
}

#[test]
fn verify_theorems_small_grid_is_clean() {
    let out = nonlocal(&["verify", "theorems", "--grid", "10"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
}

#[test]
fn catalog_lists_every_entry() {
    let out = nonlocal(&["catalog"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for name in nonlocal_core::canonical::CATALOG_NAMES {
        let head = name.split(':').next().unwrap();
        assert!(text.contains(head), "{name}");
    }
}
