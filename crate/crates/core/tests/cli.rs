use std::process::{Command, Output};

fn conecert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conecert")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn certify_cube_of_projective_planes() {
    let out = conecert(&["certify", "G(1,3;R) x G(1,3;R) x G(1,3;R)"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["verdict"], "MINIMIZING");
    assert_eq!(json["branch"], "CRITICAL_DIM7");
    assert_eq!(json["dimC"], 7);
    assert!((json["normalRadiusDeg"].as_f64().unwrap() - 60.0).abs() < 1e-9);
}

#[test]
fn certify_csv_has_header_and_one_row() {
    let out = conecert(&["--csv", "certify", "G(1,2;H) x G(1,2;H)"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("product,"));
    assert!(lines[1].ends_with("MINIMIZING"));
}

#[test]
fn circle_factor_is_inconclusive() {
    let out = conecert(&["certify", "S(1) x G(1,3;R)"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["verdict"], "INCONCLUSIVE");
}

#[test]
fn malformed_input_exits_two() {
    assert_eq!(conecert(&["certify", "G(1,3;X)"]).status.code(), Some(2));
    assert_eq!(conecert(&["certify", "G(3,3;R)"]).status.code(), Some(2));
    assert_eq!(conecert(&["nonsense"]).status.code(), Some(2));
    assert_eq!(conecert(&[]).status.code(), Some(2));
}

#[test]
fn oracle_exit_codes_track_the_check() {
    let ok = conecert(&["oracle", "--factor", "G(2,4;C)", "--check", "alpha", "--samples", "200"]);
    assert_eq!(ok.status.code(), Some(0));
    let red = conecert(&["oracle", "--factor", "G(1,3;R)", "--check", "alpha", "--samples", "200"]);
    assert_eq!(red.status.code(), Some(1));
}

#[test]
fn critical7_single_case() {
    let out = conecert(&["critical7", "--case", "G(1,3;R) x G(1,3;R) x G(1,3;R)", "--t", "0.3"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(json["gap"].as_f64().unwrap().abs() < 1e-9);
}

#[test]
fn table_lists_dimensions_eight_to_twelve() {
    let out = conecert(&["--csv", "table"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 6);
}

#[test]
fn green_suites_exit_zero() {
    for which in ["critical7", "end-to-end", "robustness"] {
        let out = conecert(&["--csv", "suite", which]);
        assert_eq!(out.status.code(), Some(0), "{which}: {}", stdout(&out));
    }
}
