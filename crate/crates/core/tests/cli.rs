use std::io::Write;

use liework::cli::run;

fn exec(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("liework").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

const HEIS: &str = "\
# Heisenberg algebra
lie_algebra h
dim 3
basis X Y Z
bracket [X,Y] = Z
end
";

#[test]
fn nilrad_condition_from_file() {
    let f = file(HEIS);
    let (code, out, _) = exec(&["nilrad-condition", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("holds=true"), "{out}");
    assert!(out.contains("total_dim=4"), "{out}");
}

#[test]
fn custom_metric_flag() {
    let f = file(HEIS);
    let m = file("metric rows\n2 1 0\n1 2 0\n0 0 3\nend\n");
    let (code, out, err) =
        exec(&["derivations", f.path().to_str().unwrap(), "--metric", m.path().to_str().unwrap(), "--skew"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("derivations_dim=6"), "{out}");
    assert!(out.contains("skew_derivations_dim=1"), "{out}");
    assert!(out.contains("skew_basis"), "{out}");
}

#[test]
fn not_positive_definite_metric_is_rejected() {
    let f = file(HEIS);
    let m = file("metric rows\n1 2 0\n2 1 0\n0 0 1\nend\n");
    let (code, _, err) = exec(&["derivations", f.path().to_str().unwrap(), "--metric", m.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("positive"), "{err}");
}

#[test]
fn parse_error_reports_position() {
    let f = file("lie_algebra h\ndim 3\nbasis X Y Z\nbracket [X,Y] = Q\nend\n");
    let (code, _, err) = exec(&["check", f.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 4"), "{err}");
    assert!(err.contains("column"), "{err}");
}

#[test]
fn jacobi_failure_is_an_input_error() {
    let f = file("lie_algebra bad\ndim 3\nbasis X Y Z\nbracket [X,Y] = X\nbracket [X,Z] = Y\nend\n");
    let (code, _, err) = exec(&["check", f.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("Jacobi"), "{err}");
}

#[test]
fn non_nilpotent_base_is_a_precondition_failure() {
    for cmd in ["isometry-algebra", "nilrad-condition"] {
        let (code, out, err) = exec(&[cmd, "rototranslation"]);
        assert_eq!(code, 3, "{cmd}: {out}");
        assert!(err.contains("not nilpotent"), "{err}");
    }
}

#[test]
fn unknown_input_and_usage() {
    assert_eq!(exec(&["series", "no-such-thing"]).0, 2);
    assert_eq!(exec(&["bogus"]).0, 2);
    assert_eq!(exec(&["series", "z4-cycle"]).0, 2);
    assert_eq!(exec(&["finite", "tfae", "heisenberg3"]).0, 2);
    let (code, out, _) = exec(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify-all"));
}

#[test]
fn finite_commands() {
    let (code, out, _) = exec(&["finite", "tfae", "fourpoint-discrete"]);
    assert_eq!(code, 0);
    assert!(out.contains("a=false") && out.contains("affine=8") && out.contains("isometries=24"), "{out}");
    let g = file("metric_group c2\norder 2\nelements e a\ntable\ne a\na e\nmetric\n0 1\n1 0\nend\n");
    let (code, out, err) = exec(&["finite", "analyze", g.path().to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("isometries=2"), "{out}");
}

#[test]
fn catalog_commands() {
    let (code, out, _) = exec(&["catalog", "list"]);
    assert_eq!(code, 0);
    assert!(out.contains("rototranslation") && out.contains("fourpoint-discrete"));
    let (code, out, _) = exec(&["catalog", "show", "so3"]);
    assert_eq!(code, 0);
    assert!(out.contains("so3"));
    assert_eq!(exec(&["catalog", "show", "nope"]).0, 2);
}

#[test]
fn json_report_shape() {
    let (code, out, _) = exec(&["--json", "report", "heisenberg3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let body = &v["body"];
    assert_eq!(body["command"], "report");
    assert_eq!(body["tool"], "liework");
    assert_eq!(body["input_digest"].as_str().unwrap().len(), 64);
    let checks = body["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["verdict"] == "pass"));
    let nil = checks.iter().find(|c| c["name"] == "heisenberg3/nilradical").unwrap();
    assert_eq!(nil["details"]["nilradical"], serde_json::json!([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]));
    assert!(v["wall_time_ms"].is_u64());
}

#[test]
fn rational_entries_render_as_fractions() {
    let f = file(HEIS);
    let m = file("metric rows\n1/2 0 0\n0 1 0\n0 0 1\nend\n");
    let (code, out, _) = exec(&[
        "--json",
        "derivations",
        f.path().to_str().unwrap(),
        "--metric",
        m.path().to_str().unwrap(),
        "--skew",
    ]);
    assert_eq!(code, 0);
    // DᵀQ + QD = 0 with Q = diag(1/2, 1, 1) forces D[1][0] = -D[0][1]/2
    assert!(out.contains("\"-1/2\""), "{out}");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_liework");
    let s = std::process::Command::new(bin).args(["isometry-algebra", "rototranslation"]).output().unwrap();
    assert_eq!(s.status.code(), Some(3));
    let s = std::process::Command::new(bin).args(["nilrad-condition", "heisenberg3"]).output().unwrap();
    assert_eq!(s.status.code(), Some(0));
}
