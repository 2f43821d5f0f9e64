//! End-to-end runs of the binary: envelopes, formats, exit codes, CSV.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_plane-ivhs"));
    c.env_remove("PLANE_IVHS_DEGREE_CAP");
    c
}

fn data(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(rel).display().to_string()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn analyze_envelope_is_complete_and_sorted() {
    let out = run(&["analyze", "--input", &data("curves/quartic-1node.json"), "--seed", "3"]);
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let v = json(&out);
    for key in ["tool", "version", "schema_version", "command", "input_digest", "seed", "sections", "tension_flags"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "analyze");
    assert_eq!(v["seed"], 3);
    assert_eq!(v["input_digest"].as_str().unwrap().len(), 64);
    let sections: Vec<&String> = v["sections"].as_object().unwrap().keys().collect();
    assert_eq!(sections, ["adjoint", "invariants", "ivhs", "maximality"]);
    assert_eq!(v["sections"]["invariants"]["geometric_genus"], 2);
    assert_eq!(v["sections"]["adjoint"]["dimension"], 2);
    assert_eq!(v["sections"]["ivhs"]["image_dimension"], 1);
    // keys at the top level appear in sorted order
    let pos = |k: &str| text.find(&format!("\"{k}\"")).unwrap();
    assert!(pos("command") < pos("input_digest") && pos("input_digest") < pos("schema_version"));
}

#[test]
fn rationals_travel_as_strings() {
    let v = json(&run(&["analyze", "--input", &data("curves/quintic-2nodes.json")]));
    let f = &v["sections"]["ivhs"]["functionals"][1];
    for c in f["coordinates"].as_array().unwrap() {
        assert!(c.is_string(), "{c}");
    }
}

#[test]
fn text_format_is_flat_key_value() {
    let out = run(&["analyze", "--input", &data("curves/nodal-cubic.json"), "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.lines().any(|l| l == "command: analyze"));
    assert!(s.lines().any(|l| l == "sections.invariants.geometric_genus: 0"));
}

#[test]
fn exit_codes_follow_the_error_kind() {
    let dir = tempfile::tempdir().unwrap();
    let bad_json = write(dir.path(), "bad.json", "{ not json");
    let not_singular = write(
        dir.path(),
        "smooth.json",
        r#"{"polynomial": "x^3 + y^3 + z^3", "declared_singularities": [{"point": ["0","0","1"]}]}"#,
    );
    let wrong_type = write(
        dir.path(),
        "wrong.json",
        r#"{"polynomial": "y^2*z - x^3", "declared_singularities": [{"point": ["0","0","1"], "expected_type": "A_1"}]}"#,
    );
    let quartic_point = write(
        dir.path(),
        "ordinary4.json",
        r#"{"polynomial": "x^4*z + y^4*z + x^5 + y^5", "declared_singularities": [{"point": ["0","0","1"]}]}"#,
    );
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["analyze", "--input", bad_json.to_str().unwrap()]), Some(2));
    assert_eq!(code(&["analyze", "--input", "/nonexistent/curve.json"]), Some(2));
    assert_eq!(code(&["analyze"]), Some(2));
    assert_eq!(code(&["analyze", "--input", not_singular.to_str().unwrap()]), Some(2));
    assert_eq!(code(&["analyze", "--input", wrong_type.to_str().unwrap()]), Some(2));
    assert_eq!(code(&["analyze", "--input", quartic_point.to_str().unwrap()]), Some(4));
    assert_eq!(code(&["verify-lemmas", "--truncation", "2"]), Some(3));
    assert_eq!(code(&["verify-lemmas", "--trials", "0"]), Some(2));
    assert_eq!(code(&["surface-report"]), Some(2));
    assert_eq!(code(&["family-scan", "--input", bad_json.to_str().unwrap()]), Some(2));
}

#[test]
fn degree_cap_comes_from_the_environment() {
    let path = data("curves/quintic-2nodes.json");
    let capped = bin().env("PLANE_IVHS_DEGREE_CAP", "4").args(["analyze", "--input", &path]).output().unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("cap"));
    let open = bin().env("PLANE_IVHS_DEGREE_CAP", "5").args(["analyze", "--input", &path]).output().unwrap();
    assert_eq!(open.status.code(), Some(0));
}

#[test]
fn family_scan_writes_one_csv_row_per_verified_sample() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "spec.json",
        r#"{"degree": 4, "node_points": [["1","0","1"], ["0","1","1"]], "sample_count": 5, "seed": 11}"#,
    );
    let csv = dir.path().join("scan.csv");
    let v = json(&run(&["family-scan", "--input", spec.to_str().unwrap(), "--csv", csv.to_str().unwrap()]));
    let verified = v["sections"]["family"]["summary"]["verified"].as_u64().unwrap();
    let mut rdr = csv::Reader::from_path(&csv).unwrap();
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(&headers[0], "index");
    let rows: Vec<_> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len() as u64, verified);
    for r in &rows {
        assert_eq!(&r[2], "1", "genus of a 2-nodal quartic");
        assert_eq!(&r[3], "2");
    }
}

#[test]
fn verify_lemmas_reports_fractions_and_flags() {
    let v = json(&run(&["verify-lemmas", "--seed", "4", "--trials", "50"]));
    let lem = &v["sections"]["lemmas"];
    assert_eq!(lem["node_pairing"]["bilinear"], "50/50");
    assert_eq!(lem["node_pairing"]["symmetric"], "50/50");
    assert_eq!(lem["cusp_pairing"]["zero_on_principal_parts"], "50/50");
    let flags: Vec<&str> = v["tension_flags"].as_array().unwrap().iter().map(|f| f.as_str().unwrap()).collect();
    assert!(flags.iter().any(|f| f.starts_with("node-pairing-sign-pattern")));
}

#[test]
fn surface_report_from_flags_and_from_file_agree() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "s.json", r#"{"surface_degree": 4, "multiple": 3, "singularities": ["A_3", "5*A_1"]}"#);
    let a = json(&run(&["surface-report", "--surface-degree", "4", "--multiple", "3", "--singularities", "A_3, 5*A_1"]));
    let b = json(&run(&["surface-report", "--input", file.to_str().unwrap()]));
    assert_eq!(a["sections"], b["sections"]);
    assert_eq!(a["sections"]["surface"]["arithmetic_genus"], 19);
    assert_eq!(a["sections"]["surface"]["geometric_genus"], 12);
}
