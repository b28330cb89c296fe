use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_htrinomial"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("structured output")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn close(a: &Value, b: f64, tol: f64) {
    let a = a.as_f64().unwrap_or_else(|| panic!("not a number: {a}"));
    assert!((a - b).abs() <= tol, "{a} vs {b}");
}

#[test]
fn counts_of_the_regime_example() {
    let out = run(&[
        "count", "--n", "1", "--m", "3", "--b-re", "-5", "--c-re", "2", "--v", "0.5", "--v", "2", "--v", "6",
        "--format", "structured",
    ]);
    let r = json(&out);
    let counts: Vec<u64> = r["counts"].as_array().unwrap().iter().map(|e| e["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, vec![0, 3, 10]);
    assert_eq!(r["counts"][1]["regime"], "b_dominant");
}

#[test]
fn count_reports_pivot_and_angle() {
    let out = run(&[
        "count", "--n", "2", "--m", "1", "--b-re", "1", "--c-re", "1.4142135623730951", "--v", "1", "--format",
        "structured",
    ]);
    let r = json(&out);
    let d = &r["counts"][0];
    assert_eq!(d["count"], 1);
    close(&d["p_star"], -2.0, 0.0);
    close(&d["w_star"], 0.25, 1e-12);
}

#[test]
fn boundary_radius_is_reported_without_aborting() {
    let profile = json(&run(&["report", "--n", "1", "--m", "3", "--b-re", "-5", "--c-re", "2", "--format", "structured"]));
    let inner = profile["triangle_profile"]["b_radii"]["inner"].as_f64().unwrap().to_string();
    let args = ["count", "--n", "1", "--m", "3", "--b-re", "-5", "--c-re", "2", "--format", "structured", "--v"];

    let mixed = run(&[&args[..], &[&inner, "--v", "6"]].concat());
    let r = json(&mixed);
    let err = &r["counts"][0]["error"];
    assert_eq!(err["kind"], "on_boundary");
    assert!(err["below"].as_f64().unwrap() < err["above"].as_f64().unwrap());
    assert_eq!(r["counts"][1]["count"], 10);

    let only = run(&[&args[..], &[&inner]].concat());
    assert_eq!(code(&only), 2);
}

#[test]
fn report_of_the_spectrum_example() {
    let r = json(&run(&["report", "--n", "2", "--m", "3", "--b-re", "6", "--c-re", "1", "--format", "structured"]));
    for key in ["input", "triangle_profile", "counts", "roots", "spectrum", "uj", "rays", "singular", "equivalence", "meta"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert_eq!(r["roots"]["roots"].as_array().unwrap().len(), 11);
    let expected = [0.54163, 0.55589, 2.43641, 2.44415, 2.45478, 2.46209];
    let spectrum = r["spectrum"].as_array().unwrap();
    assert_eq!(spectrum.len(), expected.len());
    for (g, e) in spectrum.iter().zip(expected) {
        close(&g["modulus"], e, 1e-4);
    }
    let members: Vec<u64> = r["uj"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["member"] == true)
        .map(|e| e["j"].as_u64().unwrap())
        .collect();
    assert_eq!(members, vec![1, 3, 5, 7, 9]);
    assert_eq!(r["meta"]["tool"], "htrinomial");
}

#[test]
fn conjugate_free_trinomial_uses_the_closed_form() {
    let r = json(&run(&["roots", "--n", "3", "--m", "2", "--c-re", "-1", "--format", "structured"]));
    assert_eq!(r["roots"]["method"], "no_conjugate_term");
    let roots = r["roots"]["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 5);
    for root in roots {
        close(&root["modulus"], 1.0, 1e-12);
    }
}

#[test]
fn exit_codes() {
    let coprime = run(&["roots", "--n", "2", "--m", "2", "--b-re", "1", "--c-re", "1"]);
    assert_eq!(code(&coprime), 2);
    assert!(String::from_utf8_lossy(&coprime.stderr).contains("coprime"));

    let dir = tempfile::tempdir().unwrap();
    let spec = write(&dir, "h.json", r#"{"n": 2, "m": 1, "b": [1, 0], "c": [1, 0]}"#);
    assert_eq!(code(&run(&["roots", "--spec", s(&spec), "--n", "2"])), 2);
    assert_eq!(code(&run(&["roots", "--spec", s(&dir.path().join("missing.json"))])), 4);
    let bad = write(&dir, "bad.json", "{ not json");
    assert_eq!(code(&run(&["roots", "--spec", s(&bad)])), 2);
    let unknown = write(&dir, "unknown.json", r#"{"n": 2, "m": 1, "b": [1, 0], "c": [1, 0], "d": [0, 0]}"#);
    assert_eq!(code(&run(&["roots", "--spec", s(&unknown)])), 2);

    let tol = write(&dir, "tol.json", r#"{"residual": 1e-300}"#);
    let numerical = run(&["roots", "--n", "2", "--m", "3", "--b-re", "6", "--c-re", "1", "--tol-file", s(&tol)]);
    assert_eq!(code(&numerical), 3);
    let negative = write(&dir, "neg.json", r#"{"angular": -1}"#);
    assert_eq!(code(&run(&["roots", "--spec", s(&spec), "--tol-file", s(&negative)])), 2);

    let unwritable = dir.path().join("no/such/dir/out.json");
    assert_eq!(code(&run(&["roots", "--spec", s(&spec), "--out", s(&unwritable)])), 4);
}

#[test]
fn equivalence_of_a_scaled_rotated_pair() {
    let dir = tempfile::tempdir().unwrap();
    let other = write(&dir, "w.json", r#"{"n": 5, "m": 2, "a": [2, 0], "b": [-6, 0], "c": [-4, 0]}"#);
    let base = ["equiv", "--n", "5", "--m", "2", "--b-re", "3", "--format", "structured", "--with", s(&other)];
    let r = json(&run(&[&base[..], &["--c-re", "2"]].concat()));
    assert_eq!(r["equivalence"]["equivalent"], true);

    // rotate c by 0.07 rad
    let (re, im) = (2.0 * 0.07f64.cos(), 2.0 * 0.07f64.sin());
    let r = json(&run(&[&base[..], &["--c-re", &re.to_string(), "--c-im", &im.to_string()]].concat()));
    assert_eq!(r["equivalence"]["equivalent"], false);
    assert!(r["equivalence"]["congruence_defect"].as_f64().unwrap() > 0.01);

    let mismatch = write(&dir, "m.json", r#"{"n": 4, "m": 3, "b": [1, 0], "c": [1, 0]}"#);
    let out = run(&["equiv", "--n", "5", "--m", "2", "--b-re", "3", "--c-re", "2", "--with", s(&mismatch)]);
    assert_eq!(code(&out), 2);
}

#[test]
fn locus_csv_and_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("b.csv");
    let out = run(&[
        "locus", "--n", "5", "--m", "3", "--c-re", "0.5", "--v", "1", "--verify", "--samples", "256", "--out", s(&csv),
        "--format", "structured",
    ]);
    let summary = json(&out);
    close(&summary["params"]["R"], 11.0 / 6.0, 1e-14);
    close(&summary["params"]["r"], 5.0 / 6.0, 1e-14);
    close(&summary["params"]["d"], 0.5, 1e-14);
    assert_eq!(summary["verification"]["checked"], 8);
    assert_eq!(summary["verification"]["failed"].as_array().unwrap().len(), 0);

    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,re,im"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 256);
    for field in rows[1].split(',') {
        let mantissa = field.trim_start_matches('-').split('e').next().unwrap();
        assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17, "{field}");
    }

    let c = json(&run(&["locus", "--kind", "c", "--n", "5", "--m", "2", "--b-re", "-3.5", "--v", "1", "--out", s(&csv), "--format", "structured"]));
    close(&c["params"]["R"], 2.5, 1e-14);
    close(&c["params"]["r"], 1.0, 1e-14);
    close(&c["params"]["d"], 1.0, 1e-14);
}

#[test]
fn locus_without_parameters_still_emits_the_curve() {
    let out = run(&["locus", "--kind", "c", "--n", "1", "--m", "2", "--b-re", "1", "--v", "1", "--samples", "64"]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 65);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn singular_data_and_quoted_rho() {
    let r = json(&run(&["singular", "--n", "1", "--m", "1", "--c-re", "-1", "--format", "structured"]));
    let target = 2.0 * 3f64.sqrt() / 3.0;
    let cusps = r["singular"]["cusps"].as_array().unwrap();
    assert!(cusps.iter().any(|b| (b[0].as_f64().unwrap() - target).abs() < 1e-9 && b[1].as_f64().unwrap().abs() < 1e-9));
    close(&r["singular"]["cusp_radius"], 3f64.sqrt() / 3.0, 1e-12);

    let r = json(&run(&["singular", "--n", "4", "--m", "1", "--c-re", "1", "--expect-rho", "1.2052", "--format", "structured"]));
    let p = &r["singular"]["published_rho"];
    close(&p["formula"], 1.1925, 1e-4);
    assert_eq!(p["flagged"], true);
    assert!(r["meta"]["notes"].as_array().unwrap().iter().any(|n| n.as_str().unwrap().contains("1.2052")));

    let r = json(&run(&["singular", "--n", "5", "--m", "3", "--c-re", "0.5", "--expect-rho", "0.7676", "--format", "structured"]));
    assert_eq!(r["singular"]["published_rho"]["flagged"], false);
}

#[test]
fn plot_styles_rays_by_parity_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (first, second) = (dir.path().join("a.svg"), dir.path().join("b.svg"));
    let args = ["plot", "--n", "1", "--m", "1", "--b-re", "-2", "--c-re", "1", "--v", "2.23606797749979"];
    for path in [&first, &second] {
        assert!(run(&[&args[..], &["--out", s(path)]].concat()).status.success());
    }
    let svg = std::fs::read_to_string(&first).unwrap();
    assert_eq!(svg, std::fs::read_to_string(&second).unwrap());
    assert_eq!(svg.matches("class=\"ray even\"").count(), 2);
    assert_eq!(svg.matches("class=\"ray odd\"").count(), 2);
    assert!(svg.lines().filter(|l| l.contains("ray even")).all(|l| l.contains("stroke-dasharray=\"1.5,4\"")));
    assert!(svg.lines().filter(|l| l.contains("ray odd")).all(|l| l.contains("stroke-dasharray=\"8,5\"")));
    assert_eq!(svg.matches("class=\"locus\"").count(), 1);
    assert_eq!(svg.matches("class=\"disk\"").count(), 1);

    let roots = run(&["plot", "--plane", "z", "--n", "2", "--m", "3", "--b-re", "6", "--c-re", "1", "--v", "0.55589"]);
    let svg = String::from_utf8(roots.stdout).unwrap();
    assert_eq!(svg.matches("class=\"root\"").count(), 11);
}

#[test]
fn reports_are_byte_stable_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (first, second, third) = (dir.path().join("1.json"), dir.path().join("2.json"), dir.path().join("3.json"));
    let args = [
        "report", "--n", "2", "--m", "3", "--b-re", "6", "--c-re", "1", "--v", "0.3", "--v", "1", "--v", "3",
        "--samples", "1024", "--expect-rho", "1.1", "--format", "structured",
    ];
    for path in [&first, &second] {
        let out = run(&[&args[..], &["--out", s(path)]].concat());
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        // human summary goes to standard output
        assert!(String::from_utf8_lossy(&out.stdout).contains("U_j membership"));
    }
    let bytes = std::fs::read(&first).unwrap();
    assert_eq!(bytes, std::fs::read(&second).unwrap());

    let out = run(&["report", "--spec", s(&first), "--format", "structured", "--out", s(&third)]);
    assert!(out.status.success());
    assert_eq!(bytes, std::fs::read(&third).unwrap());
}

#[test]
fn flags_override_the_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(&dir, "h.json", r#"{"n": 1, "m": 3, "b": [-5, 0], "c": [2, 0], "v": [0.5], "samples": 512}"#);
    let r = json(&run(&["count", "--spec", s(&spec), "--format", "structured"]));
    assert_eq!(r["counts"].as_array().unwrap().len(), 1);
    assert_eq!(r["input"]["samples"], 512);
    let r = json(&run(&["count", "--spec", s(&spec), "--v", "6", "--samples", "64", "--format", "structured"]));
    assert_eq!(r["counts"][0]["count"], 10);
    assert_eq!(r["input"]["samples"], 64);
}
