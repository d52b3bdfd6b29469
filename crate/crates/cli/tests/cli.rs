use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn hgx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hgx")).args(args).output().expect("hgx runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Writes `hgx catalog <name>` into the directory.
fn fixture(dir: &TempDir, name: &str, extra: &[&str]) -> PathBuf {
    let mut args = vec!["catalog", name];
    args.extend_from_slice(extra);
    let o = hgx(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let path = dir.path().join(format!("{name}.json"));
    std::fs::write(&path, &o.stdout).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn catalog_lists_every_fixture() {
    let o = hgx(&["catalog"]);
    assert_eq!(code(&o), 0);
    let names = stdout(&o);
    for n in ["ground", "lambda3", "free_u2", "resolution_lambda3", "normal_basis_lambda3"] {
        assert!(names.lines().any(|l| l == n), "{n}");
    }
    assert_eq!(code(&hgx(&["catalog", "nonesuch"])), 2);
}

#[test]
fn shipped_fixtures_verify_and_round_trip() {
    let dir = TempDir::new().unwrap();
    for name in ["lambda3", "lambda1_lambda3", "s2", "d", "unit_lambda1", "normal_basis_lambda3"] {
        let path = fixture(&dir, name, &["--window", "0:6"]);
        let o = hgx(&["verify", s(&path)]);
        assert_eq!(code(&o), 0, "{name}: {}", String::from_utf8_lossy(&o.stderr));
        let text = std::fs::read_to_string(&path).unwrap();
        let back = hgx_core::io::load_str(&text).unwrap();
        assert_eq!(hgx_core::io::save(&back), text, "{name}");
    }
    let o = hgx(&["verify", s(&fixture(&dir, "lambda3", &[]))]);
    assert_eq!(stdout(&o), "verified bialgebra (0:1 3:1)\n");
}

#[test]
fn a_broken_counit_fails_verification_by_name() {
    let dir = TempDir::new().unwrap();
    let path = fixture(&dir, "lambda3", &[]);
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    doc["maps"]["counit"][0]["out"][0][0] = Value::String("2".into());
    std::fs::write(&path, doc.to_string()).unwrap();
    let o = hgx(&["verify", s(&path), "--format", "structured"]);
    assert_eq!(code(&o), 1);
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["payload"]["verified"], false);
    assert!(report["payload"]["error"].as_str().unwrap().contains("counit"));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ \"schema_version\": 1,").unwrap();
    let o = hgx(&["verify", s(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error at"));
    let l3 = fixture(&dir, "lambda3", &[]);
    assert_eq!(code(&hgx(&["verify", s(&l3), "--field", "Fp:2"])), 2);
    assert_eq!(code(&hgx(&["check", "classical", s(&l3)])), 2);
    assert_eq!(code(&hgx(&["verify", s(&dir.path().join("missing.json"))])), 2);
}

#[test]
fn check_exit_codes_follow_the_verdict() {
    let dir = TempDir::new().unwrap();
    let w = ["--window", "0:6"];
    let cases = [
        ("classical", "unit_lambda1", 0),
        ("classical", "trivial_lambda1", 1),
        ("homotopic", "normal_basis_lambda3", 0),
        ("homotopic", "normal_basis_lambda3_open", 3),
        ("homotopic", "resolution_lambda3", 0),
        ("descent", "resolution_lambda3", 0),
        ("descent", "normal_basis_lambda3", 1),
        ("koszul", "normal_basis_lambda3", 0),
        ("koszul", "normal_basis_lambda3_open", 3),
        ("koszul", "normal_lambda1_lambda3", 1),
    ];
    for (kind, name, want) in cases {
        let path = fixture(&dir, name, &w);
        let o = hgx(&["check", kind, s(&path)]);
        assert_eq!(code(&o), want, "{kind} {name}: {}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn koszul_text_names_the_dual_coalgebra() {
    let dir = TempDir::new().unwrap();
    let path = fixture(&dir, "normal_basis_lambda3", &["--window", "0:6"]);
    let o = hgx(&["check", "koszul", s(&path), "--format", "structured"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let cof = &v["payload"]["attachments"][0];
    assert_eq!(cof["name"], "Cof(Γ)");
    let degrees: Vec<i64> = cof["basis"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|b| !b["labels"].as_array().unwrap().is_empty())
        .map(|b| b["degree"].as_i64().unwrap())
        .collect();
    assert_eq!(degrees, vec![0, 3]);
}

#[test]
fn reports_are_reproducible_and_digest_the_input() {
    let dir = TempDir::new().unwrap();
    let path = fixture(&dir, "resolution_lambda3", &["--window", "0:6"]);
    let (r1, r2) = (dir.path().join("r1.json"), dir.path().join("r2.json"));
    for r in [&r1, &r2] {
        assert_eq!(code(&hgx(&["check", "descent", s(&path), "--report", s(r)])), 0);
    }
    let (a, b) = (std::fs::read(&r1).unwrap(), std::fs::read(&r2).unwrap());
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["command"], "check descent");
    assert_eq!(v["input_digest"], hgx_core::io::digest(&std::fs::read(&path).unwrap()));
    assert_eq!(v["payload"]["outcome"], "pass");
}

#[test]
fn cobar_output_embeds_its_trusted_range() {
    let dir = TempDir::new().unwrap();
    let l3 = fixture(&dir, "lambda3", &[]);
    let o = hgx(&["cobar", s(&l3), "--window", "0:6"]);
    assert_eq!(code(&o), 0);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["trusted"], serde_json::json!([0, 5]));
    let c = dir.path().join("cobar.json");
    std::fs::write(&c, &o.stdout).unwrap();
    // Ω(Λ(x₃)) has the homology of a polynomial algebra on a class in degree 2.
    assert_eq!(stdout(&hgx(&["homology", s(&c)])), "H0 = 1, H1 = 0, H2 = 1, H3 = 0, H4 = 1, H5 = 0\n");
    // Outside the embedded trusted range.
    assert_eq!(code(&hgx(&["homology", s(&c), "--range", "0:6"])), 2);
    // The coalgebra is only known up to degree 8.
    assert_eq!(code(&hgx(&["cobar", s(&l3), "--window", "0:8"])), 2);
}

#[test]
fn cobar_with_a_regular_end_is_contractible() {
    let dir = TempDir::new().unwrap();
    let l3 = fixture(&dir, "lambda3", &[]);
    let o = hgx(&["cobar", s(&l3), "--right", "regular", "--window", "0:6", "--format", "structured"]);
    assert_eq!(code(&o), 0);
    let c = dir.path().join("c.json");
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    std::fs::write(&c, v["payload"]["object"].to_string()).unwrap();
    assert_eq!(stdout(&hgx(&["homology", s(&c)])), "H0 = 1, H1 = 0, H2 = 0, H3 = 0, H4 = 0, H5 = 0\n");
}

#[test]
fn bar_and_hco_produce_loadable_objects() {
    let dir = TempDir::new().unwrap();
    let u = fixture(&dir, "free_u2", &["--window", "0:6"]);
    let o = hgx(&["bar", s(&u)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let b = dir.path().join("bar.json");
    std::fs::write(&b, &o.stdout).unwrap();
    assert_eq!(code(&hgx(&["verify", s(&b)])), 0);
    // Bar of T(u₂) is the exterior coalgebra on a class in degree 3.
    assert_eq!(stdout(&hgx(&["homology", s(&b), "--range", "0:5"])), "H0 = 1, H1 = 0, H2 = 0, H3 = 1, H4 = 0, H5 = 0\n");

    let r = fixture(&dir, "resolution_lambda3", &["--window", "0:6"]);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&r).unwrap()).unwrap();
    let a = dir.path().join("a.json");
    std::fs::write(&a, v["parts"]["source"].to_string()).unwrap();
    let o = hgx(&["hco", s(&a)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let m = dir.path().join("hco.json");
    std::fs::write(&m, &o.stdout).unwrap();
    // Ω(Λ(x₃); Λ(x₃); R) is contractible.
    assert_eq!(stdout(&hgx(&["homology", s(&m), "--range", "0:4"])), "H0 = 1, H1 = 0, H2 = 0, H3 = 0, H4 = 0\n");
}

#[test]
fn coring_commands_report_dimensions() {
    let dir = TempDir::new().unwrap();
    let p = fixture(&dir, "trivial_lambda1", &["--window", "0:4"]);
    assert_eq!(stdout(&hgx(&["desc", s(&p)])), "B ⊗_A B: 0:1 1:2 2:1\n");
    assert_eq!(stdout(&hgx(&["hopf", s(&p)])), "B ⊗ Cof(Γ): 0:1 1:2 2:1\n");
    let o = hgx(&["galois", s(&p)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("deg 1: rank 1 of 2x2"));
    let o = hgx(&["cof", s(&p), "--format", "structured"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["payload"]["dims"], serde_json::json!([[0, 1], [1, 1]]));
}
