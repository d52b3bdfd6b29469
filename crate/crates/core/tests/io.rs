use hgx_core::chain::*;
use hgx_core::constructors::*;
use hgx_core::dg::*;
use hgx_core::io::*;
use hgx_core::linalg::Field;
use hgx_core::verdict::*;
use hgx_core::Error;
use serde_json::json;

const Q: Field = Field::Rationals;
const F2: Field = Field::Prime(2);

fn win(lo: i64, hi: i64) -> DegreeWindow {
    DegreeWindow::new(lo, hi).unwrap()
}

fn object(o: DGObject) -> Object {
    match o {
        DGObject::Complex(c) => Object::Complex { complex: c, trusted: None },
        DGObject::Algebra(a) => Object::Algebra(a),
        DGObject::Coalgebra(c) => Object::Coalgebra(c),
        DGObject::Bialgebra(h) => Object::Bialgebra(h),
    }
}

fn resolution(f: Field) -> ExtensionProblem {
    let h = exterior_hopf_named(f, &[("x", 3)], win(0, 7)).unwrap();
    resolution_problem(&ComodAlgebra::regular(&h), win(0, 6)).unwrap().1
}

#[test]
fn catalog_objects_round_trip_byte_for_byte() {
    for f in [Q, F2] {
        for (name, o) in catalog(f, win(0, 6)).unwrap() {
            let obj = object(o);
            let text = save(&obj);
            let back = load_str(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(save(&back), text, "{name}");
            assert_eq!(back.complex(), obj.complex(), "{name}");
        }
    }
}

#[test]
fn comodule_algebras_and_problems_round_trip() {
    for f in [Q, F2] {
        let h = exterior_hopf_named(f, &[("x", 1)], win(0, 5)).unwrap();
        let text = save(&Object::ComodAlgebra(ComodAlgebra::regular(&h)));
        assert_eq!(save(&load_str(&text).unwrap()), text);

        let p = resolution(f);
        let text = save(&Object::Extension(p.clone()));
        let Object::Extension(back) = load_str(&text).unwrap() else { panic!("wrong kind") };
        assert_eq!(save(&Object::Extension(back.clone())), text);
        assert_eq!(check_descent_hypotheses(&back).unwrap(), check_descent_hypotheses(&p).unwrap());
    }
}

#[test]
fn coring_witness_and_fibrant_flag_survive() {
    let x = exterior_hopf_named(Q, &[("x", 1)], win(0, 6)).unwrap();
    let m = normal_extension(&DGAlgebra::ground(Q, win(0, 6)), &BialgebraMap::unit(&x)).unwrap();
    let p = ExtensionProblem::new("normal", m, win(0, 6)).unwrap().with_fibrant().with_coring_filtration(CoringFiltration::Canonical);
    let Object::Extension(back) = load_str(&save(&Object::Extension(p.clone()))).unwrap() else { panic!() };
    assert!(back.fibrant);
    assert!(matches!(back.coring_filtration, CoringFiltration::Canonical));
    assert_eq!(back.name, "normal");
    assert_eq!(check_homotopic_hg(&back).unwrap(), check_homotopic_hg(&p).unwrap());
}

#[test]
fn rationals_are_strings_and_residues_are_integers() {
    let h = exterior_hopf_named(Q, &[("x", 1)], win(0, 3)).unwrap();
    let doc = to_document(&Object::Bialgebra(h));
    assert_eq!(doc.maps["counit"][0].output[0].0, Coef::Rational("1".into()));
    let h = exterior_hopf_named(F2, &[("x", 1)], win(0, 3)).unwrap();
    let doc = to_document(&Object::Bialgebra(h));
    assert_eq!(doc.maps["counit"][0].output[0].0, Coef::Residue(1));
    assert_eq!(doc.field, "Fp:2");
}

#[test]
fn a_non_counital_counit_is_rejected_by_name() {
    let h = exterior_hopf_named(Q, &[("x", 1)], win(0, 4)).unwrap();
    let mut doc = to_document(&Object::Bialgebra(h));
    doc.maps.get_mut("counit").unwrap()[0].output[0].0 = Coef::Rational("2".into());
    let err = load_str(&serde_json::to_string(&doc).unwrap()).unwrap_err();
    let Error::Axiom { axiom, .. } = err else { panic!("{err:?}") };
    assert!(axiom.contains("counit"), "{axiom}");
}

#[test]
fn empty_generators_give_the_ground_object() {
    for kind in ["algebra", "coalgebra", "bialgebra"] {
        let text = json!({"schema_version": 1, "kind": kind, "field": "Q", "window": [0, 4]}).to_string();
        let obj = load_str(&text).unwrap();
        assert_eq!(obj.complex(), Some(&ChainComplex::ground(Q, win(0, 4))));
    }
    // A complex with no generators is zero, not the ground field.
    let text = json!({"schema_version": 1, "kind": "complex", "field": "Q", "window": [0, 4]}).to_string();
    assert_eq!(load_str(&text).unwrap().complex().unwrap().space().total_dim(), 0);
}

#[test]
fn saved_cobar_output_embeds_its_trusted_range() {
    let h = exterior_hopf_named(Q, &[("x", 3)], win(0, 7)).unwrap();
    let (two, _) = resolution_problem(&ComodAlgebra::regular(&h), win(0, 6)).unwrap();
    let complex = two.cobar.complex.clone();
    let trusted = complex.window().trusted();
    let text = save(&Object::Complex { complex: complex.clone(), trusted: Some(trusted) });
    assert_eq!(to_document(&load_str(&text).unwrap()).trusted, Some([0, 5]));
    let Object::Complex { complex: back, .. } = load_str(&text).unwrap() else { panic!() };
    assert_eq!(back, complex);
}

#[test]
fn parse_errors_carry_positions() {
    let err = load_str("{\n  \"schema_version\": 1,\n  \"kind\": \n}").unwrap_err();
    let Error::Parse { position, .. } = err else { panic!("{err:?}") };
    assert_eq!(position, "4:1");

    let bad = json!({
        "schema_version": 1, "kind": "complex", "field": "Q", "window": [0, 2],
        "generators": [{"degree": 1, "labels": ["a"]}],
        "maps": {"d": [{"in": ["a"], "out": [["1", ["b"]]]}]}
    });
    let err = load_str(&bad.to_string()).unwrap_err();
    let Error::Parse { position, message } = err else { panic!("{err:?}") };
    assert_eq!(position, "maps.d[0].out");
    assert!(message.contains("\"b\""));

    let wrong_degree = json!({
        "schema_version": 1, "kind": "complex", "field": "Q", "window": [0, 2],
        "generators": [{"degree": 1, "labels": ["a"]}, {"degree": 1, "labels": ["b"]}],
        "maps": {"d": [{"in": ["a"], "out": [["1", ["b"]]]}]}
    });
    assert!(matches!(load_str(&wrong_degree.to_string()), Err(Error::Parse { .. })));
}

#[test]
fn d_squared_nonzero_is_an_axiom_error() {
    let doc = json!({
        "schema_version": 1, "kind": "complex", "field": "Q", "window": [0, 3],
        "generators": [{"degree": 0, "labels": ["a"]}, {"degree": 1, "labels": ["b"]}, {"degree": 2, "labels": ["c"]}],
        "maps": {"d": [{"in": ["b"], "out": [["1", ["a"]]]}, {"in": ["c"], "out": [["1", ["b"]]]}]}
    });
    assert!(load_str(&doc.to_string()).is_err());
}

#[test]
fn path_parts_resolve_and_cycles_are_caught() {
    let dir = std::env::temp_dir().join(format!("hgx-io-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let h = exterior_hopf_named(Q, &[("x", 1)], win(0, 4)).unwrap();
    std::fs::write(dir.join("h.json"), save(&Object::Bialgebra(h.clone()))).unwrap();
    let mut doc = to_document(&Object::ComodAlgebra(ComodAlgebra::regular(&h)));
    doc.parts.insert("h".into(), Part::Path("h.json".into()));
    std::fs::write(dir.join("a.json"), serde_json::to_string(&doc).unwrap()).unwrap();
    let Object::ComodAlgebra(a) = load_path(&dir.join("a.json")).unwrap() else { panic!() };
    assert_eq!(a.h.complex(), h.complex());

    doc.parts.insert("h".into(), Part::Path("a.json".into()));
    std::fs::write(dir.join("a.json"), serde_json::to_string(&doc).unwrap()).unwrap();
    let err = load_path(&dir.join("a.json")).unwrap_err();
    assert!(matches!(&err, Error::Parse { message, .. } if message.contains("cyclic")), "{err:?}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn mismatched_fields_are_rejected() {
    let h = exterior_hopf_named(F2, &[("x", 1)], win(0, 4)).unwrap();
    let mut doc = to_document(&Object::ComodAlgebra(ComodAlgebra::regular(&h)));
    doc.field = "Q".into();
    let err = load_str(&serde_json::to_string(&doc).unwrap()).unwrap_err();
    assert!(matches!(err, Error::Parse { ref position, .. } if position == "parts.h"), "{err:?}");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let run = || {
        let p = resolution(Q);
        let input = save(&Object::Extension(p.clone()));
        let v = check_descent_hypotheses(&p).unwrap();
        ReportDocument::new("check descent", input.as_bytes(), verdict_json(&v)).to_json()
    };
    let a = run();
    assert_eq!(a, run());
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["engine_version"], ENGINE_VERSION);
    assert_eq!(v["input_digest"].as_str().unwrap().len(), 64);
    assert_eq!(v["payload"]["outcome"], "pass");
}

#[test]
fn digest_matches_a_known_value() {
    assert_eq!(digest(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

#[test]
fn verdict_text_lists_every_line() {
    let v = check_descent_hypotheses(&resolution(F2)).unwrap();
    let t = verdict_text(&v);
    for l in &v.lines {
        assert!(t.contains(&l.name));
    }
    assert!(t.starts_with(&v.check));
}

#[test]
fn shipped_problems_round_trip() {
    for f in [Q, F2] {
        for (name, p) in problem_catalog(f, win(0, 5)).unwrap() {
            let text = save(&Object::Extension(p));
            let back = load_str(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(save(&back), text, "{name}");
        }
    }
}
