use hgx_core::chain::*;
use hgx_core::comodule::*;
use hgx_core::dg::{exterior_hopf, AlgebraMap, DGAlgebra};
use hgx_core::linalg::{Field, SparseVec};

const Q: Field = Field::Rationals;
const F2: Field = Field::Prime(2);

fn win(lo: i64, hi: i64) -> DegreeWindow {
    DegreeWindow::new(lo, hi).unwrap()
}

fn dims(x: &ChainComplex) -> Vec<usize> {
    x.window().degrees().map(|n| x.dim(n)).collect()
}

#[test]
fn coalgebra_is_a_coring_over_the_ground_field() {
    for f in [Q, F2] {
        let l = exterior_hopf(f, &[1], win(0, 3)).unwrap();
        let c = Coring::from_coalgebra(&l.coalg);
        assert!(c.over_ground());
        let rep = verify_coring(&c);
        assert!(rep.passed(), "{rep}");
    }
}

#[test]
fn trivial_coring_passes() {
    let l = exterior_hopf(Q, &[1, 3], win(0, 5)).unwrap();
    let c = Coring::trivial(&l.alg);
    let rep = verify_coring(&c);
    assert!(rep.passed(), "{rep}");
    assert_eq!(dims(c.cc.complex()), dims(&l.alg.complex));
}

#[test]
fn balanced_tensor_over_ground_is_plain_tensor() {
    let b = exterior_hopf(Q, &[1], win(0, 3)).unwrap();
    let eta = AlgebraMap::unit(&b.alg);
    let r = AModule::regular(&b.alg, Side::Right).restrict(&eta).unwrap();
    let l = AModule::regular(&b.alg, Side::Left).restrict(&eta).unwrap();
    let t = tensor_over(&r, &l).unwrap();
    assert_eq!(dims(t.complex()), vec![1, 2, 1, 0]);
}

#[test]
fn balanced_tensor_over_itself_collapses() {
    let b = exterior_hopf(Q, &[1], win(0, 3)).unwrap();
    let t = tensor_over(&AModule::regular(&b.alg, Side::Right), &AModule::regular(&b.alg, Side::Left)).unwrap();
    assert_eq!(dims(t.complex()), vec![1, 1, 0, 0]);
}

#[test]
fn tensor_over_rejects_wrong_sides() {
    let b = exterior_hopf(Q, &[1], win(0, 3)).unwrap();
    let l = AModule::regular(&b.alg, Side::Left);
    assert!(tensor_over(&l, &l).is_err());
}

#[test]
fn regular_comodule_and_its_coinvariants() {
    let b = exterior_hopf(Q, &[1], win(0, 3)).unwrap();
    let c = Coring::from_coalgebra(&b.coalg);
    let m = Comodule::regular(&c, Side::Right).unwrap();
    let rep = verify_comodule(&m);
    assert!(rep.passed(), "{rep}");
    let inv = coinvariants(&m).unwrap();
    assert_eq!(dims(&inv.complex), vec![1, 0, 0, 0]);
    let left = Comodule::regular(&c, Side::Left).unwrap();
    assert!(verify_comodule(&left).passed());
}

#[test]
fn cotensor_with_the_ground_field() {
    let b = exterior_hopf(Q, &[1], win(0, 3)).unwrap();
    let c = Coring::from_coalgebra(&b.coalg);
    let m = Comodule::regular(&c, Side::Right).unwrap();
    let r = DGAlgebra::ground(Q, win(0, 3));
    let q = Comodule::trivial(&c, &AModule::regular(&r, Side::Left)).unwrap();
    assert!(verify_comodule(&q).passed());
    let ct = cotensor_over(&m, &q).unwrap();
    assert_eq!(ct.complex().space().total_dim(), 1);
    assert_eq!(ct.complex().dim(0), 1);
}

#[test]
fn broken_counit_is_reported() {
    // x ↦ 1 ⊗ x: the right counit sends x to ε(x) = 0.
    let b = exterior_hopf(Q, &[1], win(0, 3)).unwrap();
    let c = Coring::from_coalgebra(&b.coalg);
    let t = tensor_over(&c.bimodule.right, &c.bimodule.left).unwrap();
    let g = c.coaugmentation.clone().unwrap();
    let m = Comodule::from_fn(&c, &c.bimodule.right, |x| t.class(0, &g, x.0, &SparseVec::unit(x.1, Q))).unwrap();
    let rep = verify_comodule(&m);
    assert!(rep.failed_axioms().contains(&"counit"), "{rep}");
}

/// The normal extension `Q → Λ(x₁)` on degrees `[0, 3]`.
fn normal() -> (DGAlgebra, hgx_core::dg::DGBialgebra, AlgebraMap) {
    let b = exterior_hopf(Q, &[1], win(0, 3)).unwrap();
    let phi = AlgebraMap::unit(&b.alg);
    (phi.source.clone(), b, phi)
}

#[test]
fn descent_coring_is_the_pushforward_of_the_trivial_coring() {
    let (a, _, phi) = normal();
    let pf = coring_pushforward(&phi, &Coring::trivial(&a)).unwrap();
    assert_eq!(dims(pf.coring.complex()), vec![1, 2, 1, 0]);
    let rep = verify_coring(&pf.coring);
    assert!(rep.passed(), "{rep}");
}

#[test]
fn pushforward_of_a_coalgebra() {
    let (_, b, phi) = normal();
    let pf = coring_pushforward(&phi, &Coring::from_coalgebra(&b.coalg)).unwrap();
    assert_eq!(pf.coring.complex().space().total_dim(), 8);
    let rep = verify_coring(&pf.coring);
    assert!(rep.passed(), "{rep}");
}

#[test]
fn pushforward_along_identity_keeps_dimensions() {
    let b = exterior_hopf(Q, &[1], win(0, 3)).unwrap();
    let c = Coring::from_coalgebra(&b.coalg);
    let pf = coring_pushforward(&AlgebraMap::identity(&c.base), &c).unwrap();
    assert_eq!(dims(pf.coring.complex()), dims(c.complex()));
    assert!(verify_coring(&pf.coring).passed());
}

#[test]
fn extension_and_restriction() {
    let (a, b, phi) = normal();
    let ext = extend_scalars(&phi, &AModule::regular(&a, Side::Right)).unwrap();
    assert_eq!(dims(&ext.module.complex), dims(&b.alg.complex));
    assert!(verify_module(&ext.module).passed());
    let bb = AModule::regular(&b.alg, Side::Right);
    let back = extend_scalars(&phi, &restrict_scalars(&phi, &bb).unwrap()).unwrap();
    assert_eq!(dims(back.tensor.complex()), vec![1, 2, 1, 0]);
    let rep = verify_adjunction(&phi, &AModule::regular(&a, Side::Right), &bb).unwrap();
    assert!(rep.passed(), "{rep}");
    let id = AlgebraMap::identity(&b.alg);
    let rep = verify_adjunction(&id, &bb, &bb).unwrap();
    assert!(rep.passed(), "{rep}");
    assert_eq!(dims(extend_scalars(&id, &bb).unwrap().tensor.complex()), dims(&b.alg.complex));
}

#[test]
fn identity_change_of_corings() {
    let b = exterior_hopf(Q, &[1], win(0, 3)).unwrap();
    let c = Coring::from_coalgebra(&b.coalg);
    let m = Comodule::regular(&c, Side::Right).unwrap();
    let id = CoringMap::identity(&c);
    assert!(verify_coring_map(&id).passed());
    let pushed = change_of_corings(&id, &m, CoringDirection::Push).unwrap();
    assert_eq!(pushed.coaction, m.coaction);
    let pb = pull_back(&id, &m).unwrap();
    assert_eq!(dims(pb.comodule.complex()), dims(m.complex()));
    assert!(verify_comodule(&pb.comodule).passed());
    let counit = pull_counit(&id, &pb, &m).unwrap();
    assert!(counit.is_isomorphism());
    let rep = verify_comodule_map(&push_forward(&id, &pb.comodule).unwrap(), &m, &counit);
    assert!(rep.passed(), "{rep}");
}

#[test]
fn pull_along_the_descent_counit() {
    let (a, b, phi) = normal();
    let desc = coring_pushforward(&phi, &Coring::trivial(&a)).unwrap().coring;
    let triv = Coring::trivial(&b.alg);
    let f = CoringMap::new(&desc, &triv, desc.eps.clone()).unwrap();
    let m = Comodule::regular(&triv, Side::Right).unwrap();
    let pb = pull_back(&f, &m).unwrap();
    assert_eq!(dims(pb.comodule.complex()), vec![1, 2, 1, 0]);
    assert!(verify_comodule(&pb.comodule).passed());
    let counit = pull_counit(&f, &pb, &m).unwrap();
    let rep = verify_comodule_map(&push_forward(&f, &pb.comodule).unwrap(), &m, &counit);
    assert!(rep.passed(), "{rep}");
    // At the target coring the counit is f itself, through C ≅ D □_D C.
    let iota = ChainMap::linear_from_fn(desc.complex(), pb.comodule.complex(), 0, |n, i| {
        let v = pb.cotensor.tensor.class(0, &b.alg.one(), n, &SparseVec::unit(i, Q));
        pb.cotensor.equalizer.coordinates(n, &v).unwrap()
    })
    .unwrap();
    assert_eq!(counit.compose(&iota).unwrap(), f.map);
}

#[test]
fn broken_coring_map_is_rejected() {
    let (a, b, phi) = normal();
    let desc = coring_pushforward(&phi, &Coring::trivial(&a)).unwrap().coring;
    let triv = Coring::trivial(&b.alg);
    let doubled = ChainMap::linear_from_fn(desc.complex(), triv.complex(), 0, |n, i| {
        desc.eps.image_of(n, i).scaled(&Q.int(2))
    })
    .unwrap();
    let f = CoringMap { source: desc, target: triv, map: doubled };
    assert!(verify_coring_map(&f).failed_axioms().contains(&"counital"));
}

#[test]
fn canonical_adjunction_on_the_normal_extension() {
    let (a, b, phi) = normal();
    let c = Coring::trivial(&a);
    let m = Comodule::regular(&c, Side::Right).unwrap();
    let cm = canonical_functors(&phi, &c, &m, Canonical::Can).unwrap();
    assert_eq!(dims(cm.complex()), dims(&b.alg.complex));
    let rep = verify_comodule(&cm);
    assert!(rep.passed(), "{rep}");
    let p = canonical_functors(&phi, &c, &cm, Canonical::Prim).unwrap();
    assert_eq!(dims(p.complex()), vec![1, 0, 0, 0]);
    assert!(verify_comodule(&p).passed());
    let (pb, unit) = can_prim_unit(&phi, &m).unwrap();
    assert!(unit.is_isomorphism());
    let rep = verify_comodule_map(&m, &pb.comodule, &unit);
    assert!(rep.passed(), "{rep}");
}

#[test]
fn canonical_adjunction_along_identity() {
    let b = exterior_hopf(Q, &[1], win(0, 3)).unwrap();
    let c = Coring::from_coalgebra(&b.coalg);
    let id = AlgebraMap::identity(&c.base);
    let m = Comodule::regular(&c, Side::Right).unwrap();
    let (pb, unit) = can_prim_unit(&id, &m).unwrap();
    assert!(unit.is_isomorphism());
    assert!(verify_comodule_map(&m, &pb.comodule, &unit).passed());
}

#[test]
fn cellular_filtrations() {
    let b = exterior_hopf(Q, &[1], win(0, 3)).unwrap();
    let a = AModule::regular(&b.alg, Side::Left);
    let w = FiltrationWitness::from_labels(&a, &[&["1"]]).unwrap();
    let rep = verify_cellular_filtration(&a, &w).unwrap();
    assert!(rep.passed(), "{rep}");

    let gens = GradedSpace::from_labels(Q, win(0, 3), [("g", 0), ("h", 2)]).unwrap();
    let free = AModule::free(&b.alg, &gens, Side::Left).unwrap();
    let w = FiltrationWitness::from_labels(&free, &[&["1⊗g"], &["1⊗h"]]).unwrap();
    let rep = verify_cellular_filtration(&free, &w).unwrap();
    assert!(rep.passed(), "{rep}");
    let short = FiltrationWitness::from_labels(&free, &[&["1⊗g"]]).unwrap();
    assert!(verify_cellular_filtration(&free, &short).unwrap().failed_axioms().contains(&"exhaustive"));

    // The ground field through the augmentation is not free over Λ(x₁).
    let r = ChainComplex::ground(Q, win(0, 3));
    let aug = AModule::from_fn(&b.alg, &r, Side::Left, |m, x| if x.0 == 0 { SparseVec::unit(m.1, Q) } else { SparseVec::new() }).unwrap();
    assert!(verify_module(&aug).passed());
    let w = FiltrationWitness::from_labels(&aug, &[&["1"]]).unwrap();
    let rep = verify_cellular_filtration(&aug, &w).unwrap();
    assert_eq!(rep.failed_axioms(), vec!["free quotient"]);
}

#[test]
fn filtration_witness_errors() {
    let b = exterior_hopf(Q, &[1], win(0, 3)).unwrap();
    let a = AModule::regular(&b.alg, Side::Left);
    assert!(FiltrationWitness::from_labels(&a, &[&["nope"]]).is_err());
    let bad = FiltrationWitness { stages: vec![vec![(7, SparseVec::unit(0, Q))]] };
    assert!(matches!(verify_cellular_filtration(&a, &bad), Err(hgx_core::Error::Witness(_))));
}

/// Unit isomorphisms, triangle identities and the trivial-coring round trip
/// on every catalog bialgebra.
#[test]
fn catalog_invariants() {
    use hgx_core::dg::{catalog, DGObject};
    for f in [Q, F2] {
        let w = win(0, 4);
        for (name, obj) in catalog(f, w).unwrap() {
            let DGObject::Bialgebra(h) = obj else {
                if let DGObject::Coalgebra(c) = obj {
                    let k = Coring::from_coalgebra(&c);
                    assert!(verify_coring(&k).passed(), "{name}");
                    assert!(verify_comodule(&Comodule::regular(&k, Side::Right).unwrap()).passed(), "{name}");
                }
                continue;
            };
            let d = dims(&h.alg.complex);
            let c = Coring::from_coalgebra(&h.coalg);
            let m = Comodule::regular(&c, Side::Right).unwrap();
            let l = Comodule::regular(&c, Side::Left).unwrap();
            assert!(verify_comodule(&m).passed(), "{name}");
            assert_eq!(dims(cotensor_over(&m, &l).unwrap().complex()), d, "{name}: M □ C");
            assert_eq!(dims(&coinvariants(&m).unwrap().complex), vec![1, 0, 0, 0, 0], "{name}");
            let ar = AModule::regular(&h.alg, Side::Right);
            let al = AModule::regular(&h.alg, Side::Left);
            assert_eq!(dims(tensor_over(&ar, &al).unwrap().complex()), d, "{name}: M ⊗_A A");
            let eta = AlgebraMap::unit(&h.alg);
            let r = AModule::regular(&eta.source, Side::Right);
            assert!(verify_adjunction(&eta, &r, &ar).unwrap().passed(), "{name}");
            let t = Coring::trivial(&h.alg);
            assert!(verify_coring(&t).passed(), "{name}");
            let tm = Comodule::trivial(&t, &ar).unwrap();
            assert!(verify_comodule(&tm).passed(), "{name}");
            assert_eq!(tm.module.action, ar.action, "{name}: trivial coring round trip");
            let pb = pull_back(&CoringMap::identity(&c), &m).unwrap();
            assert!(pull_counit(&CoringMap::identity(&c), &pb, &m).unwrap().is_isomorphism(), "{name}");
        }
    }
}
