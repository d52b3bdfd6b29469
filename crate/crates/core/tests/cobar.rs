use hgx_core::chain::*;
use hgx_core::cobar::*;
use hgx_core::comodule::Side;
use hgx_core::constructors::*;
use hgx_core::dg::*;
use hgx_core::linalg::{Field, SparseVec};
use hgx_core::Error;
use proptest::prelude::*;

const Q: Field = Field::Rationals;
const F2: Field = Field::Prime(2);

fn win(lo: i64, hi: i64) -> DegreeWindow {
    DegreeWindow::new(lo, hi).unwrap()
}

fn dims(x: &ChainComplex) -> Vec<usize> {
    x.window().degrees().map(|n| x.dim(n)).collect()
}

fn hdims(x: &CobarComplex) -> Vec<usize> {
    homology_dims(&x.complex, x.range).unwrap().into_values().collect()
}

fn two_sided(c: &DGCoalgebra, w: DegreeWindow) -> CobarComplex {
    let r = Coaction::ground(c, Side::Right).unwrap();
    let l = Coaction::ground(c, Side::Left).unwrap();
    cobar(&r, c, &l, w).unwrap()
}

#[test]
fn loop_space_of_s2_has_one_cell_per_degree() {
    for f in [Q, F2] {
        let c = s2(f, win(0, 7)).unwrap();
        let x = two_sided(&c, win(0, 6));
        assert_eq!(dims(&x.complex), vec![1; 7]);
        assert_eq!(hdims(&x), vec![1; 6]);
        assert_eq!(x.complex.label(3, 0), "1⊗[y|y|y]⊗1");
    }
}

#[test]
fn cobar_of_odd_exterior_is_polynomial() {
    for f in [Q, F2] {
        let h = exterior_hopf(f, &[3], win(0, 7)).unwrap();
        let x = two_sided(&h.coalg, win(0, 6));
        assert_eq!(dims(&x.complex), vec![1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(hdims(&x), vec![1, 0, 1, 0, 1, 0]);
    }
}

#[test]
fn one_sided_cobar_is_contractible() {
    for f in [Q, F2] {
        let h = exterior_hopf(f, &[3], win(0, 7)).unwrap();
        let r = Coaction::ground(&h.coalg, Side::Right).unwrap();
        let l = Coaction::regular(&h.coalg, Side::Left);
        let x = cobar(&r, &h.coalg, &l, win(0, 6)).unwrap();
        assert_eq!(hdims(&x), vec![1, 0, 0, 0, 0, 0]);
        let s = s2(f, win(0, 7)).unwrap();
        let l = Coaction::regular(&s, Side::Left);
        let r = Coaction::ground(&s, Side::Right).unwrap();
        let x = cobar(&r, &s, &l, win(0, 6)).unwrap();
        assert_eq!(hdims(&x), vec![1, 0, 0, 0, 0, 0]);
    }
}

#[test]
fn gates() {
    let h = exterior_hopf(Q, &[1], win(0, 7)).unwrap();
    let r = Coaction::ground(&h.coalg, Side::Right).unwrap();
    let l = Coaction::ground(&h.coalg, Side::Left).unwrap();
    assert!(matches!(cobar(&r, &h.coalg, &l, win(0, 6)), Err(Error::NonSimplyConnected(_))));
    let c = s2(Q, win(0, 5)).unwrap();
    let r = Coaction::ground(&c, Side::Right).unwrap();
    let l = Coaction::ground(&c, Side::Left).unwrap();
    assert!(matches!(cobar(&r, &c, &l, win(0, 6)), Err(Error::WindowTooSmall(_))));
}

// T(u₂) with u primitive is dual to divided powers: Ext is exterior on a
// degree-1 class over Q and polynomial on classes in degrees 1, 3, 7 over F₂.
#[test]
fn cobar_of_shuffle_coalgebra() {
    let h = free_u2(Q, win(0, 7)).unwrap();
    assert_eq!(hdims(&two_sided(&h.coalg, win(0, 6))), vec![1, 1, 0, 0, 0, 0]);
    let h = free_u2(F2, win(0, 7)).unwrap();
    assert_eq!(hdims(&two_sided(&h.coalg, win(0, 6))), vec![1, 1, 1, 2, 2, 2]);
}

fn check_resolution(m: &Coaction, c: &DGCoalgebra, w: DegreeWindow) -> CobarResolution {
    let res = cobar_resolution(m, c, w).unwrap();
    let reduced = cobar(m, c, &Coaction::ground(c, Side::Left).unwrap(), w).unwrap();
    let rep = verify_resolution(&res, &reduced).unwrap();
    assert!(rep.passed(), "{rep:?}");
    let ev = is_quasi_iso(&res.rho_tilde, w.trusted()).unwrap();
    assert!(ev.holds, "{ev:?}");
    res
}

#[test]
fn contraction_of_the_cofree_resolution() {
    for f in [Q, F2] {
        let w = win(0, 6);
        let s = s2(f, win(0, 7)).unwrap();
        check_resolution(&Coaction::ground(&s, Side::Right).unwrap(), &s, w);
        let h = exterior_hopf(f, &[3], win(0, 7)).unwrap();
        check_resolution(&Coaction::ground(&h.coalg, Side::Right).unwrap(), &h.coalg, w);
        check_resolution(&Coaction::regular(&h.coalg, Side::Right), &h.coalg, w);
        let u = free_u2(f, win(0, 7)).unwrap();
        check_resolution(&Coaction::regular(&u.coalg, Side::Right), &u.coalg, w);
    }
}

#[test]
fn zero_homotopy_is_rejected() {
    let s = s2(Q, win(0, 7)).unwrap();
    let res = check_resolution(&Coaction::ground(&s, Side::Right).unwrap(), &s, win(0, 6));
    let c = &res.contraction;
    let zero = ChainMap::zero(&c.h.source, &c.h.target, 1);
    let bad = ChainHomotopy::new(c.f.clone(), c.g.clone(), zero).unwrap();
    assert!(!verify_chain_homotopy(&bad).passed());
    let neg = ChainMap::zero(&c.h.source, &c.h.target, 1).sub(&c.h).unwrap();
    let bad = ChainHomotopy::new(c.f.clone(), c.g.clone(), neg).unwrap();
    assert!(!verify_chain_homotopy(&bad).passed());
    assert!(res.contraction.h.block(1).nnz() > 0);
}

fn alg_shapes(h: &DGBialgebra, ca: &ComodAlgebra, w: DegreeWindow) {
    for v in [CobarVariant::Left, CobarVariant::Right, CobarVariant::TwoSided] {
        let x = cobar_multiplication(ca, h, v, w).unwrap();
        assert!(verify_algebra(&x.algebra).passed());
        if v == CobarVariant::TwoSided {
            x.rho_tilde().unwrap();
            x.q().unwrap();
            x.two_sided_comodule().unwrap();
        }
    }
}

#[test]
fn cobar_algebras_are_associative() {
    for f in [Q, F2] {
        let w = win(0, 6);
        for h in [
            exterior_hopf(f, &[3], win(0, 7)).unwrap(),
            exterior_hopf(f, &[3, 3], win(0, 7)).unwrap(),
            free_u2(f, win(0, 7)).unwrap(),
        ] {
            alg_shapes(&h, &ComodAlgebra::regular(&h), w);
            let g = DGAlgebra::ground(f, win(0, 7));
            alg_shapes(&h, &ComodAlgebra::trivial(&g, &h).unwrap(), w);
            let e = exterior_hopf(f, &[3], win(0, 7)).unwrap().alg;
            alg_shapes(&h, &ComodAlgebra::free(&e, &h).unwrap(), w);
        }
    }
}

#[test]
fn generator_rule_on_the_odd_exterior() {
    let h = exterior_hopf(Q, &[3], win(0, 7)).unwrap();
    let x = cobar_multiplication(&ComodAlgebra::regular(&h), &h, CobarVariant::Left, win(0, 6)).unwrap();
    let o = &x.cobar;
    let cell = |label: &str| {
        let c = o.complex.space().find(label).unwrap();
        (c, SparseVec::unit(c.1, Q))
    };
    let (l, lv) = cell("1⊗[x]⊗1");
    let (a, av) = cell("x⊗[]⊗1");
    let (p, pv) = cell("x⊗[x]⊗1");
    assert_eq!(p.0, l.0 + a.0);
    assert_eq!(x.algebra.mul(l.0, &lv, a.0, &av), pv);
    assert_eq!(x.algebra.mul(a.0, &av, l.0, &lv), pv);
    let (_, ll) = cell("1⊗[x|x]⊗1");
    assert_eq!(x.algebra.mul(2, &lv, 2, &lv), ll);
}

#[test]
fn homotopy_coinvariant_models() {
    for f in [Q, F2] {
        let h = exterior_hopf(f, &[3], win(0, 7)).unwrap();
        let g = DGAlgebra::ground(f, win(0, 7));
        let m = hco(&ComodAlgebra::trivial(&g, &h).unwrap(), &h, win(0, 6)).unwrap();
        assert_eq!(dims(&m.cobar.complex), vec![1, 0, 1, 0, 1, 0, 1]);
        let k = DGBialgebra::ground(f, win(0, 7));
        let a = h.alg.clone();
        let m = hco(&ComodAlgebra::trivial(&a, &k).unwrap(), &k, win(0, 6)).unwrap();
        assert_eq!(dims(&m.cobar.complex), dims(&a.complex)[..7].to_vec());
        for c in a.complex.space().elements() {
            for d in a.complex.space().elements() {
                if c.0 + d.0 <= 6 {
                    assert_eq!(m.algebra.mul_cells(c, d), a.mul_cells(c, d));
                }
            }
        }
        let two = cobar_multiplication(&ComodAlgebra::trivial(&g, &h).unwrap(), &h, CobarVariant::TwoSided, win(0, 6)).unwrap();
        assert_eq!(hdims(&two.cobar), vec![1, 0, 0, 0, 0, 0]);
    }
}

#[test]
fn bar_of_polynomial_on_u2() {
    for f in [Q, F2] {
        let u = free_u2(f, win(0, 7)).unwrap();
        let b = bar(&u.alg, win(0, 7)).unwrap();
        let hd: Vec<usize> = homology_dims(b.complex(), b.range).unwrap().into_values().collect();
        assert_eq!(hd, vec![1, 0, 0, 1, 0, 0, 0]);
        assert_eq!(b.complex().label(6, 0), "[u|u]");
        let g = bar(&DGAlgebra::ground(f, win(0, 7)), win(0, 7)).unwrap();
        assert_eq!(dims(g.complex()), vec![1, 0, 0, 0, 0, 0, 0, 0]);
    }
}

#[test]
fn cobar_bar_counit_is_a_quasi_isomorphism() {
    for f in [Q, F2] {
        for h in [
            exterior_hopf(f, &[3], win(0, 7)).unwrap(),
            exterior_hopf(f, &[3, 3], win(0, 7)).unwrap(),
            free_u2(f, win(0, 7)).unwrap(),
        ] {
            let c = cobar_bar_counit(&h).unwrap();
            let rep = verify_counit(&c, &h);
            assert!(rep.passed(), "{rep:?}");
            let ev = is_quasi_iso(&c.map, win(0, 7).trusted()).unwrap();
            assert!(ev.holds, "{ev:?}");
        }
    }
}

#[test]
fn word_filtration_and_freeness() {
    for f in [Q, F2] {
        let w = win(0, 6);
        for h in [exterior_hopf(f, &[3], win(0, 7)).unwrap(), free_u2(f, win(0, 7)).unwrap()] {
            let wit = primitive_filtration(&h.coalg).unwrap();
            assert!(wit.stages.len() >= 2);
            let g = DGAlgebra::ground(f, win(0, 7));
            for ca in [ComodAlgebra::regular(&h), ComodAlgebra::trivial(&g, &h).unwrap()] {
                let two = cobar_multiplication(&ca, &h, CobarVariant::TwoSided, w).unwrap();
                let rep = verify_cobar_filtration(&two, &wit).unwrap();
                assert!(rep.passed(), "{rep:?}");
                assert!(verify_a_free(&two).unwrap().passed());
            }
        }
    }
}

fn catalog_bialgebra(f: Field, k: usize, hi: i64) -> DGBialgebra {
    match k {
        0 => exterior_hopf(f, &[3], win(0, hi)).unwrap(),
        1 => exterior_hopf(f, &[3, 3], win(0, hi)).unwrap(),
        2 => free_u2(f, win(0, hi)).unwrap(),
        _ => DGBialgebra::ground(f, win(0, hi)),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn resolution_identities_hold(p in prop::sample::select(vec![2u64, 3, 5, 0]), k in 0usize..4, hi in 3i64..7) {
        let f = if p == 0 { Q } else { Field::prime(p).unwrap() };
        let h = catalog_bialgebra(f, k, hi + 1);
        let w = win(0, hi);
        for m in [Coaction::regular(&h.coalg, Side::Right), Coaction::ground(&h.coalg, Side::Right).unwrap()] {
            let res = cobar_resolution(&m, &h.coalg, w).unwrap();
            let reduced = cobar(&m, &h.coalg, &Coaction::ground(&h.coalg, Side::Left).unwrap(), w).unwrap();
            prop_assert!(verify_resolution(&res, &reduced).unwrap().passed());
        }
        let two = cobar_multiplication(&ComodAlgebra::regular(&h), &h, CobarVariant::TwoSided, w).unwrap();
        prop_assert!(verify_a_free(&two).unwrap().passed());
    }
}

#[test]
fn hco_maps_for_supported_gammas() {
    for f in [Q, F2] {
        let w = win(0, 6);
        let h = exterior_hopf(f, &[3], win(0, 7)).unwrap();
        let k = DGBialgebra::ground(f, win(0, 7));
        let eta = BialgebraMap::unit(&h);
        let src = ComodAlgebra::trivial(&k.alg, &k).unwrap();
        let tgt = ComodAlgebra::regular(&h);
        let m = ComodAlgMorphism::new(&eta, &src, &tgt, &AlgebraMap::unit(&h.alg)).unwrap();
        let hm = hco_map(&m, w).unwrap();
        assert!(is_quasi_iso(&hm.map.map, w.trusted()).unwrap().holds);

        let id = BialgebraMap::identity(&h);
        let m = ComodAlgMorphism::new(&id, &tgt, &tgt, &AlgebraMap::identity(&h.alg)).unwrap();
        let hm = hco_map(&m, w).unwrap();
        assert_eq!(hm.map.map, ChainMap::identity(&hm.source.cobar.complex));
        let again = hco_map_with(&m, hm.map.map.clone(), w).unwrap();
        assert!(again.map.map.is_isomorphism());

        let y = exterior_hopf_named(f, &[("y", 5)], win(0, 7)).unwrap();
        let gamma = first_factor_inclusion(&h, &y).unwrap();
        let big = ComodAlgebra::regular(&gamma.target);
        let m = ComodAlgMorphism::new(&gamma, &tgt, &big, &gamma.algebra_map()).unwrap();
        assert!(matches!(hco_map(&m, w), Err(Error::UnsupportedGamma(_))));
    }
}
