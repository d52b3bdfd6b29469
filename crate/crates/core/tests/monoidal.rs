use std::collections::BTreeMap;

use hgx_core::chain::*;
use hgx_core::dg::{acyclic_d, s2};
use hgx_core::linalg::{Field, SparseVec};
use hgx_core::monoidal::*;
use hgx_core::Error;
use proptest::prelude::*;

mod common;
use common::{piece, scrambled};

const Q: Field = Field::Rationals;

fn win(lo: i64, hi: i64) -> DegreeWindow {
    DegreeWindow::new(lo, hi).unwrap()
}

fn dims(x: &ChainComplex) -> Vec<usize> {
    x.window().degrees().map(|n| x.dim(n)).collect()
}

#[test]
fn unit_law() {
    let d = acyclic_d(Q, win(0, 3)).unwrap();
    let r = ChainComplex::ground(Q, win(0, 3));
    let t = tensor(&d, &r, win(0, 3)).unwrap();
    let f = ChainMap::from_fn(&t.complex, &d, 0, |n, i| SparseVec::unit(t.layout.key(n, i)[0].1, Q)).unwrap();
    assert!(f.is_isomorphism());
    assert_eq!(t.complex.label(1, 0), "a⊗1");
}

#[test]
fn d_tensor_d_is_acyclic() {
    let d = acyclic_d(Q, win(0, 3)).unwrap();
    let dd = tensor(&d, &d, win(0, 3)).unwrap();
    assert_eq!(dims(&dd.complex), vec![1, 2, 1, 0]);
    for n in dd.complex.window().trusted().degrees() {
        assert_eq!(homology(&dd.complex, n).unwrap().dim, 0);
    }
}

#[test]
fn s2_tensor_s2_dims() {
    let s = s2(Q, win(0, 4)).unwrap();
    let t = tensor(&s.complex, &s.complex, win(0, 4)).unwrap();
    assert_eq!(dims(&t.complex), vec![1, 0, 2, 0, 1]);
}

/// Zero-differential complex with one basis element in each of degrees 0..=2
/// and the degree-one shift `e_k ↦ e_{k+1}`.
fn shift_pair() -> (ChainComplex, ChainMap) {
    let sp = GradedSpace::from_labels(Q, win(0, 2), [("e0", 0), ("e1", 1), ("e2", 2)]).unwrap();
    let x = ChainComplex::zero_differential(sp);
    let f = ChainMap::from_fn(&x, &x, 1, |_, _| SparseVec::unit(0, Q)).unwrap();
    (x, f)
}

#[test]
fn interchange_sign_for_odd_maps() {
    let (x, f) = shift_pair();
    let id = ChainMap::identity(&x);
    let t = tensor(&x, &x, win(0, 4)).unwrap();
    let f1 = tensor_map(&[&f, &id], &t, &t).unwrap();
    let g1 = tensor_map(&[&id, &f], &t, &t).unwrap();
    let lhs = f1.compose(&g1).unwrap();
    let rhs = g1.compose(&f1).unwrap();
    assert!(!lhs.is_zero());
    let neg = ChainMap::zero(&t.complex, &t.complex, 2).sub(&rhs).unwrap();
    assert_eq!(lhs, neg);
    // e0⊗e0 ↦ e1⊗e1 one way and -(e1⊗e1) the other.
    let e11 = t.layout.index(&[(1, 0), (1, 0)]).unwrap();
    assert_eq!(lhs.image_of(0, 0), SparseVec::unit(e11.1, Q));
}

#[test]
fn identity_and_zero_tensor_maps() {
    let d = acyclic_d(Q, win(0, 3)).unwrap();
    let t = tensor(&d, &d, win(0, 3)).unwrap();
    let id = ChainMap::identity(&d);
    let z = ChainMap::zero(&d, &d, 0);
    assert_eq!(tensor_map(&[&id, &id], &t, &t).unwrap(), ChainMap::identity(&t.complex));
    assert!(tensor_map(&[&z, &id], &t, &t).unwrap().is_zero());
}

#[test]
fn symmetry_signs() {
    let sp = GradedSpace::from_labels(Q, win(0, 2), [("p", 0), ("x", 1)]).unwrap();
    let x = ChainComplex::zero_differential(sp);
    let t = tensor(&x, &x, win(0, 2)).unwrap();
    let s = symmetry(&t, &t).unwrap();
    let pp = t.layout.index(&[(0, 0), (0, 0)]).unwrap();
    let xx = t.layout.index(&[(1, 0), (1, 0)]).unwrap();
    assert_eq!(s.image_of(0, pp.1), SparseVec::unit(pp.1, Q));
    assert_eq!(s.image_of(2, xx.1), SparseVec::unit(xx.1, Q).scaled(&Q.int(-1)));
}

#[test]
fn symmetry_squares_to_identity_on_s2() {
    let s = s2(Q, win(0, 4)).unwrap();
    let t = tensor(&s.complex, &s.complex, win(0, 4)).unwrap();
    let sig = symmetry(&t, &t).unwrap();
    assert_eq!(sig.compose(&sig).unwrap(), ChainMap::identity(&t.complex));
}

#[test]
fn words() {
    let z = GradedSpace::zero(Q, win(1, 3));
    assert_eq!(tensor_algebra_trunc(&z, win(0, 3)).unwrap().space().total_dim(), 1);
    let one = GradedSpace::from_labels(Q, win(1, 1), [("v", 1)]).unwrap();
    let w = tensor_algebra_trunc(&one, win(0, 3)).unwrap();
    assert_eq!((0..=3).map(|n| w.space().dim(n)).collect::<Vec<_>>(), vec![1, 1, 1, 1]);
    let two = GradedSpace::from_labels(Q, win(1, 1), [("v", 1), ("w", 1)]).unwrap();
    let w = tensor_algebra_trunc(&two, win(0, 2)).unwrap();
    assert_eq!((0..=2).map(|n| w.space().dim(n)).collect::<Vec<_>>(), vec![1, 2, 4]);
    assert_eq!(w.space().labels(2), &["v|v", "v|w", "w|v", "w|w"]);
    let bad = GradedSpace::from_labels(Q, win(0, 1), [("v", 0)]).unwrap();
    assert!(matches!(tensor_algebra_trunc(&bad, win(0, 2)), Err(Error::NonConnected(_))));
}

#[test]
fn desuspension_shifts_down() {
    let sp = GradedSpace::from_labels(Q, win(0, 4), [("y", 2), ("z", 4)]).unwrap();
    let s = desuspend(&sp);
    assert_eq!(s.dim(1), 1);
    assert_eq!(s.dim(3), 1);
    assert_eq!(s.label(1, 0), "s⁻¹y");
}

fn kunneth(hx: &BTreeMap<i64, usize>, hy: &BTreeMap<i64, usize>, n: i64) -> usize {
    hx.iter().map(|(p, a)| a * hy.get(&(n - p)).copied().unwrap_or(0)).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn kunneth_holds(
        a in prop::collection::vec(piece(4), 0..5),
        b in prop::collection::vec(piece(4), 0..5),
        s1 in prop::collection::vec(-2i64..3, 1..6),
        s2 in prop::collection::vec(-2i64..3, 1..6),
    ) {
        let (x, _) = scrambled(&a, 4, &s1);
        let (y, _) = scrambled(&b, 4, &s2);
        let r = TrustedRange::new(0, 3);
        let hx = homology_dims(&x, r).unwrap();
        let hy = homology_dims(&y, r).unwrap();
        let t = tensor(&x, &y, win(0, 4)).unwrap();
        for n in r.degrees() {
            prop_assert_eq!(homology(&t.complex, n).unwrap().dim, kunneth(&hx, &hy, n));
        }
    }

    #[test]
    fn symmetry_is_an_involution(
        a in prop::collection::vec(piece(3), 0..4),
        b in prop::collection::vec(piece(3), 0..4),
    ) {
        let (x, _) = scrambled(&a, 3, &[1, -1]);
        let (y, _) = scrambled(&b, 3, &[2]);
        let w = win(0, 3);
        let xy = tensor(&x, &y, w).unwrap();
        let yx = tensor(&y, &x, w).unwrap();
        let s = symmetry(&xy, &yx).unwrap();
        let s2 = symmetry(&yx, &xy).unwrap();
        prop_assert_eq!(s2.compose(&s).unwrap(), ChainMap::identity(&xy.complex));
    }

    /// `(x⊗y)⊗z ≅ x⊗(y⊗z)` by label matching, and the hexagon
    /// `σ_{x,y⊗z} = (1⊗σ_{x,z})(σ_{x,y}⊗1)` after flattening.
    #[test]
    fn associativity_and_hexagon(
        a in prop::collection::vec(piece(3), 0..3),
        b in prop::collection::vec(piece(3), 0..3),
        c in prop::collection::vec(piece(3), 0..3),
    ) {
        let w = win(0, 3);
        let (x, _) = scrambled(&a, 3, &[1]);
        let (y, _) = scrambled(&b, 3, &[-1]);
        let (z, _) = scrambled(&c, 3, &[2]);
        let flat = |fs: &[&ChainComplex]| Tensor::new(&fs.iter().map(|f| (*f).clone()).collect::<Vec<_>>(), w).unwrap();
        let xy = tensor(&x, &y, w).unwrap();
        let yz = tensor(&y, &z, w).unwrap();
        let xy_z = tensor(&xy.complex, &z, w).unwrap();
        let x_yz = tensor(&x, &yz.complex, w).unwrap();
        prop_assert!(relabeling(&xy_z.complex, &x_yz.complex).is_ok());

        let xyz = flat(&[&x, &y, &z]);
        let yzx = flat(&[&y, &z, &x]);
        let yz_x = tensor(&yz.complex, &x, w).unwrap();
        let lhs = relabeling(&yz_x.complex, &yzx.complex).unwrap()
            .compose(&symmetry(&x_yz, &yz_x).unwrap()).unwrap()
            .compose(&relabeling(&xyz.complex, &x_yz.complex).unwrap()).unwrap();

        let yx = tensor(&y, &x, w).unwrap();
        let yx_z = tensor(&yx.complex, &z, w).unwrap();
        let step1 = tensor_map(&[&symmetry(&xy, &yx).unwrap(), &ChainMap::identity(&z)], &xy_z, &yx_z).unwrap();
        let xz = tensor(&x, &z, w).unwrap();
        let zx = tensor(&z, &x, w).unwrap();
        let y_xz = tensor(&y, &xz.complex, w).unwrap();
        let y_zx = tensor(&y, &zx.complex, w).unwrap();
        let step2 = tensor_map(&[&ChainMap::identity(&y), &symmetry(&xz, &zx).unwrap()], &y_xz, &y_zx).unwrap();
        let rhs = relabeling(&y_zx.complex, &yzx.complex).unwrap()
            .compose(&step2).unwrap()
            .compose(&relabeling(&yx_z.complex, &y_xz.complex).unwrap()).unwrap()
            .compose(&step1).unwrap()
            .compose(&relabeling(&xyz.complex, &xy_z.complex).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
