use std::collections::BTreeMap;

use hgx_core::chain::*;
use hgx_core::dg::acyclic_d;
use hgx_core::linalg::{Field, Matrix, SparseVec};
use hgx_core::Error;
use proptest::prelude::*;

mod common;
use common::{piece, scrambled, Piece};

const Q: Field = Field::Rationals;

fn win(lo: i64, hi: i64) -> DegreeWindow {
    DegreeWindow::new(lo, hi).unwrap()
}

#[test]
fn zero_differential_passes() {
    let sp = GradedSpace::from_labels(Q, win(0, 3), [("a", 2), ("b", 2), ("c", 2), ("e", 1)]).unwrap();
    let x = ChainComplex::zero_differential(sp);
    assert!(verify_complex(&x).passed());
    assert_eq!(homology(&x, 2).unwrap().dim, 3);
}

#[test]
fn d_is_acyclic() {
    for f in [Q, Field::Prime(2)] {
        let d = acyclic_d(f, win(-1, 2)).unwrap();
        assert!(verify_complex(&d).passed());
        for n in d.window().trusted().degrees() {
            assert_eq!(homology(&d, n).unwrap().dim, 0);
        }
    }
}

#[test]
fn square_nonzero_is_reported() {
    let sp = GradedSpace::from_labels(Q, win(0, 2), [("c", 2), ("a", 1), ("b", 0)]).unwrap();
    let mut d = BTreeMap::new();
    d.insert(1, Matrix::identity(Q, 1));
    d.insert(2, Matrix::identity(Q, 1));
    let x = ChainComplex::from_parts(sp.clone(), d.clone()).unwrap();
    let rep = verify_complex(&x);
    assert!(!rep.passed());
    assert_eq!(rep.failures[0].degree, Some(2));
    assert!(ChainComplex::new(sp, d).is_err());
}

#[test]
fn malformed_differential_is_a_shape_error() {
    let sp = GradedSpace::from_labels(Q, win(0, 1), [("a", 1), ("b", 0)]).unwrap();
    let mut d = BTreeMap::new();
    d.insert(1, Matrix::identity(Q, 2));
    assert!(matches!(ChainComplex::from_parts(sp, d), Err(Error::Shape(_))));
}

#[test]
fn homology_at_window_top_is_refused() {
    let d = acyclic_d(Q, win(0, 1)).unwrap();
    assert!(matches!(homology(&d, 1), Err(Error::Truncation { .. })));
}

#[test]
fn quasi_iso_examples() {
    let d = acyclic_d(Q, win(-1, 2)).unwrap();
    let r = d.window().trusted();
    assert!(is_quasi_iso(&ChainMap::identity(&d), r).unwrap().holds);
    assert!(is_quasi_iso(&ChainMap::zero(&d, &d, 0), r).unwrap().holds);
    let sp = GradedSpace::from_labels(Q, win(0, 2), [("a", 0)]).unwrap();
    let x = ChainComplex::zero_differential(sp);
    assert!(!is_quasi_iso(&ChainMap::zero(&x, &x, 0), x.window().trusted()).unwrap().holds);
}

#[test]
fn homotopy_examples() {
    let d = acyclic_d(Q, win(0, 1)).unwrap();
    let id = ChainMap::identity(&d);
    let zero1 = ChainMap::zero(&d, &d, 1);
    assert!(verify_chain_homotopy(&ChainHomotopy::new(id.clone(), id.clone(), zero1.clone()).unwrap()).passed());
    let z = ChainMap::zero(&d, &d, 0);
    assert!(!verify_chain_homotopy(&ChainHomotopy::new(id.clone(), z.clone(), zero1).unwrap()).passed());
    // b ↦ a contracts D.
    let h = ChainMap::linear_from_fn(&d, &d, 1, |n, _| if n == 0 { SparseVec::unit(0, Q) } else { SparseVec::new() })
        .unwrap();
    assert!(verify_chain_homotopy(&ChainHomotopy::new(id, z, h).unwrap()).passed());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn homology_counts_points(pieces in prop::collection::vec(piece(4), 0..7), seed in prop::collection::vec(-2i64..3, 1..8)) {
        let (x, points) = scrambled(&pieces, 4, &seed);
        prop_assert!(verify_complex(&x).passed());
        for n in x.window().trusted().degrees() {
            prop_assert_eq!(homology(&x, n).unwrap().dim, points.get(&n).copied().unwrap_or(0));
        }
    }

    #[test]
    fn euler_characteristic_is_quasi_iso_invariant(
        pieces in prop::collection::vec(piece(4), 0..7),
        seed in prop::collection::vec(-2i64..3, 1..8),
        extra in prop::collection::vec(1i64..=4, 0..3),
    ) {
        let (x, _) = scrambled(&pieces, 4, &seed);
        // x ⊕ (cones) with the inclusion of x.
        let mut bigger = pieces.clone();
        bigger.extend(extra.iter().map(|&k| Piece::Cone(k)));
        let (y, _) = scrambled(&bigger, 4, &[0]);
        let (x0, _) = scrambled(&pieces, 4, &[0]);
        let inc = ChainMap::from_fn(&x0, &y, 0, |n, i| {
            let l = x0.label(n, i);
            SparseVec::unit(y.space().index(n, l).unwrap(), Q)
        }).unwrap();
        let r = x.window().trusted();
        prop_assert!(is_quasi_iso(&inc, r).unwrap().holds);
        prop_assert_eq!(euler_characteristic(&x0, r).unwrap(), euler_characteristic(&y, r).unwrap());
        prop_assert_eq!(euler_characteristic(&x, r).unwrap(), euler_characteristic(&x0, r).unwrap());
    }

    /// Ladder of split sequences `X' → X' ⊕ X'' → X''` mapping into
    /// `Y' → Y' ⊕ Y'' → Y''` by inclusions that add cones: outer quasi-isos
    /// force a middle quasi-iso.
    #[test]
    fn homotopy_five(
        a in prop::collection::vec(piece(4), 0..5),
        b in prop::collection::vec(piece(4), 0..5),
        extra in prop::collection::vec(1i64..=4, 0..3),
    ) {
        let (x1, _) = scrambled(&a, 4, &[0]);
        let (x2, _) = scrambled(&b, 4, &[0]);
        let mut a_big = a.clone();
        a_big.extend(extra.iter().map(|&k| Piece::Cone(k)));
        let (y1, _) = scrambled(&a_big, 4, &[0]);
        let sum = |p: &ChainComplex, q: &ChainComplex| -> (ChainComplex, ChainMap, ChainMap, BTreeMap<i64, Matrix>) {
            let mut labels = Vec::new();
            for (n, ls) in p.space().basis() { labels.extend(ls.iter().map(|l| (format!("L{l}"), *n))); }
            for (n, ls) in q.space().basis() { labels.extend(ls.iter().map(|l| (format!("R{l}"), *n))); }
            let sp = GradedSpace::from_labels(Q, p.window(), labels).unwrap();
            let m = ChainComplex::from_fn(sp.clone(), |n, i| {
                let l = sp.label(n, i);
                let (src, pre) = if l.starts_with('L') { (p, "L") } else { (q, "R") };
                let name = &l[1..];
                let j = src.space().index(n, name).unwrap();
                let img = src.apply_d(n, &SparseVec::unit(j, Q));
                let mut out = SparseVec::new();
                for (k, c) in img.iter() {
                    out.add_at(sp.index(n - 1, &format!("{pre}{}", src.label(n - 1, k))).unwrap(), c);
                }
                out
            }).unwrap();
            let i = ChainMap::from_fn(p, &m, 0, |n, k| SparseVec::unit(sp.index(n, &format!("L{}", p.label(n, k))).unwrap(), Q)).unwrap();
            let pr = ChainMap::from_fn(&m, q, 0, |n, k| match sp.label(n, k).strip_prefix('R') {
                Some(name) => SparseVec::unit(q.space().index(n, name).unwrap(), Q),
                None => SparseVec::new(),
            }).unwrap();
            let s = m.window().degrees().map(|n| {
                let cols = (0..q.dim(n)).map(|k| SparseVec::unit(sp.index(n, &format!("R{}", q.label(n, k))).unwrap(), Q)).collect();
                (n, Matrix::from_columns(Q, m.dim(n), cols).unwrap())
            }).collect();
            (m, i, pr, s)
        };
        let (mx, ix, px, sx) = sum(&x1, &x2);
        let (my, iy, py, sy) = sum(&y1, &x2);
        prop_assert!(verify_split_ses(&ix, &px, &sx).passed());
        prop_assert!(verify_split_ses(&iy, &py, &sy).passed());
        let f1 = ChainMap::from_fn(&x1, &y1, 0, |n, i| SparseVec::unit(y1.space().index(n, x1.label(n, i)).unwrap(), Q)).unwrap();
        let f2 = ChainMap::identity(&x2);
        let fm = ChainMap::from_fn(&mx, &my, 0, |n, i| SparseVec::unit(my.space().index(n, mx.label(n, i)).unwrap(), Q)).unwrap();
        // The ladder commutes.
        prop_assert_eq!(fm.compose(&ix).unwrap(), iy.compose(&f1).unwrap());
        prop_assert_eq!(py.compose(&fm).unwrap(), f2.compose(&px).unwrap());
        let r = mx.window().trusted();
        prop_assert!(is_quasi_iso(&f1, r).unwrap().holds && is_quasi_iso(&f2, r).unwrap().holds);
        prop_assert!(is_quasi_iso(&fm, r).unwrap().holds);
    }
}

#[test]
fn split_ses_rejects_non_surjection() {
    let sp = GradedSpace::from_labels(Q, win(0, 1), [("a", 0)]).unwrap();
    let x = ChainComplex::zero_differential(sp);
    let z = ChainComplex::zero_differential(GradedSpace::zero(Q, win(0, 1)));
    let i = ChainMap::zero(&z, &x, 0);
    let p = ChainMap::zero(&x, &x, 0);
    let s: BTreeMap<i64, Matrix> = [(0, Matrix::identity(Q, 1)), (1, Matrix::zero(Q, 0, 0))].into_iter().collect();
    let rep = verify_split_ses(&i, &p, &s);
    assert!(rep.failed_axioms().contains(&"p surjective"));
}
