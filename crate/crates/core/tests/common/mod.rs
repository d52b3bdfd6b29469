//! Random complexes with known homology, shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use hgx_core::chain::{ChainComplex, DegreeWindow, GradedSpace};
use hgx_core::linalg::{Field, Matrix};
use proptest::prelude::*;

const Q: Field = Field::Rationals;

fn win(lo: i64, hi: i64) -> DegreeWindow {
    DegreeWindow::new(lo, hi).unwrap()
}

/// `R` in degree `k` or a cone `a → b` on degrees `k, k-1`.
#[derive(Clone, Copy, Debug)]
pub enum Piece {
    Point(i64),
    Cone(i64),
}

/// Direct sum of pieces with every degree's basis scrambled by a unipotent
/// matrix built from `seed`. Returns the complex and how many points each
/// degree holds.
pub fn scrambled(pieces: &[Piece], top: i64, seed: &[i64]) -> (ChainComplex, BTreeMap<i64, usize>) {
    let mut labels: Vec<(String, i64)> = Vec::new();
    let mut arrows = Vec::new();
    let mut points = BTreeMap::new();
    for (j, p) in pieces.iter().enumerate() {
        match *p {
            Piece::Point(k) => {
                labels.push((format!("p{j}"), k));
                *points.entry(k).or_insert(0) += 1;
            }
            Piece::Cone(k) => {
                labels.push((format!("a{j}"), k));
                labels.push((format!("b{j}"), k - 1));
                arrows.push((format!("a{j}"), format!("b{j}")));
            }
        }
    }
    let w = win(0, top);
    let sp = GradedSpace::from_labels(Q, w, labels).unwrap();
    let mut raw: BTreeMap<i64, Matrix> = BTreeMap::new();
    for n in w.degrees() {
        raw.insert(n, Matrix::zero(Q, sp.dim(n - 1), sp.dim(n)));
    }
    for (a, b) in &arrows {
        let (n, i) = sp.find(a).unwrap();
        let (_, j) = sp.find(b).unwrap();
        raw.get_mut(&n).unwrap().set(j, i, Q.one());
    }
    let mut s = seed.iter().cycle();
    let basis_change: BTreeMap<i64, Matrix> = (w.lo - 1..=w.hi)
        .map(|n| {
            let k = sp.dim(n);
            let mut m = Matrix::identity(Q, k);
            for r in 0..k {
                for c in r + 1..k {
                    m.set(r, c, Q.int(*s.next().unwrap()));
                }
            }
            (n, m)
        })
        .collect();
    let d = raw
        .into_iter()
        .map(|(n, m)| {
            let p = &basis_change[&(n - 1)];
            let pinv = basis_change[&n].inverse().unwrap().unwrap();
            (n, p.mul(&m).unwrap().mul(&pinv).unwrap())
        })
        .collect();
    (ChainComplex::new(sp, d).unwrap(), points)
}

pub fn piece(top: i64) -> impl Strategy<Value = Piece> {
    prop_oneof![(0..=top).prop_map(Piece::Point), (1..=top).prop_map(Piece::Cone)]
}

