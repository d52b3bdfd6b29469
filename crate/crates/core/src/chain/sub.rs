use std::collections::BTreeMap;

use super::complex::ChainComplex;
use super::map::ChainMap;
use super::space::GradedSpace;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Matrix, Quotient, SparseVec, Subspace};

/// A subcomplex presented by a reduced basis in each degree. Basis vectors are
/// labelled by the ambient label of their pivot coordinate.
#[derive(Clone, Debug)]
pub struct SubComplex {
    pub ambient: ChainComplex,
    pub complex: ChainComplex,
    subspaces: BTreeMap<i64, Subspace>,
}

impl SubComplex {
    /// Span of the given vectors; fails if the span is not closed under `d`.
    pub fn span(ambient: &ChainComplex, mut vectors: impl FnMut(i64) -> Vec<SparseVec>) -> Result<SubComplex> {
        let field = ambient.field();
        let w = ambient.window();
        let mut subspaces = BTreeMap::new();
        let mut basis = BTreeMap::new();
        for n in w.degrees() {
            let s = Subspace::span(field, ambient.dim(n), &vectors(n));
            let labels = s.rref.pivots.iter().map(|&p| ambient.label(n, p).to_string()).collect::<Vec<_>>();
            basis.insert(n, labels);
            subspaces.insert(n, s);
        }
        let space = GradedSpace::new(field, w, basis)?;
        let mut d = BTreeMap::new();
        for n in w.degrees() {
            let s = &subspaces[&n];
            let mut cols = Vec::new();
            for v in s.basis() {
                let dv = ambient.apply_d(n, v);
                let c = match subspaces.get(&(n - 1)) {
                    Some(t) => t.coordinates(&dv),
                    None => dv.is_zero().then(SparseVec::new),
                };
                match c {
                    Some(c) => cols.push(c),
                    None => return Err(Error::Construction(format!("subspace not closed under d in degree {n}"))),
                }
            }
            d.insert(n, Matrix::from_columns(field, space.dim(n - 1), cols)?);
        }
        let complex = ChainComplex::new(space, d)?;
        Ok(SubComplex { ambient: ambient.clone(), complex, subspaces })
    }

    /// Kernel of a degree-0 chain map.
    pub fn kernel(f: &ChainMap) -> Result<SubComplex> {
        let mut err = None;
        let sub = SubComplex::span(&f.source, |n| match kernel_basis(&f.block(n)) {
            Ok(k) => k,
            Err(e) => {
                err = Some(e);
                Vec::new()
            }
        })?;
        if let Some(e) = err {
            return Err(e.into());
        }
        Ok(sub)
    }

    pub fn subspace(&self, n: i64) -> Option<&Subspace> {
        self.subspaces.get(&n)
    }

    pub fn dim(&self, n: i64) -> usize {
        self.complex.dim(n)
    }

    /// Ambient vector of a subcomplex vector.
    pub fn include(&self, n: i64, coords: &SparseVec) -> SparseVec {
        match self.subspaces.get(&n) {
            Some(s) => s.inclusion().apply(coords),
            None => SparseVec::new(),
        }
    }

    pub fn coordinates(&self, n: i64, v: &SparseVec) -> Option<SparseVec> {
        match self.subspaces.get(&n) {
            Some(s) => s.coordinates(v),
            None => v.is_zero().then(SparseVec::new),
        }
    }

    pub fn inclusion(&self) -> ChainMap {
        let blocks = self.subspaces.iter().map(|(n, s)| (*n, s.inclusion())).collect();
        ChainMap::from_blocks(self.complex.clone(), self.ambient.clone(), 0, blocks).expect("inclusion shape")
    }

    /// Restriction of `f` (defined on the ambient complex) to this subcomplex,
    /// landing in `target` (a subcomplex of `f`'s target).
    pub fn restrict_map(&self, f: &ChainMap, target: &SubComplex) -> Result<ChainMap> {
        let mut blocks = BTreeMap::new();
        for n in self.complex.window().degrees() {
            let mut cols = Vec::new();
            for k in 0..self.dim(n) {
                let v = f.apply(n, &self.include(n, &SparseVec::unit(k, self.complex.field())));
                match target.coordinates(n, &v) {
                    Some(c) => cols.push(c),
                    None => return Err(Error::Construction(format!("map does not preserve subcomplex in degree {n}"))),
                }
            }
            blocks.insert(n, Matrix::from_columns(self.complex.field(), target.dim(n), cols)?);
        }
        ChainMap::from_blocks(self.complex.clone(), target.complex.clone(), 0, blocks)
    }
}

/// A quotient complex `ambient / relations`, modelled on the complement
/// coordinates of the relation span; labels are inherited from the ambient basis.
#[derive(Clone, Debug)]
pub struct QuotientComplex {
    pub ambient: ChainComplex,
    pub complex: ChainComplex,
    quotients: BTreeMap<i64, Quotient>,
}

impl QuotientComplex {
    /// Fails if the relation span is not closed under `d`.
    pub fn new(ambient: &ChainComplex, mut relations: impl FnMut(i64) -> Vec<SparseVec>) -> Result<QuotientComplex> {
        let field = ambient.field();
        let w = ambient.window();
        let mut quotients = BTreeMap::new();
        let mut basis = BTreeMap::new();
        for n in w.degrees() {
            let q = Quotient::new(field, ambient.dim(n), &relations(n));
            basis.insert(n, q.complement.iter().map(|&c| ambient.label(n, c).to_string()).collect::<Vec<_>>());
            quotients.insert(n, q);
        }
        for n in w.degrees() {
            if let Some(lower) = quotients.get(&(n - 1)) {
                for r in quotients[&n].relations.basis() {
                    if !lower.project(&ambient.apply_d(n, r)).is_zero() {
                        return Err(Error::Construction(format!("relations not closed under d in degree {n}")));
                    }
                }
            }
        }
        let space = GradedSpace::new(field, w, basis)?;
        let mut d = BTreeMap::new();
        for n in w.degrees() {
            let q = &quotients[&n];
            let cols = (0..q.dim())
                .map(|k| {
                    let dv = ambient.apply_d(n, &q.lift(k));
                    match quotients.get(&(n - 1)) {
                        Some(l) => l.project(&dv),
                        None => SparseVec::new(),
                    }
                })
                .collect();
            d.insert(n, Matrix::from_columns(field, space.dim(n - 1), cols)?);
        }
        let complex = ChainComplex::new(space, d)?;
        Ok(QuotientComplex { ambient: ambient.clone(), complex, quotients })
    }

    pub fn dim(&self, n: i64) -> usize {
        self.complex.dim(n)
    }

    pub fn project(&self, n: i64, v: &SparseVec) -> SparseVec {
        match self.quotients.get(&n) {
            Some(q) => q.project(v),
            None => SparseVec::new(),
        }
    }

    /// Representative in the ambient complex of a quotient vector.
    pub fn lift(&self, n: i64, v: &SparseVec) -> SparseVec {
        match self.quotients.get(&n) {
            Some(q) => q.lift_vec(v),
            None => SparseVec::new(),
        }
    }

    pub fn lift_basis(&self, n: i64, k: usize) -> SparseVec {
        self.quotients[&n].lift(k)
    }

    pub fn is_relation(&self, n: i64, v: &SparseVec) -> bool {
        self.project(n, v).is_zero()
    }

    pub fn quotient(&self, n: i64) -> Option<&Quotient> {
        self.quotients.get(&n)
    }

    pub fn projection(&self) -> ChainMap {
        let blocks = self.quotients.iter().map(|(n, q)| (*n, q.projection())).collect();
        ChainMap::from_blocks(self.ambient.clone(), self.complex.clone(), 0, blocks).expect("projection shape")
    }
}
