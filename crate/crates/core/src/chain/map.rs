use std::collections::BTreeMap;

use super::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseVec};
use crate::report::CheckReport;

/// A graded map of some degree between complexes. Block `n` sends source degree
/// `n` to target degree `n + degree`. Chain maps of degree `k` satisfy
/// `d f = (-1)^k f d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub degree: i64,
    blocks: BTreeMap<i64, Matrix>,
}

impl ChainMap {
    /// Shape-checked construction; missing blocks are zero. The chain-map identity
    /// is not checked, see [`ChainMap::verify`].
    pub fn from_blocks(
        source: ChainComplex,
        target: ChainComplex,
        degree: i64,
        mut blocks: BTreeMap<i64, Matrix>,
    ) -> Result<ChainMap> {
        let field = source.field();
        if target.field() != field {
            return Err(Error::Linalg(crate::linalg::LinalgError::FieldMismatch(field, target.field())));
        }
        for n in blocks.keys() {
            if !source.window().contains(*n) {
                return Err(Error::Shape(format!("map block in degree {n} outside source window")));
            }
        }
        for n in source.window().degrees() {
            let rows = target.dim(n + degree);
            let m = blocks.entry(n).or_insert_with(|| Matrix::zero(field, rows, source.dim(n)));
            if m.rows() != rows || m.cols() != source.dim(n) {
                return Err(Error::Shape(format!(
                    "map block {n} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    rows,
                    source.dim(n)
                )));
            }
        }
        Ok(ChainMap { source, target, degree, blocks })
    }

    /// Builds from images of basis elements, then verifies the chain-map identity.
    pub fn from_fn(
        source: &ChainComplex,
        target: &ChainComplex,
        degree: i64,
        image: impl FnMut(i64, usize) -> SparseVec,
    ) -> Result<ChainMap> {
        let f = ChainMap::linear_from_fn(source, target, degree, image)?;
        f.verify().into_result()?;
        Ok(f)
    }

    /// Builds from images of basis elements without checking commutation with `d`.
    pub fn linear_from_fn(
        source: &ChainComplex,
        target: &ChainComplex,
        degree: i64,
        mut image: impl FnMut(i64, usize) -> SparseVec,
    ) -> Result<ChainMap> {
        let mut blocks = BTreeMap::new();
        for n in source.window().degrees() {
            let rows = target.dim(n + degree);
            let cols: Vec<SparseVec> = (0..source.dim(n))
                .map(|i| if rows == 0 { SparseVec::new() } else { image(n, i) })
                .collect();
            blocks.insert(n, Matrix::from_columns(source.field(), rows, cols)?);
        }
        ChainMap::from_blocks(source.clone(), target.clone(), degree, blocks)
    }

    pub fn identity(x: &ChainComplex) -> ChainMap {
        let blocks = x.window().degrees().map(|n| (n, Matrix::identity(x.field(), x.dim(n)))).collect();
        ChainMap::from_blocks(x.clone(), x.clone(), 0, blocks).expect("identity has valid shape")
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex, degree: i64) -> ChainMap {
        ChainMap::from_blocks(source.clone(), target.clone(), degree, BTreeMap::new()).expect("zero map shape")
    }

    pub fn block(&self, n: i64) -> Matrix {
        match self.blocks.get(&n) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.source.field(), self.target.dim(n + self.degree), self.source.dim(n)),
        }
    }

    pub fn block_ref(&self, n: i64) -> Option<&Matrix> {
        self.blocks.get(&n)
    }

    pub fn blocks(&self) -> &BTreeMap<i64, Matrix> {
        &self.blocks
    }

    /// Image of a vector in source degree `n`.
    pub fn apply(&self, n: i64, v: &SparseVec) -> SparseVec {
        match self.blocks.get(&n) {
            Some(m) => m.apply(v),
            None => SparseVec::new(),
        }
    }

    pub fn image_of(&self, n: i64, i: usize) -> SparseVec {
        match self.blocks.get(&n) {
            Some(m) => m.column(i).clone(),
            None => SparseVec::new(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ChainMap) -> Result<ChainMap> {
        if !other.target.space().same_shape(self.source.space()) {
            return Err(Error::Shape("composition of maps with mismatched middle".into()));
        }
        let mut blocks = BTreeMap::new();
        for n in other.source.window().degrees() {
            let mid = n + other.degree;
            let a = other.block(n);
            let b = if self.source.window().contains(mid) {
                self.block(mid)
            } else {
                Matrix::zero(self.source.field(), self.target.dim(mid + self.degree), a.rows())
            };
            blocks.insert(n, b.mul(&a)?);
        }
        ChainMap::from_blocks(other.source.clone(), self.target.clone(), self.degree + other.degree, blocks)
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        self.combine(other, |a, b| a.sub(b))
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        self.combine(other, |a, b| a.add(b))
    }

    fn combine(
        &self,
        other: &ChainMap,
        op: impl Fn(&Matrix, &Matrix) -> std::result::Result<Matrix, crate::linalg::LinalgError>,
    ) -> Result<ChainMap> {
        if self.degree != other.degree
            || !self.source.space().same_shape(other.source.space())
            || !self.target.space().same_shape(other.target.space())
        {
            return Err(Error::Shape("maps with different shapes".into()));
        }
        let mut blocks = BTreeMap::new();
        for n in self.source.window().degrees() {
            blocks.insert(n, op(&self.block(n), &other.block(n))?);
        }
        ChainMap::from_blocks(self.source.clone(), self.target.clone(), self.degree, blocks)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|m| m.is_zero())
    }

    /// Checks `d f = (-1)^degree f d` on every source degree whose image stays in
    /// the target window.
    pub fn verify(&self) -> CheckReport {
        let mut rep = CheckReport::new("chain map");
        rep.checked("chain map");
        let field = self.source.field();
        let sign = field.sign(self.degree);
        for n in self.source.window().degrees() {
            let t = n + self.degree;
            if !self.target.window().contains(t) || !self.target.window().contains(t - 1) {
                continue;
            }
            let lhs = self.target.d(t).mul(&self.block(n)).expect("shapes");
            let rhs = if self.source.window().contains(n - 1) {
                self.block(n - 1).mul(&self.source.d(n)).expect("shapes").scale(&sign)
            } else {
                Matrix::zero(field, lhs.rows(), lhs.cols())
            };
            let diff = lhs.sub(&rhs).expect("shapes");
            if let Some((r, c, v)) = diff.entries().next() {
                rep.fail(
                    "chain map",
                    Some(n),
                    vec![self.source.label(n, c).to_string(), self.target.label(t - 1, r).to_string()],
                    format!("d f - f d has coefficient {v}"),
                );
            };
        }
        rep
    }

    /// Whether every block is invertible.
    pub fn is_isomorphism(&self) -> bool {
        self.degree == 0
            && self.source.window().degrees().all(|n| {
                let m = self.block(n);
                m.rows() == m.cols() && crate::linalg::rank(&m).map(|r| r == m.cols()).unwrap_or(false)
            })
    }
}

/// Data `h` for a chain homotopy between `f` and `g`; block `n` maps source degree
/// `n` to target degree `n + 1`.
#[derive(Clone, Debug)]
pub struct ChainHomotopy {
    pub f: ChainMap,
    pub g: ChainMap,
    pub h: ChainMap,
}

impl ChainHomotopy {
    pub fn new(f: ChainMap, g: ChainMap, h: ChainMap) -> Result<ChainHomotopy> {
        if h.degree != f.degree + 1 || f.degree != g.degree {
            return Err(Error::Shape("homotopy must raise degree by one".into()));
        }
        Ok(ChainHomotopy { f, g, h })
    }
}

/// Checks `d h + h d = f - g` in every source degree where `h` lands inside the
/// target window (the top degree of a truncated target is unverifiable and noted).
pub fn verify_chain_homotopy(hom: &ChainHomotopy) -> CheckReport {
    let mut rep = CheckReport::new("chain homotopy");
    rep.checked("dh + hd = f - g");
    let h = &hom.h;
    let src = &h.source;
    let tgt = &h.target;
    let field = src.field();
    let diff = match hom.f.sub(&hom.g) {
        Ok(d) => d,
        Err(e) => {
            rep.fail("dh + hd = f - g", None, vec![], e.to_string());
            return rep;
        }
    };
    for n in src.window().degrees() {
        let t = n + hom.f.degree;
        if !tgt.window().contains(t + 1) {
            rep.note(format!("degree {n} not checked: homotopy leaves the target window"));
            continue;
        }
        let dh = tgt.d(t + 1).mul(&h.block(n)).expect("shapes");
        let hd = if src.window().contains(n - 1) {
            h.block(n - 1).mul(&src.d(n)).expect("shapes")
        } else {
            Matrix::zero(field, dh.rows(), dh.cols())
        };
        let lhs = dh.add(&hd).expect("shapes");
        let bad = lhs.sub(&diff.block(n)).expect("shapes");
        if let Some((r, c, v)) = bad.entries().next() {
            rep.fail(
                "dh + hd = f - g",
                Some(n),
                vec![src.label(n, c).to_string(), tgt.label(t, r).to_string()],
                format!("defect coefficient {v}"),
            );
        };
    }
    rep
}
