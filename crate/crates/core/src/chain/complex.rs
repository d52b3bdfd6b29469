use std::collections::BTreeMap;
use std::sync::Arc;

use super::space::{DegreeWindow, GradedSpace};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, SparseVec};
use crate::report::CheckReport;

#[derive(Debug, PartialEq, Eq)]
struct ComplexData {
    space: GradedSpace,
    d: BTreeMap<i64, Matrix>,
}

/// A graded space with a degree -1 differential. `d(n)` maps degree `n` to degree
/// `n - 1`; maps leaving the window are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex(Arc<ComplexData>);

impl ChainComplex {
    /// Shape-checked construction; missing degrees get the zero differential.
    /// Square-zero is not checked here, see [`verify_complex`].
    pub fn from_parts(space: GradedSpace, mut d: BTreeMap<i64, Matrix>) -> Result<ChainComplex> {
        let field = space.field();
        for n in d.keys() {
            if !space.window().contains(*n) {
                return Err(Error::Shape(format!("differential in degree {n} outside window")));
            }
        }
        for n in space.window().degrees() {
            let m = d.entry(n).or_insert_with(|| Matrix::zero(field, space.dim(n - 1), space.dim(n)));
            if m.rows() != space.dim(n - 1) || m.cols() != space.dim(n) {
                return Err(Error::Shape(format!(
                    "d_{n} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    space.dim(n - 1),
                    space.dim(n)
                )));
            }
            if m.field() != field {
                return Err(Error::Linalg(crate::linalg::LinalgError::FieldMismatch(field, m.field())));
            }
        }
        Ok(ChainComplex(Arc::new(ComplexData { space, d })))
    }

    /// As [`from_parts`](Self::from_parts) but rejects `d^2 != 0`.
    pub fn new(space: GradedSpace, d: BTreeMap<i64, Matrix>) -> Result<ChainComplex> {
        let x = ChainComplex::from_parts(space, d)?;
        verify_complex(&x).into_result()?;
        Ok(x)
    }

    /// Differential built from the images of basis elements.
    pub fn from_fn(space: GradedSpace, mut image: impl FnMut(i64, usize) -> SparseVec) -> Result<ChainComplex> {
        let mut d = BTreeMap::new();
        for n in space.window().degrees() {
            let cols = (0..space.dim(n)).map(|i| image(n, i)).collect();
            d.insert(n, Matrix::from_columns(space.field(), space.dim(n - 1), cols)?);
        }
        ChainComplex::new(space, d)
    }

    pub fn zero_differential(space: GradedSpace) -> ChainComplex {
        ChainComplex::from_parts(space, BTreeMap::new()).expect("zero differential has valid shape")
    }

    pub fn ground(field: Field, window: DegreeWindow) -> ChainComplex {
        ChainComplex::zero_differential(GradedSpace::ground(field, window))
    }

    pub fn space(&self) -> &GradedSpace {
        &self.0.space
    }

    pub fn field(&self) -> Field {
        self.0.space.field()
    }

    pub fn window(&self) -> DegreeWindow {
        self.0.space.window()
    }

    pub fn dim(&self, n: i64) -> usize {
        self.0.space.dim(n)
    }

    /// `d_n`; the zero `0 x dim` matrix outside the window.
    pub fn d(&self, n: i64) -> Matrix {
        match self.0.d.get(&n) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.field(), self.dim(n - 1), self.dim(n)),
        }
    }

    pub fn d_ref(&self, n: i64) -> Option<&Matrix> {
        self.0.d.get(&n)
    }

    pub fn apply_d(&self, n: i64, v: &SparseVec) -> SparseVec {
        match self.0.d.get(&n) {
            Some(m) => m.apply(v),
            None => SparseVec::new(),
        }
    }

    pub fn has_zero_differential(&self) -> bool {
        self.0.d.values().all(|m| m.is_zero())
    }

    pub fn label(&self, n: i64, i: usize) -> &str {
        self.0.space.label(n, i)
    }

    /// Same complex viewed in a smaller window.
    pub fn restrict(&self, window: DegreeWindow) -> ChainComplex {
        let space = self.space().restrict(window);
        let d = self.0.d.iter().filter(|(n, _)| window.contains(**n)).map(|(n, m)| (*n, m.clone())).collect();
        let mut d: BTreeMap<i64, Matrix> = d;
        if let Some(m) = d.get_mut(&window.lo) {
            *m = Matrix::zero(self.field(), 0, m.cols());
        }
        ChainComplex::from_parts(space, d).expect("restriction of a valid complex")
    }
}

/// Checks `d_{n-1} d_n = 0` in every degree, naming the offending basis elements.
pub fn verify_complex(x: &ChainComplex) -> CheckReport {
    let mut rep = CheckReport::new("complex");
    rep.checked("d^2 = 0");
    for n in x.window().degrees() {
        if !x.window().contains(n - 1) {
            continue;
        }
        let dd = x.d(n - 1).mul(&x.d(n)).expect("composable differentials");
        for (r, c, v) in dd.entries() {
            rep.fail(
                "d^2 = 0",
                Some(n),
                vec![x.label(n, c).to_string(), x.label(n - 2, r).to_string()],
                format!("coefficient {v}"),
            );
        }
    }
    rep
}
