use std::fmt;

use super::elim::{rref, Rref};
use super::scalar::{Field, Scalar};
use super::vector::SparseVec;
use super::LinalgError;

/// Sparse matrix stored by columns. Column `j` is the image of the `j`-th source
/// basis vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: Vec<SparseVec>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols.len(), self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols.len()).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols: vec![SparseVec::new(); cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        Matrix { field, rows: n, cols: (0..n).map(|i| SparseVec::unit(i, field)).collect() }
    }

    /// Builds a matrix from `(row, col, value)` triples; repeated positions add up.
    pub fn from_entries(
        field: Field,
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Matrix, LinalgError> {
        let mut m = Matrix::zero(field, rows, cols);
        for (r, c, x) in entries {
            if r >= rows || c >= cols {
                return Err(LinalgError::Shape(format!("entry ({r},{c}) outside {rows}x{cols}")));
            }
            if x.field() != field {
                return Err(LinalgError::FieldMismatch(field, x.field()));
            }
            m.cols[c].add_at(r, &x);
        }
        Ok(m)
    }

    pub fn from_columns(field: Field, rows: usize, cols: Vec<SparseVec>) -> Result<Matrix, LinalgError> {
        for (c, v) in cols.iter().enumerate() {
            for (r, x) in v.iter() {
                if r >= rows {
                    return Err(LinalgError::Shape(format!("column {c} has row {r} >= {rows}")));
                }
                if x.field() != field {
                    return Err(LinalgError::FieldMismatch(field, x.field()));
                }
            }
        }
        Ok(Matrix { field, rows, cols })
    }

    pub fn from_dense(field: Field, data: &[Vec<Scalar>]) -> Result<Matrix, LinalgError> {
        let rows = data.len();
        let cols = data.first().map(|r| r.len()).unwrap_or(0);
        let mut entries = Vec::new();
        for (r, row) in data.iter().enumerate() {
            if row.len() != cols {
                return Err(LinalgError::Shape("ragged rows".into()));
            }
            for (c, x) in row.iter().enumerate() {
                entries.push((r, c, x.clone()));
            }
        }
        Matrix::from_entries(field, rows, cols, entries)
    }

    pub fn from_ints(field: Field, data: &[&[i64]]) -> Matrix {
        let dense: Vec<Vec<Scalar>> = data.iter().map(|r| r.iter().map(|&x| field.int(x)).collect()).collect();
        if dense.is_empty() {
            return Matrix::zero(field, 0, 0);
        }
        Matrix::from_dense(field, &dense).expect("rectangular integer data")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, c: usize) -> &SparseVec {
        &self.cols[c]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.cols[c].get(r).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        assert!(r < self.rows && c < self.cols.len());
        self.cols[c].set(r, x);
    }

    /// All nonzero entries as `(row, col, value)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.cols.iter().enumerate().flat_map(|(c, v)| v.iter().map(move |(r, x)| (r, c, x)))
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.nnz()).sum()
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (c, x) in v.iter() {
            out.axpy(x, &self.cols[c]);
        }
        out
    }

    /// `self * other`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols() != other.rows {
            return Err(LinalgError::Shape(format!(
                "product {}x{} * {}x{}",
                self.rows,
                self.cols(),
                other.rows,
                other.cols()
            )));
        }
        self.same_field(other)?;
        Ok(Matrix { field: self.field, rows: self.rows, cols: other.cols.iter().map(|v| self.apply(v)).collect() })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_shape(other)?;
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_shape(other)?;
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { field: self.field, rows: self.rows, cols: self.cols.iter().map(|v| v.scaled(c)).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.field, self.cols(), self.rows);
        for (r, c, x) in self.entries() {
            out.cols[r].set(c, x.clone());
        }
        out
    }

    /// Rows of the matrix as sparse vectors indexed by column.
    pub fn row_vectors(&self) -> Vec<SparseVec> {
        self.transpose().cols
    }

    fn same_field(&self, other: &Matrix) -> Result<(), LinalgError> {
        if self.field != other.field {
            Err(LinalgError::FieldMismatch(self.field, other.field))
        } else {
            Ok(())
        }
    }

    fn same_shape(&self, other: &Matrix) -> Result<(), LinalgError> {
        self.same_field(other)?;
        if self.rows != other.rows || self.cols() != other.cols() {
            return Err(LinalgError::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows,
                self.cols(),
                other.rows,
                other.cols()
            )));
        }
        Ok(())
    }

    fn check_field(&self) -> Result<(), LinalgError> {
        for (_, _, x) in self.entries() {
            if x.field() != self.field {
                return Err(LinalgError::FieldMismatch(self.field, x.field()));
            }
        }
        Ok(())
    }

    /// Reduced row echelon form of the rows of the matrix.
    pub fn rref(&self) -> Result<Rref, LinalgError> {
        self.check_field()?;
        Ok(rref(self.field, self.cols(), &self.row_vectors()))
    }

    /// Two-sided inverse of a square invertible matrix.
    pub fn inverse(&self) -> Result<Option<Matrix>, LinalgError> {
        if self.rows != self.cols() {
            return Ok(None);
        }
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for i in 0..n {
            match solve(self, &SparseVec::unit(i, self.field))? {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(Matrix { field: self.field, rows: n, cols }))
    }
}

/// Rank of `m` as a linear map.
pub fn rank(m: &Matrix) -> Result<usize, LinalgError> {
    Ok(m.rref()?.rank())
}

/// Basis of the kernel: one vector per free column, with a 1 in that column.
pub fn kernel_basis(m: &Matrix) -> Result<Vec<SparseVec>, LinalgError> {
    let r = m.rref()?;
    let field = m.field;
    let mut out = Vec::new();
    for f in 0..m.cols() {
        if r.is_pivot(f) {
            continue;
        }
        let mut v = SparseVec::unit(f, field);
        for (row, &p) in r.rows.iter().zip(&r.pivots) {
            if let Some(x) = row.get(f) {
                v.set(p, x.neg());
            }
        }
        out.push(v);
    }
    Ok(out)
}

/// Some `x` with `m x = b`, or `None` when `b` is outside the image.
pub fn solve(m: &Matrix, b: &SparseVec) -> Result<Option<SparseVec>, LinalgError> {
    m.check_field()?;
    for (i, x) in b.iter() {
        if i >= m.rows {
            return Err(LinalgError::Shape(format!("right-hand side index {i} >= {}", m.rows)));
        }
        if x.field() != m.field {
            return Err(LinalgError::FieldMismatch(m.field, x.field()));
        }
    }
    let n = m.cols();
    let mut rows = m.row_vectors();
    rows.resize(m.rows, SparseVec::new());
    for (i, x) in b.iter() {
        rows[i].set(n, x.clone());
    }
    let r = rref(m.field, n + 1, &rows);
    if r.is_pivot(n) {
        return Ok(None);
    }
    let mut x = SparseVec::new();
    for (row, &p) in r.rows.iter().zip(&r.pivots) {
        if let Some(c) = row.get(n) {
            x.set(p, c.clone());
        }
    }
    Ok(Some(x))
}

/// A subspace of `F^n` presented by its reduced row basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub rref: Rref,
}

impl Subspace {
    pub fn span(field: Field, ambient: usize, vectors: &[SparseVec]) -> Subspace {
        Subspace { rref: rref(field, ambient, vectors) }
    }

    pub fn dim(&self) -> usize {
        self.rref.rank()
    }

    pub fn ambient(&self) -> usize {
        self.rref.ncols
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.rref.rows
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.rref.contains(v)
    }

    /// Coordinates in `basis()`; `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        self.rref.coordinates(v).map(|c| SparseVec::from_dense(&c))
    }

    /// Matrix whose columns are the basis vectors.
    pub fn inclusion(&self) -> Matrix {
        Matrix { field: self.rref.field, rows: self.ambient(), cols: self.rref.rows.clone() }
    }
}

/// The quotient `F^n / S` modelled on the standard vectors of the non-pivot
/// coordinates of `S`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub relations: Subspace,
    /// Ambient coordinates whose unit vectors project to the quotient basis.
    pub complement: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl Quotient {
    pub fn new(field: Field, ambient: usize, relations: &[SparseVec]) -> Quotient {
        let relations = Subspace::span(field, ambient, relations);
        let complement: Vec<usize> = (0..ambient).filter(|c| !relations.rref.is_pivot(*c)).collect();
        let mut position = vec![None; ambient];
        for (k, &c) in complement.iter().enumerate() {
            position[c] = Some(k);
        }
        Quotient { relations, complement, position }
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn ambient(&self) -> usize {
        self.relations.ambient()
    }

    pub fn project(&self, v: &SparseVec) -> SparseVec {
        let r = self.relations.rref.reduce(v);
        SparseVec::from_pairs(r.iter().map(|(i, x)| (self.position[i].expect("reduced vector"), x.clone())))
    }

    /// The ambient unit vector representing quotient basis element `k`.
    pub fn lift(&self, k: usize) -> SparseVec {
        SparseVec::unit(self.complement[k], self.relations.rref.field)
    }

    pub fn lift_vec(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_pairs(v.iter().map(|(k, x)| (self.complement[k], x.clone())))
    }

    pub fn projection(&self) -> Matrix {
        let field = self.relations.rref.field;
        let cols = (0..self.ambient()).map(|c| self.project(&SparseVec::unit(c, field))).collect();
        Matrix { field, rows: self.dim(), cols }
    }
}
