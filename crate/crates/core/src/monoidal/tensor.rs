use std::collections::{BTreeMap, HashMap};

use crate::chain::{ChainComplex, ChainMap, DegreeWindow, GradedSpace};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar, SparseVec};

/// A basis element of one factor: `(degree, index)`.
pub type Cell = (i64, usize);

/// Basis layout of a flat tensor product `X_1 ⊗ ⋯ ⊗ X_k` cut to a window.
///
/// Basis elements in each degree are ordered lexicographically by
/// `(deg_1, idx_1, deg_2, idx_2, …)`; labels join factor labels with `⊗`.
#[derive(Clone, Debug)]
pub struct TensorSpace {
    factors: Vec<GradedSpace>,
    space: GradedSpace,
    keys: BTreeMap<i64, Vec<Vec<Cell>>>,
    index: HashMap<Vec<Cell>, Cell>,
}

impl TensorSpace {
    pub fn new(factors: &[GradedSpace], window: DegreeWindow) -> Result<TensorSpace> {
        let field = factors.first().map(|f| f.field()).unwrap_or(Field::Rationals);
        for f in factors {
            if f.field() != field {
                return Err(Error::Linalg(crate::linalg::LinalgError::FieldMismatch(field, f.field())));
            }
        }
        let mut keys: BTreeMap<i64, Vec<Vec<Cell>>> = BTreeMap::new();
        let mut partial: Vec<(i64, Vec<Cell>)> = vec![(0, Vec::new())];
        for f in factors {
            let mut next = Vec::new();
            for (deg, key) in &partial {
                for (d, i) in f.elements() {
                    let mut k = key.clone();
                    k.push((d, i));
                    next.push((deg + d, k));
                }
            }
            partial = next;
        }
        for (deg, key) in partial {
            if window.contains(deg) {
                keys.entry(deg).or_default().push(key);
            }
        }
        let mut basis = BTreeMap::new();
        let mut index = HashMap::new();
        for (deg, ks) in keys.iter_mut() {
            ks.sort();
            let labels: Vec<String> = ks
                .iter()
                .map(|k| k.iter().zip(factors).map(|(&(d, i), f)| f.label(d, i)).collect::<Vec<_>>().join("⊗"))
                .collect();
            for (i, k) in ks.iter().enumerate() {
                index.insert(k.clone(), (*deg, i));
            }
            basis.insert(*deg, labels);
        }
        let space = GradedSpace::new(field, window, basis)?;
        Ok(TensorSpace { factors: factors.to_vec(), space, keys, index })
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn factors(&self) -> &[GradedSpace] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn field(&self) -> Field {
        self.space.field()
    }

    pub fn dim(&self, n: i64) -> usize {
        self.space.dim(n)
    }

    /// Factor cells of basis element `i` in degree `n`.
    pub fn key(&self, n: i64, i: usize) -> &[Cell] {
        &self.keys[&n][i]
    }

    /// `None` when the product falls outside the window.
    pub fn index(&self, key: &[Cell]) -> Option<Cell> {
        self.index.get(key).copied()
    }

    /// `v_1 ⊗ ⋯ ⊗ v_k` for homogeneous vectors, without any sign.
    pub fn pure(&self, parts: &[(i64, &SparseVec)]) -> (i64, SparseVec) {
        let n: i64 = parts.iter().map(|p| p.0).sum();
        let mut out = SparseVec::new();
        if self.dim(n) == 0 {
            return (n, out);
        }
        let field = self.field();
        let mut acc: Vec<(Vec<Cell>, Scalar)> = vec![(Vec::new(), field.one())];
        for (d, v) in parts {
            let mut next = Vec::new();
            for (k, c) in &acc {
                for (i, x) in v.iter() {
                    let mut k2 = k.clone();
                    k2.push((*d, i));
                    next.push((k2, c.mul(x)));
                }
            }
            acc = next;
        }
        for (k, c) in acc {
            if let Some((_, i)) = self.index(&k) {
                out.add_at(i, &c);
            }
        }
        (n, out)
    }

    /// Basis vector for a key; zero if outside the window.
    pub fn unit(&self, key: &[Cell]) -> (i64, SparseVec) {
        let n = key.iter().map(|c| c.0).sum();
        match self.index(key) {
            Some((_, i)) => (n, SparseVec::unit(i, self.field())),
            None => (n, SparseVec::new()),
        }
    }

    /// Decomposes a vector in degree `n` into `(coefficient, factor cells)` terms.
    pub fn terms<'a>(&'a self, n: i64, v: &'a SparseVec) -> impl Iterator<Item = (&'a Scalar, &'a [Cell])> + 'a {
        v.iter().map(move |(i, c)| (c, self.key(n, i)))
    }
}

/// A homogeneous linear map on one factor: its degree and the image of each
/// basis cell (in the target factor's degree `d + degree`).
pub struct Factor<'a> {
    pub degree: i64,
    pub image: &'a dyn Fn(i64, usize) -> SparseVec,
}

/// `(f_1 ⊗ ⋯ ⊗ f_k)(v)` with the Koszul sign `(-1)^{Σ_{i<j} |f_j||a_i|}`.
pub fn apply_factorwise(src: &TensorSpace, tgt: &TensorSpace, n: i64, v: &SparseVec, maps: &[Factor<'_>]) -> SparseVec {
    let field = src.field();
    let mut out = SparseVec::new();
    for (c, key) in src.terms(n, v) {
        let mut e = 0i64;
        for j in 0..key.len() {
            for a in &key[..j] {
                e += maps[j].degree * a.0;
            }
        }
        let images: Vec<SparseVec> = key.iter().zip(maps).map(|(&(d, i), m)| (m.image)(d, i)).collect();
        if images.iter().any(|x| x.is_zero()) {
            continue;
        }
        let parts: Vec<(i64, &SparseVec)> =
            key.iter().zip(maps).zip(&images).map(|((&(d, _), m), x)| (d + m.degree, x)).collect();
        let (_, t) = tgt.pure(&parts);
        out.axpy(&c.mul(&field.sign(e)), &t);
    }
    out
}

/// Identity on a factor.
pub fn id_factor(field: Field) -> impl Fn(i64, usize) -> SparseVec {
    move |_, i| SparseVec::unit(i, field)
}

/// Tensor product of complexes with the Koszul differential
/// `d(a ⊗ b) = da ⊗ b + (-1)^{|a|} a ⊗ db`.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub layout: TensorSpace,
    pub complex: ChainComplex,
    pub factors: Vec<ChainComplex>,
}

impl Tensor {
    pub fn new(factors: &[ChainComplex], window: DegreeWindow) -> Result<Tensor> {
        let spaces: Vec<GradedSpace> = factors.iter().map(|f| f.space().clone()).collect();
        let layout = TensorSpace::new(&spaces, window)?;
        let field = layout.field();
        let mut d = BTreeMap::new();
        for n in window.degrees() {
            let mut cols = Vec::new();
            for i in 0..layout.dim(n) {
                let key = layout.key(n, i).to_vec();
                let mut col = SparseVec::new();
                let mut e = 0i64;
                for (j, &(dj, ij)) in key.iter().enumerate() {
                    for (r, c) in factors[j].apply_d(dj, &SparseVec::unit(ij, field)).iter() {
                        let mut k2 = key.clone();
                        k2[j] = (dj - 1, r);
                        if let Some((_, t)) = layout.index(&k2) {
                            col.add_at(t, &c.mul(&field.sign(e)));
                        }
                    }
                    e += dj;
                }
                cols.push(col);
            }
            d.insert(n, Matrix::from_columns(field, layout.dim(n - 1), cols)?);
        }
        let complex = ChainComplex::new(layout.space().clone(), d)?;
        Ok(Tensor { layout, complex, factors: factors.to_vec() })
    }

    pub fn pair(x: &ChainComplex, y: &ChainComplex, window: DegreeWindow) -> Result<Tensor> {
        Tensor::new(&[x.clone(), y.clone()], window)
    }

    pub fn field(&self) -> Field {
        self.layout.field()
    }

    pub fn pure(&self, parts: &[(i64, &SparseVec)]) -> (i64, SparseVec) {
        self.layout.pure(parts)
    }
}

/// Binary tensor product clipped to `window`.
pub fn tensor(x: &ChainComplex, y: &ChainComplex, window: DegreeWindow) -> Result<Tensor> {
    Tensor::pair(x, y, window)
}

/// `f_1 ⊗ ⋯ ⊗ f_k` between tensor complexes, re-verified as a chain map.
pub fn tensor_map(maps: &[&ChainMap], src: &Tensor, tgt: &Tensor) -> Result<ChainMap> {
    if maps.len() != src.layout.arity() || maps.len() != tgt.layout.arity() {
        return Err(Error::Shape("tensor map arity mismatch".into()));
    }
    let field = src.field();
    let images: Vec<_> = maps
        .iter()
        .map(|m| {
            let m = (*m).clone();
            move |d: i64, i: usize| -> SparseVec {
                if m.source.window().contains(d) {
                    m.image_of(d, i)
                } else {
                    SparseVec::new()
                }
            }
        })
        .collect();
    let factors: Vec<Factor<'_>> =
        maps.iter().zip(&images).map(|(m, im)| Factor { degree: m.degree, image: im }).collect();
    let degree: i64 = maps.iter().map(|m| m.degree).sum();
    ChainMap::from_fn(&src.complex, &tgt.complex, degree, |n, i| {
        apply_factorwise(&src.layout, &tgt.layout, n, &SparseVec::unit(i, field), &factors)
    })
}

/// `σ: x ⊗ y → y ⊗ x`, `a ⊗ b ↦ (-1)^{|a||b|} b ⊗ a`.
pub fn symmetry(xy: &Tensor, yx: &Tensor) -> Result<ChainMap> {
    if xy.layout.arity() != 2 || yx.layout.arity() != 2 {
        return Err(Error::Shape("symmetry needs binary tensors".into()));
    }
    let field = xy.field();
    ChainMap::from_fn(&xy.complex, &yx.complex, 0, |n, i| {
        let k = xy.layout.key(n, i);
        let (a, b) = (k[0], k[1]);
        let (_, v) = yx.layout.unit(&[b, a]);
        v.scaled(&field.sign(a.0 * b.0))
    })
}

/// Isomorphism matching basis labels degree by degree; used for the canonical
/// identifications (unit, associativity). Fails unless the label sets agree.
pub fn relabeling(x: &ChainComplex, y: &ChainComplex) -> Result<ChainMap> {
    let field = x.field();
    let mut missing = None;
    let f = ChainMap::linear_from_fn(x, y, 0, |n, i| match y.space().index(n, x.label(n, i)) {
        Some(j) => SparseVec::unit(j, field),
        None => {
            missing.get_or_insert((n, x.label(n, i).to_string()));
            SparseVec::new()
        }
    })?;
    if let Some((n, l)) = missing {
        return Err(Error::Construction(format!("no label {l:?} in degree {n} of the target")));
    }
    for n in y.window().degrees() {
        if y.dim(n) != x.dim(n) {
            return Err(Error::Construction(format!("dimension mismatch in degree {n}")));
        }
    }
    f.verify().into_result()?;
    Ok(f)
}
