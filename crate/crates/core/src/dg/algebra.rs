use crate::chain::{ChainComplex, ChainMap, DegreeWindow};
use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar, SparseVec};
use crate::monoidal::{Cell, Tensor, TensorSpace};
use crate::report::CheckReport;

/// A DG algebra stored as a multiplication table on basis elements. Products
/// of total degree above the window are truncated to zero.
#[derive(Clone, Debug)]
pub struct DGAlgebra {
    pub complex: ChainComplex,
    /// `A ⊗ A`, the source of `mu`.
    pub aa: Tensor,
    pub mu: ChainMap,
    pub eta: ChainMap,
    pub augmentation: Option<ChainMap>,
}

impl DGAlgebra {
    /// Builds from a product table without checking axioms.
    /// `mul(a, b)` lies in degree `a.0 + b.0`; `unit` in degree 0.
    pub fn from_table(
        complex: &ChainComplex,
        mut mul: impl FnMut(Cell, Cell) -> SparseVec,
        unit: SparseVec,
        augmentation: Option<&dyn Fn(Cell) -> Scalar>,
    ) -> Result<DGAlgebra> {
        let field = complex.field();
        let w = complex.window();
        if !w.contains(0) {
            return Err(Error::WindowTooSmall("an algebra window must contain degree 0".into()));
        }
        let aa = Tensor::pair(complex, complex, w)?;
        let mu = ChainMap::linear_from_fn(&aa.complex, complex, 0, |n, i| {
            let k = aa.layout.key(n, i);
            mul(k[0], k[1])
        })?;
        let ground = ChainComplex::ground(field, w);
        let eta = ChainMap::linear_from_fn(&ground, complex, 0, |_, _| unit.clone())?;
        let augmentation = match augmentation {
            Some(e) => Some(ChainMap::linear_from_fn(complex, &ground, 0, |n, i| {
                if n == 0 {
                    SparseVec::from_pairs([(0, e((n, i)))])
                } else {
                    SparseVec::new()
                }
            })?),
            None => None,
        };
        Ok(DGAlgebra { complex: complex.clone(), aa, mu, eta, augmentation })
    }

    /// As [`from_table`](Self::from_table), rejecting any failed axiom.
    pub fn new(
        complex: &ChainComplex,
        mul: impl FnMut(Cell, Cell) -> SparseVec,
        unit: SparseVec,
        augmentation: Option<&dyn Fn(Cell) -> Scalar>,
    ) -> Result<DGAlgebra> {
        let a = DGAlgebra::from_table(complex, mul, unit, augmentation)?;
        verify_algebra(&a).into_result()?;
        Ok(a)
    }

    /// The ground field with its identity structure.
    pub fn ground(field: Field, window: DegreeWindow) -> DGAlgebra {
        let x = ChainComplex::ground(field, window);
        let one = SparseVec::unit(0, field);
        DGAlgebra::from_table(&x, |_, _| SparseVec::unit(0, field), one, Some(&|_| field.one()))
            .expect("ground algebra")
    }

    pub fn field(&self) -> Field {
        self.complex.field()
    }

    pub fn window(&self) -> DegreeWindow {
        self.complex.window()
    }

    pub fn dim(&self, n: i64) -> usize {
        self.complex.dim(n)
    }

    /// Unit element (degree 0).
    pub fn one(&self) -> SparseVec {
        self.eta.image_of(0, 0)
    }

    pub fn mul_cells(&self, a: Cell, b: Cell) -> SparseVec {
        match self.aa.layout.index(&[a, b]) {
            Some((n, i)) => self.mu.image_of(n, i),
            None => SparseVec::new(),
        }
    }

    /// Product of homogeneous vectors in degrees `p` and `q`.
    pub fn mul(&self, p: i64, u: &SparseVec, q: i64, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        if self.dim(p + q) == 0 {
            return out;
        }
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                out.axpy(&a.mul(b), &self.mul_cells((p, i), (q, j)));
            }
        }
        out
    }

    /// Augmentation of a degree-`n` vector; zero without augmentation.
    pub fn augment(&self, n: i64, v: &SparseVec) -> Scalar {
        match &self.augmentation {
            Some(e) => e.apply(n, v).get(0).cloned().unwrap_or_else(|| self.field().zero()),
            None => self.field().zero(),
        }
    }

    pub fn label(&self, c: Cell) -> &str {
        self.complex.label(c.0, c.1)
    }

    /// Tensor product algebra, `(a ⊗ b)(a' ⊗ b') = (-1)^{|b||a'|} aa' ⊗ bb'`.
    pub fn tensor(a: &DGAlgebra, b: &DGAlgebra, window: DegreeWindow) -> Result<(DGAlgebra, Tensor)> {
        let t = Tensor::pair(&a.complex, &b.complex, window)?;
        let field = a.field();
        let one = {
            let (_, v) = t.layout.pure(&[(0, &a.one()), (0, &b.one())]);
            v
        };
        let aug = |c: Cell| -> Scalar {
            let k = t.layout.key(c.0, c.1);
            let ea = a.augment(k[0].0, &SparseVec::unit(k[0].1, field));
            let eb = b.augment(k[1].0, &SparseVec::unit(k[1].1, field));
            ea.mul(&eb)
        };
        let has_aug = a.augmentation.is_some() && b.augmentation.is_some();
        let alg = DGAlgebra::from_table(
            &t.complex,
            |x, y| {
                pair_product(a, b, &t.layout, x.0, &SparseVec::unit(x.1, field), y.0, &SparseVec::unit(y.1, field))
            },
            one,
            if has_aug { Some(&aug) } else { None },
        )?;
        Ok((alg, t))
    }
}

/// Product in `A ⊗ B` of homogeneous `u` (degree `p`) and `v` (degree `q`),
/// both expressed in the basis of `layout` = A ⊗ B.
pub fn pair_product(
    a: &DGAlgebra,
    b: &DGAlgebra,
    layout: &TensorSpace,
    p: i64,
    u: &SparseVec,
    q: i64,
    v: &SparseVec,
) -> SparseVec {
    let field = a.field();
    let mut out = SparseVec::new();
    if layout.dim(p + q) == 0 {
        return out;
    }
    for (c1, k1) in layout.terms(p, u) {
        for (c2, k2) in layout.terms(q, v) {
            let (x, y) = (k1[0], k1[1]);
            let (x2, y2) = (k2[0], k2[1]);
            let xx = a.mul_cells(x, x2);
            let yy = b.mul_cells(y, y2);
            if xx.is_zero() || yy.is_zero() {
                continue;
            }
            let (_, t) = layout.pure(&[(x.0 + x2.0, &xx), (y.0 + y2.0, &yy)]);
            let s = field.sign(y.0 * x2.0).mul(c1).mul(c2);
            out.axpy(&s, &t);
        }
    }
    out
}

fn rename(rep: &mut CheckReport, from: CheckReport, axiom: &str) {
    rep.checked(axiom);
    for f in from.failures {
        rep.fail(axiom, f.degree, f.witness, f.detail);
    }
}

/// Associativity, unit laws, Leibniz rule and augmentation axioms, each as an
/// exact identity on basis elements (triples with total degree in the window).
pub fn verify_algebra(a: &DGAlgebra) -> CheckReport {
    let mut rep = CheckReport::new("algebra");
    let field = a.field();
    rename(&mut rep, a.mu.verify(), "Leibniz rule");
    rename(&mut rep, a.eta.verify(), "unit is a chain map");
    rep.checked("associativity");
    rep.checked("left unit");
    rep.checked("right unit");
    let one = a.one();
    let cells = a.complex.space().elements();
    let w = a.window();
    for &x in &cells {
        let ex = SparseVec::unit(x.1, field);
        if a.mul(0, &one, x.0, &ex) != ex {
            rep.fail("left unit", Some(x.0), vec![a.label(x).into()], "1·a != a");
        }
        if a.mul(x.0, &ex, 0, &one) != ex {
            rep.fail("right unit", Some(x.0), vec![a.label(x).into()], "a·1 != a");
        }
    }
    for &x in &cells {
        for &y in &cells {
            if !w.contains(x.0 + y.0) {
                continue;
            }
            let xy = a.mul_cells(x, y);
            for &z in &cells {
                if !w.contains(x.0 + y.0 + z.0) {
                    continue;
                }
                let l = a.mul(x.0 + y.0, &xy, z.0, &SparseVec::unit(z.1, field));
                let r = a.mul(x.0, &SparseVec::unit(x.1, field), y.0 + z.0, &a.mul_cells(y, z));
                if l != r {
                    rep.fail(
                        "associativity",
                        Some(x.0 + y.0 + z.0),
                        vec![a.label(x).into(), a.label(y).into(), a.label(z).into()],
                        "(ab)c != a(bc)",
                    );
                }
            }
        }
    }
    if let Some(e) = &a.augmentation {
        rename(&mut rep, e.verify(), "augmentation is a chain map");
        rep.checked("augmentation multiplicative");
        rep.checked("augmentation unital");
        if !a.augment(0, &one).is_one() {
            rep.fail("augmentation unital", Some(0), vec!["1".into()], "ε(1) != 1");
        }
        for &x in &cells {
            for &y in &cells {
                if x.0 + y.0 != 0 || !w.contains(0) {
                    continue;
                }
                let l = a.augment(0, &a.mul_cells(x, y));
                let r = a.augment(x.0, &SparseVec::unit(x.1, field)).mul(&a.augment(y.0, &SparseVec::unit(y.1, field)));
                if l != r {
                    rep.fail(
                        "augmentation multiplicative",
                        Some(0),
                        vec![a.label(x).into(), a.label(y).into()],
                        "ε(ab) != ε(a)ε(b)",
                    );
                }
            }
        }
    }
    rep
}

/// A map of DG algebras given by its underlying chain map.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    pub source: DGAlgebra,
    pub target: DGAlgebra,
    pub map: ChainMap,
}

impl AlgebraMap {
    pub fn new(source: &DGAlgebra, target: &DGAlgebra, map: ChainMap) -> Result<AlgebraMap> {
        let f = AlgebraMap { source: source.clone(), target: target.clone(), map };
        verify_algebra_map(&f).into_result()?;
        Ok(f)
    }

    pub fn from_fn(source: &DGAlgebra, target: &DGAlgebra, image: impl FnMut(i64, usize) -> SparseVec) -> Result<AlgebraMap> {
        let map = ChainMap::linear_from_fn(&source.complex, &target.complex, 0, image)?;
        AlgebraMap::new(source, target, map)
    }

    pub fn identity(a: &DGAlgebra) -> AlgebraMap {
        AlgebraMap { source: a.clone(), target: a.clone(), map: ChainMap::identity(&a.complex) }
    }

    /// The unit `R → A`.
    pub fn unit(a: &DGAlgebra) -> AlgebraMap {
        let g = DGAlgebra::ground(a.field(), a.window());
        AlgebraMap { source: g, target: a.clone(), map: a.eta.clone() }
    }

    pub fn apply(&self, n: i64, v: &SparseVec) -> SparseVec {
        self.map.apply(n, v)
    }

    pub fn compose(&self, other: &AlgebraMap) -> Result<AlgebraMap> {
        Ok(AlgebraMap { source: other.source.clone(), target: self.target.clone(), map: self.map.compose(&other.map)? })
    }
}

pub fn verify_algebra_map(f: &AlgebraMap) -> CheckReport {
    let mut rep = CheckReport::new("algebra map");
    rename(&mut rep, f.map.verify(), "chain map");
    rep.checked("multiplicative");
    rep.checked("unital");
    if f.apply(0, &f.source.one()) != f.target.one() {
        rep.fail("unital", Some(0), vec!["1".into()], "f(1) != 1");
    }
    let cells = f.source.complex.space().elements();
    for &x in &cells {
        for &y in &cells {
            if !f.source.window().contains(x.0 + y.0) || !f.target.window().contains(x.0 + y.0) {
                continue;
            }
            let l = f.apply(x.0 + y.0, &f.source.mul_cells(x, y));
            let r = f.target.mul(
                x.0,
                &f.map.image_of(x.0, x.1),
                y.0,
                &f.map.image_of(y.0, y.1),
            );
            if l != r {
                rep.fail(
                    "multiplicative",
                    Some(x.0 + y.0),
                    vec![f.source.label(x).into(), f.source.label(y).into()],
                    "f(ab) != f(a)f(b)",
                );
            }
        }
    }
    rep
}
