use super::complex::{cobar, Coaction, CobarComplex, Word};
use crate::chain::{ChainMap, DegreeWindow};
use crate::comodule::Side;
use crate::constructors::{ComodAlgMorphism, ComodAlgebra};
use crate::dg::{verify_algebra, AlgebraMap, DGAlgebra, DGBialgebra};
use crate::error::{Error, Result};
use crate::linalg::{Scalar, SparseVec};
use crate::monoidal::Cell;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CobarVariant {
    /// `Ω(A;H;R)`
    Left,
    /// `Ω(R;H;A)`
    Right,
    /// `Ω(A;H;H)`
    TwoSided,
}

/// `Ω(A;H;B)` for a right `H`-comodule algebra `A` and a left one `B`, with
/// the product generated by moving letters past algebra factors.
#[derive(Clone, Debug)]
pub struct CobarAlgebra {
    pub cobar: CobarComplex,
    pub algebra: DGAlgebra,
    pub h: DGBialgebra,
    pub left: DGAlgebra,
    pub right: DGAlgebra,
}

type Moved = Vec<(Scalar, Cell, Vec<Cell>)>;

struct Rules<'a> {
    h: &'a DGBialgebra,
    m: &'a Coaction,
    n: &'a Coaction,
}

impl Rules<'_> {
    /// `(1⊗w)(x⊗1) = Σ ± x₀ ⊗ s⁻¹(l₁x₁)|⋯|s⁻¹(l_k x_k)`, rightmost letter first.
    fn move_left(&self, letters: &[Cell], x: Cell) -> Moved {
        let field = self.h.field();
        let Some((&last, init)) = letters.split_last() else {
            return vec![(field.one(), x, Vec::new())];
        };
        let mut out = Vec::new();
        for (s, xi, hi) in self.m.terms(x) {
            let prod = self.h.alg.mul_cells(last, *hi);
            if prod.is_zero() {
                continue;
            }
            let sign = s.mul(&field.sign((last.0 - 1) * xi.0));
            for (t0, y, u) in self.move_left(init, *xi) {
                for (j, t) in prod.iter() {
                    let mut u = u.clone();
                    u.push((last.0 + hi.0, j));
                    out.push((t0.mul(&sign).mul(t), y, u));
                }
            }
        }
        out
    }

    /// `(1⊗y)(w⊗1) = Σ ± s⁻¹(y₋₁l₁)|⋯ ⊗ y₀`, leftmost letter first.
    fn move_right(&self, y: Cell, letters: &[Cell]) -> Moved {
        let field = self.h.field();
        let Some((&first, rest)) = letters.split_first() else {
            return vec![(field.one(), y, Vec::new())];
        };
        let mut out = Vec::new();
        for (s, hy, y0) in self.n.terms(y) {
            let prod = self.h.alg.mul_cells(*hy, first);
            if prod.is_zero() {
                continue;
            }
            let sign = s.mul(&field.sign((first.0 - 1) * y0.0 + hy.0));
            for (t0, z, u) in self.move_right(*y0, rest) {
                for (j, t) in prod.iter() {
                    let mut v = vec![(hy.0 + first.0, j)];
                    v.extend(u.iter().copied());
                    out.push((t0.mul(&sign).mul(t), z, v));
                }
            }
        }
        out
    }

    fn product(&self, a: &DGAlgebra, b: &DGAlgebra, x: &Word, y: &Word) -> Vec<(Scalar, Word)> {
        let field = self.h.field();
        let s0 = field.sign(x.right.0 * y.left.0);
        let mut out = Vec::new();
        for (s1, a0, u) in self.move_left(&x.letters, y.left) {
            let av = a.mul_cells(x.left, a0);
            if av.is_zero() {
                continue;
            }
            for (s2, b0, u2) in self.move_right(x.right, &y.letters) {
                let bv = b.mul_cells(b0, y.right);
                let mut letters = u.clone();
                letters.extend(u2.iter().copied());
                let c = s0.mul(&s1).mul(&s2);
                for (i, p) in av.iter() {
                    for (j, q) in bv.iter() {
                        let word = Word::new((x.left.0 + a0.0, i), letters.clone(), (b0.0 + y.right.0, j));
                        out.push((c.mul(p).mul(q), word));
                    }
                }
            }
        }
        out
    }
}

/// Builds `Ω(A;H;B)` as an algebra and rejects any table that fails
/// associativity, unitality or the Leibniz rule.
pub fn cobar_algebra(a: &DGAlgebra, m: &Coaction, h: &DGBialgebra, b: &DGAlgebra, n: &Coaction, w: DegreeWindow) -> Result<CobarAlgebra> {
    if m.complex != a.complex || n.complex != b.complex {
        return Err(Error::BaseMismatch("coactions are not on the given algebras".into()));
    }
    let x = cobar(m, &h.coalg, n, w)?;
    let rules = Rules { h, m, n };
    let field = h.field();
    let mut unit = Vec::new();
    for (i, p) in a.one().iter() {
        for (j, q) in b.one().iter() {
            unit.push((p.mul(q), Word::new((0, i), Vec::new(), (0, j))));
        }
    }
    let unit = x.collect(0, unit);
    let aug = |c: Cell| {
        let word = x.word(c);
        if !word.letters.is_empty() {
            return field.zero();
        }
        a.augment(0, &SparseVec::unit(word.left.1, field)).mul(&b.augment(0, &SparseVec::unit(word.right.1, field)))
    };
    let has_aug = a.augmentation.is_some() && b.augmentation.is_some();
    let algebra = DGAlgebra::from_table(
        &x.complex,
        |p, q| {
            let terms = rules.product(a, b, x.word(p), x.word(q));
            x.collect(p.0 + q.0, terms)
        },
        unit,
        if has_aug { Some(&aug) } else { None },
    )?;
    let rep = verify_algebra(&algebra);
    if let Some(f) = rep.first_failure() {
        return Err(Error::Construction(format!(
            "cobar product fails {}{} at {}",
            f.axiom,
            f.degree.map(|d| format!(" in degree {d}")).unwrap_or_default(),
            f.witness.join(", ")
        )));
    }
    Ok(CobarAlgebra { cobar: x, algebra, h: h.clone(), left: a.clone(), right: b.clone() })
}

/// `τρ`: a right coaction turned into a left one by the symmetry.
fn swapped(ca: &ComodAlgebra) -> Coaction {
    let field = ca.alg.field();
    Coaction::from_terms(&ca.alg.complex, &ca.h.coalg, Side::Left, |x| {
        ca.coaction_terms(x).into_iter().map(|(s, a, k)| (s.mul(&field.sign(a.0 * k.0)), k, a)).collect()
    })
}

/// The three shapes over one bialgebra. The right-handed shape needs a left
/// coaction; it uses `τρ`, which is one exactly when the cobar input
/// check passes (always for cocommutative `H`).
pub fn cobar_multiplication(ca: &ComodAlgebra, h: &DGBialgebra, variant: CobarVariant, w: DegreeWindow) -> Result<CobarAlgebra> {
    if ca.h.complex() != h.complex() || ca.h.alg.mu != h.alg.mu || ca.h.coalg.delta != h.coalg.delta {
        return Err(Error::BaseMismatch("comodule algebra over a different bialgebra".into()));
    }
    let g = DGAlgebra::ground(h.field(), w);
    match variant {
        CobarVariant::Left => {
            let m = Coaction::of_comod_algebra(ca);
            let n = Coaction::trivial(&g.complex, &h.coalg, Side::Left)?;
            cobar_algebra(&ca.alg, &m, h, &g, &n, w)
        }
        CobarVariant::Right => {
            let m = Coaction::trivial(&g.complex, &h.coalg, Side::Right)?;
            cobar_algebra(&g, &m, h, &ca.alg, &swapped(ca), w)
        }
        CobarVariant::TwoSided => {
            let m = Coaction::of_comod_algebra(ca);
            let n = Coaction::regular(&h.coalg, Side::Left);
            cobar_algebra(&ca.alg, &m, h, &h.alg, &n, w)
        }
    }
}

/// The model `Ω(A;H;R)` of the homotopy coinvariants.
pub fn hco(ca: &ComodAlgebra, h: &DGBialgebra, w: DegreeWindow) -> Result<CobarAlgebra> {
    cobar_multiplication(ca, h, CobarVariant::Left, w)
}

impl CobarAlgebra {
    pub fn words(&self) -> &CobarComplex {
        &self.cobar
    }

    /// `a ↦ a_i ⊗ 1 ⊗ h^i` into `Ω(A;H;H)`.
    pub fn rho_tilde(&self) -> Result<AlgebraMap> {
        let x = &self.cobar;
        AlgebraMap::new(&self.left, &self.algebra, {
            ChainMap::linear_from_fn(&self.left.complex, &x.complex, 0, |d, i| {
                let terms = x.left.terms((d, i)).iter().map(|(s, a, k)| (s.clone(), Word::new(*a, vec![], *k)));
                x.collect(d, terms)
            })?
        })
    }

    /// `a ⊗ 1 ⊗ h ↦ a ⊗ h`, zero on longer words, into `A ⊗ B`.
    pub fn q(&self) -> Result<AlgebraMap> {
        let field = self.h.field();
        let (ab, layout) = DGAlgebra::tensor(&self.left, &self.right, self.cobar.window())?;
        let x = &self.cobar;
        let map = ChainMap::linear_from_fn(&x.complex, &ab.complex, 0, |d, i| {
            let word = x.word((d, i));
            if !word.letters.is_empty() {
                return SparseVec::new();
            }
            layout.layout.index(&[word.left, word.right]).map(|(_, j)| SparseVec::unit(j, field)).unwrap_or_default()
        })?;
        AlgebraMap::new(&self.algebra, &ab, map)
    }

    /// Right `K`-coaction on the last factor, given the coaction of `B` as
    /// `(coefficient, B cell, K cell)`; checked to be a comodule algebra.
    pub fn last_factor_coaction(&self, k: &DGBialgebra, mut terms: impl FnMut(Cell) -> Vec<(Scalar, Cell, Cell)>) -> Result<ComodAlgebra> {
        let field = k.field();
        let x = &self.cobar;
        ComodAlgebra::new(k, &self.algebra, |c, t| {
            let word = x.word(c);
            let mut v = SparseVec::new();
            for (s, y, kc) in terms(word.right) {
                let z = Word::new(word.left, word.letters.clone(), y);
                if let Some(zc) = x.index(&z) {
                    v.axpy(&s, &t.layout.pure(&[(zc.0, &SparseVec::unit(zc.1, field)), (kc.0, &SparseVec::unit(kc.1, field))]).1);
                }
            }
            v
        })
    }

    /// `Ω(A;H;H)` with the coaction `Δ` on its last factor.
    pub fn two_sided_comodule(&self) -> Result<ComodAlgebra> {
        let h = self.h.clone();
        self.last_factor_coaction(&h, |c| h.coalg.delta_terms(c))
    }
}

/// A map of homotopy-coinvariant models `Ω(A;H;R) → Ω(B;K;R)`.
#[derive(Clone, Debug)]
pub struct HcoMap {
    pub source: CobarAlgebra,
    pub target: CobarAlgebra,
    pub map: AlgebraMap,
}

fn is_identity(f: &ChainMap) -> bool {
    f.source == f.target && f.source.window().degrees().all(|n| f.block(n) == crate::linalg::Matrix::identity(f.source.field(), f.source.dim(n)))
}

/// `x ⊗ w ↦ φ(x) ⊗ w` for `Γ = id`, and `a ↦ φ(a) ⊗ 1` for `Γ = η`; any other
/// `Γ` needs [`hco_map_with`].
pub fn hco_map(m: &ComodAlgMorphism, w: DegreeWindow) -> Result<HcoMap> {
    let unit_source = m.gamma.source.complex().space().elements().len() == 1;
    if !is_identity(&m.gamma.map) && !unit_source {
        return Err(Error::UnsupportedGamma(
            "comparison of homotopy coinvariants needs Γ = id, Γ = η or a supplied candidate".into(),
        ));
    }
    let src = hco(&m.source, &m.source.h, w)?;
    let tgt = hco(&m.target, &m.target.h, w)?;
    let field = src.h.field();
    let map = ChainMap::linear_from_fn(&src.cobar.complex, &tgt.cobar.complex, 0, |d, i| {
        let word = src.cobar.word((d, i));
        let image = m.phi.map.image_of(word.left.0, word.left.1);
        let mut out = SparseVec::new();
        for (j, s) in image.iter() {
            let z = Word::new((word.left.0, j), word.letters.clone(), word.right);
            if let Some(zc) = tgt.cobar.index(&z) {
                out.axpy(s, &SparseVec::unit(zc.1, field));
            }
        }
        out
    })?;
    let map = AlgebraMap::new(&src.algebra, &tgt.algebra, map)?;
    Ok(HcoMap { source: src, target: tgt, map })
}

/// Accepts a candidate comparison of the models after checking it is an
/// algebra map between them.
pub fn hco_map_with(m: &ComodAlgMorphism, candidate: ChainMap, w: DegreeWindow) -> Result<HcoMap> {
    let src = hco(&m.source, &m.source.h, w)?;
    let tgt = hco(&m.target, &m.target.h, w)?;
    let map = AlgebraMap::new(&src.algebra, &tgt.algebra, candidate)?;
    Ok(HcoMap { source: src, target: tgt, map })
}
