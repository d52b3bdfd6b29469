use crate::chain::{ChainMap, SubComplex};
use crate::dg::{AlgebraMap, BialgebraMap, DGAlgebra, DGBialgebra, DGCoalgebra};
use crate::error::{Error, Result};
use crate::linalg::{Scalar, SparseVec};
use crate::monoidal::{Cell, Tensor};
use crate::report::CheckReport;

fn named(rep: &mut CheckReport, from: CheckReport, axiom: &str) {
    rep.checked(axiom);
    for f in from.failures {
        rep.fail(axiom, f.degree, f.witness, f.detail);
    }
}

/// An algebra with a coaction `ρ: A → A ⊗ H` that is an algebra map.
#[derive(Clone, Debug)]
pub struct ComodAlgebra {
    pub h: DGBialgebra,
    pub alg: DGAlgebra,
    /// `A ⊗ H` as an algebra, with its layout.
    pub ah: DGAlgebra,
    pub layout: Tensor,
    pub rho: ChainMap,
}

impl ComodAlgebra {
    /// Unchecked; `rho` gives coordinates in `A ⊗ H`.
    pub fn from_fn(h: &DGBialgebra, alg: &DGAlgebra, mut rho: impl FnMut(Cell, &Tensor) -> SparseVec) -> Result<ComodAlgebra> {
        if h.field() != alg.field() {
            return Err(Error::BaseMismatch("comodule algebra over a different field".into()));
        }
        let (ah, layout) = DGAlgebra::tensor(alg, &h.alg, alg.window())?;
        let rho = ChainMap::linear_from_fn(&alg.complex, &ah.complex, 0, |n, i| rho((n, i), &layout))?;
        Ok(ComodAlgebra { h: h.clone(), alg: alg.clone(), ah, layout, rho })
    }

    pub fn new(h: &DGBialgebra, alg: &DGAlgebra, rho: impl FnMut(Cell, &Tensor) -> SparseVec) -> Result<ComodAlgebra> {
        let a = ComodAlgebra::from_fn(h, alg, rho)?;
        verify_comod_algebra(&a).into_result()?;
        Ok(a)
    }

    /// `H` coacting on itself by `Δ`.
    pub fn regular(h: &DGBialgebra) -> ComodAlgebra {
        let field = h.field();
        ComodAlgebra::from_fn(h, &h.alg, |c, t| {
            let mut v = SparseVec::new();
            for (s, x, y) in h.coalg.delta_terms(c) {
                v.axpy(&s, &SparseVec::unit(t.layout.index(&[x, y]).expect("H ⊗ H cell").1, field));
            }
            v
        })
        .expect("regular comodule algebra")
    }

    /// `a ↦ a ⊗ 1`.
    pub fn trivial(alg: &DGAlgebra, h: &DGBialgebra) -> Result<ComodAlgebra> {
        let field = h.field();
        let one = h.alg.one();
        ComodAlgebra::from_fn(h, alg, |c, t| t.layout.pure(&[(c.0, &SparseVec::unit(c.1, field)), (0, &one)]).1)
    }

    /// `E ⊗ H` with coaction `E ⊗ Δ`.
    pub fn free(e: &DGAlgebra, h: &DGBialgebra) -> Result<ComodAlgebra> {
        let field = h.field();
        let (eh, eh_layout) = DGAlgebra::tensor(e, &h.alg, e.window())?;
        ComodAlgebra::from_fn(h, &eh, |c, t| {
            let k = eh_layout.layout.key(c.0, c.1);
            let mut v = SparseVec::new();
            for (s, x, y) in h.coalg.delta_terms(k[1]) {
                let (_, ex) = eh_layout.layout.pure(&[(k[0].0, &SparseVec::unit(k[0].1, field)), (x.0, &SparseVec::unit(x.1, field))]);
                v.axpy(&s, &t.layout.pure(&[(k[0].0 + x.0, &ex), (y.0, &SparseVec::unit(y.1, field))]).1);
            }
            v
        })
    }

    /// `ρ(a)` as `(coefficient, A cell, H cell)`.
    pub fn coaction_terms(&self, c: Cell) -> Vec<(Scalar, Cell, Cell)> {
        self.layout.layout.terms(c.0, &self.rho.image_of(c.0, c.1)).map(|(s, k)| (s.clone(), k[0], k[1])).collect()
    }
}

/// Coassociativity, counit, and that `ρ` is a unital algebra chain map.
pub fn verify_comod_algebra(a: &ComodAlgebra) -> CheckReport {
    let mut rep = CheckReport::new("comodule algebra");
    let field = a.alg.field();
    let w = a.alg.window();
    named(&mut rep, a.rho.verify(), "coaction is a chain map");
    for ax in ["coassociativity", "counit", "coaction multiplicative", "coaction unital"] {
        rep.checked(ax);
    }
    let triple = match Tensor::new(&[a.alg.complex.clone(), a.h.complex().clone(), a.h.complex().clone()], w) {
        Ok(t) => t,
        Err(e) => {
            rep.fail("coassociativity", None, vec![], e.to_string());
            return rep;
        }
    };
    let u = |c: Cell| SparseVec::unit(c.1, field);
    let cells = a.alg.complex.space().elements();
    for &x in &cells {
        let mut l = SparseVec::new();
        let mut r = SparseVec::new();
        let mut back = SparseVec::new();
        for (s, y, h) in a.coaction_terms(x) {
            for (t, y0, h0) in a.coaction_terms(y) {
                l.axpy(&s.mul(&t), &triple.layout.pure(&[(y0.0, &u(y0)), (h0.0, &u(h0)), (h.0, &u(h))]).1);
            }
            for (t, h1, h2) in a.h.coalg.delta_terms(h) {
                r.axpy(&s.mul(&t), &triple.layout.pure(&[(y.0, &u(y)), (h1.0, &u(h1)), (h2.0, &u(h2))]).1);
            }
            back.axpy(&s.mul(&a.h.coalg.counit(h)), &u(y));
        }
        if l != r {
            rep.fail("coassociativity", Some(x.0), vec![a.alg.label(x).into()], "(ρ ⊗ 1)ρ != (1 ⊗ Δ)ρ");
        }
        if back != u(x) {
            rep.fail("counit", Some(x.0), vec![a.alg.label(x).into()], "(1 ⊗ ε)ρ != id");
        }
        for &y in &cells {
            let n = x.0 + y.0;
            if !w.contains(n) {
                continue;
            }
            let lhs = a.rho.apply(n, &a.alg.mul_cells(x, y));
            let rhs = a.ah.mul(x.0, &a.rho.image_of(x.0, x.1), y.0, &a.rho.image_of(y.0, y.1));
            if lhs != rhs {
                rep.fail("coaction multiplicative", Some(n), vec![a.alg.label(x).into(), a.alg.label(y).into()], "ρ(ab) != ρ(a)ρ(b)");
            }
        }
    }
    if a.rho.apply(0, &a.alg.one()) != a.ah.one() {
        rep.fail("coaction unital", Some(0), vec![], "ρ(1) != 1 ⊗ 1");
    }
    rep
}

/// `{a : ρ(a) = a ⊗ 1}` with the restricted product.
pub fn coinvariant_algebra(a: &ComodAlgebra) -> Result<(SubComplex, DGAlgebra)> {
    let field = a.alg.field();
    let one = a.h.alg.one();
    let f = ChainMap::linear_from_fn(&a.alg.complex, &a.ah.complex, 0, |n, i| {
        let e = SparseVec::unit(i, field);
        a.rho.image_of(n, i).sub(&a.layout.layout.pure(&[(n, &e), (0, &one)]).1)
    })?;
    let sub = SubComplex::kernel(&f)?;
    let mut closed = true;
    let mul = |x: Cell, y: Cell| {
        let p = a.alg.mul(x.0, &sub.include(x.0, &SparseVec::unit(x.1, field)), y.0, &sub.include(y.0, &SparseVec::unit(y.1, field)));
        sub.coordinates(x.0 + y.0, &p).unwrap_or_else(|| {
            closed = false;
            SparseVec::new()
        })
    };
    let unit = sub
        .coordinates(0, &a.alg.one())
        .ok_or_else(|| Error::Construction("the unit is not coinvariant".into()))?;
    let aug = |c: Cell| a.alg.augment(c.0, &sub.include(c.0, &SparseVec::unit(c.1, field)));
    let has_aug = a.alg.augmentation.is_some();
    let alg = DGAlgebra::from_table(&sub.complex, mul, unit, if has_aug { Some(&aug) } else { None })?;
    if !closed {
        return Err(Error::Construction("coinvariants are not closed under the product".into()));
    }
    Ok((sub, alg))
}

/// A coalgebra with a right `H`-action `κ: C ⊗ H → C` that is a coalgebra map.
#[derive(Clone, Debug)]
pub struct ModuleCoalgebra {
    pub h: DGBialgebra,
    pub coalg: DGCoalgebra,
    /// `C ⊗ H`, the source of `kappa`.
    pub layout: Tensor,
    pub kappa: ChainMap,
}

impl ModuleCoalgebra {
    pub fn from_fn(h: &DGBialgebra, coalg: &DGCoalgebra, mut kappa: impl FnMut(Cell, Cell) -> SparseVec) -> Result<ModuleCoalgebra> {
        if h.field() != coalg.field() {
            return Err(Error::BaseMismatch("module coalgebra over a different field".into()));
        }
        let layout = Tensor::pair(&coalg.complex, h.complex(), coalg.window())?;
        let kappa = ChainMap::linear_from_fn(&layout.complex, &coalg.complex, 0, |n, i| {
            let k = layout.layout.key(n, i);
            kappa(k[0], k[1])
        })?;
        Ok(ModuleCoalgebra { h: h.clone(), coalg: coalg.clone(), layout, kappa })
    }

    pub fn new(h: &DGBialgebra, coalg: &DGCoalgebra, kappa: impl FnMut(Cell, Cell) -> SparseVec) -> Result<ModuleCoalgebra> {
        let m = ModuleCoalgebra::from_fn(h, coalg, kappa)?;
        verify_module_coalgebra(&m).into_result()?;
        Ok(m)
    }

    /// `H` acting on itself by multiplication.
    pub fn regular(h: &DGBialgebra) -> ModuleCoalgebra {
        ModuleCoalgebra::from_fn(h, &h.coalg, |c, x| h.alg.mul_cells(c, x)).expect("regular module coalgebra")
    }

    pub fn act_cells(&self, c: Cell, x: Cell) -> SparseVec {
        match self.layout.layout.index(&[c, x]) {
            Some((n, j)) => self.kappa.image_of(n, j),
            None => SparseVec::new(),
        }
    }

    pub fn act(&self, p: i64, c: &SparseVec, x: Cell) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, s) in c.iter() {
            out.axpy(s, &self.act_cells((p, i), x));
        }
        out
    }
}

/// Action axioms and that `κ` is a counital coalgebra map.
pub fn verify_module_coalgebra(m: &ModuleCoalgebra) -> CheckReport {
    let mut rep = CheckReport::new("module coalgebra");
    named(&mut rep, m.kappa.verify(), "action is a chain map");
    for ax in ["associativity", "unit", "action comultiplicative", "action counital"] {
        rep.checked(ax);
    }
    let field = m.coalg.field();
    let w = m.coalg.window();
    let u = |c: Cell| SparseVec::unit(c.1, field);
    let one = m.h.alg.one();
    let hcells = m.h.complex().space().elements();
    for c in m.coalg.complex.space().elements() {
        let lc = m.coalg.label(c).to_string();
        let mut c1 = SparseVec::new();
        for (i, s) in one.iter() {
            c1.axpy(s, &m.act_cells(c, (0, i)));
        }
        if c1 != u(c) {
            rep.fail("unit", Some(c.0), vec![lc.clone()], "κ(c ⊗ 1) != c");
        }
        for &x in &hcells {
            let n = c.0 + x.0;
            if !w.contains(n) {
                continue;
            }
            let cx = m.act_cells(c, x);
            for &y in &hcells {
                if !w.contains(n + y.0) {
                    continue;
                }
                let l = m.act(n, &cx, y);
                let mut r = SparseVec::new();
                for (i, s) in m.h.alg.mul_cells(x, y).iter() {
                    r.axpy(s, &m.act_cells(c, (x.0 + y.0, i)));
                }
                if l != r {
                    rep.fail("associativity", Some(n + y.0), vec![lc.clone(), m.h.alg.label(x).into(), m.h.alg.label(y).into()], "κ(κ(c ⊗ h) ⊗ h') != κ(c ⊗ hh')");
                }
            }
            // Δκ(c ⊗ x) = Σ (-1)^{|c₂||x₁|} κ(c₁ ⊗ x₁) ⊗ κ(c₂ ⊗ x₂).
            let lhs = m.coalg.delta.apply(n, &cx);
            let mut rhs = SparseVec::new();
            for (s, c1, c2) in m.coalg.delta_terms(c) {
                for (t, x1, x2) in m.h.coalg.delta_terms(x) {
                    let a = m.act_cells(c1, x1);
                    let b = m.act_cells(c2, x2);
                    if a.is_zero() || b.is_zero() || !w.contains(c1.0 + x1.0) || !w.contains(c2.0 + x2.0) {
                        continue;
                    }
                    let (_, v) = m.coalg.cc.layout.pure(&[(c1.0 + x1.0, &a), (c2.0 + x2.0, &b)]);
                    rhs.axpy(&s.mul(&t).mul(&field.sign(c2.0 * x1.0)), &v);
                }
            }
            if lhs != rhs {
                rep.fail("action comultiplicative", Some(n), vec![lc.clone(), m.h.alg.label(x).into()], "Δκ != (κ ⊗ κ)(C ⊗ σ ⊗ H)(Δ ⊗ Δ)");
            }
            let e = m.coalg.counit_vec(n, &cx);
            if e != m.coalg.counit(c).mul(&m.h.coalg.counit(x)) {
                rep.fail("action counital", Some(n), vec![lc.clone(), m.h.alg.label(x).into()], "εκ(c ⊗ h) != ε(c)ε(h)");
            }
        }
    }
    rep
}

/// `(Γ, φ)`: a bialgebra map `Γ: H → K` and an algebra map `φ: A → B` with
/// `ρ_B φ = (φ ⊗ Γ) ρ_A`.
#[derive(Clone, Debug)]
pub struct ComodAlgMorphism {
    pub gamma: BialgebraMap,
    pub source: ComodAlgebra,
    pub target: ComodAlgebra,
    pub phi: AlgebraMap,
}

impl ComodAlgMorphism {
    pub fn new(gamma: &BialgebraMap, source: &ComodAlgebra, target: &ComodAlgebra, phi: &AlgebraMap) -> Result<ComodAlgMorphism> {
        let m = ComodAlgMorphism { gamma: gamma.clone(), source: source.clone(), target: target.clone(), phi: phi.clone() };
        verify_comod_alg_morphism(&m).into_result()?;
        Ok(m)
    }
}

pub fn verify_comod_alg_morphism(m: &ComodAlgMorphism) -> CheckReport {
    let mut rep = CheckReport::new("comodule algebra morphism");
    if m.gamma.source.complex() != m.source.h.complex() || m.gamma.target.complex() != m.target.h.complex() {
        rep.fail("matching bialgebras", None, vec![], "Γ does not connect the two coacting bialgebras");
        return rep;
    }
    if m.phi.source.complex != m.source.alg.complex || m.phi.target.complex != m.target.alg.complex {
        rep.fail("matching algebras", None, vec![], "φ does not connect the two algebras");
        return rep;
    }
    rep.merge(crate::dg::verify_algebra_map(&m.phi));
    rep.merge(crate::dg::verify_bialgebra_map(&m.gamma));
    rep.checked("colinear");
    for x in m.source.alg.complex.space().elements() {
        let l = m.target.rho.apply(x.0, &m.phi.map.image_of(x.0, x.1));
        let mut r = SparseVec::new();
        for (s, y, h) in m.source.coaction_terms(x) {
            let (_, v) = m.target.layout.layout.pure(&[(y.0, &m.phi.map.image_of(y.0, y.1)), (h.0, &m.gamma.map.image_of(h.0, h.1))]);
            r.axpy(&s, &v);
        }
        if l != r {
            rep.fail("colinear", Some(x.0), vec![m.source.alg.label(x).into()], "ρ_B φ != (φ ⊗ Γ) ρ_A");
        }
    }
    rep
}
