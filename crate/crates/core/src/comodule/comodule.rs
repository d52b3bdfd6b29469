use super::balanced::{tensor_over, Balanced};
use super::coring::Coring;
use super::module::{verify_module, AModule, Side};
use crate::chain::{ChainComplex, ChainMap, SubComplex};
use crate::error::{Error, Result};
use crate::linalg::{Scalar, SparseVec};
use crate::monoidal::Cell;
use crate::report::CheckReport;

/// A comodule over a coring. A right comodule has a right `A`-module and
/// `δ: M → M ⊗_A C`; a left one a left module and `δ: N → C ⊗_A N`.
#[derive(Clone, Debug)]
pub struct Comodule {
    pub coring: Coring,
    pub module: AModule,
    /// `M ⊗_A C` or `C ⊗_A N`.
    pub target: Balanced,
    pub coaction: ChainMap,
}

impl Comodule {
    /// Unchecked; `delta` gives coordinates in `target`.
    pub fn from_fn(coring: &Coring, module: &AModule, mut delta: impl FnMut(Cell) -> SparseVec) -> Result<Comodule> {
        if module.alg.complex != coring.base.complex {
            return Err(Error::BaseMismatch("comodule module is over a different algebra than the coring".into()));
        }
        let target = match module.side {
            Side::Right => tensor_over(module, &coring.bimodule.left)?,
            Side::Left => tensor_over(&coring.bimodule.right, module)?,
        };
        let coaction = ChainMap::linear_from_fn(&module.complex, target.complex(), 0, |n, i| delta((n, i)))?;
        Ok(Comodule { coring: coring.clone(), module: module.clone(), target, coaction })
    }

    pub fn new(coring: &Coring, module: &AModule, delta: impl FnMut(Cell) -> SparseVec) -> Result<Comodule> {
        let m = Comodule::from_fn(coring, module, delta)?;
        verify_comodule(&m).into_result()?;
        Ok(m)
    }

    /// `C` coacting on itself through `Δ`.
    pub fn regular(coring: &Coring, side: Side) -> Result<Comodule> {
        let module = match side {
            Side::Right => coring.bimodule.right.clone(),
            Side::Left => coring.bimodule.left.clone(),
        };
        Comodule::from_fn(coring, &module, |c| coring.delta.image_of(c.0, c.1))
    }

    /// `m ↦ m ⊗ g` (or `g ⊗ m`) for the coaugmentation `g`.
    pub fn trivial(coring: &Coring, module: &AModule) -> Result<Comodule> {
        let g = coring
            .coaugmentation
            .clone()
            .ok_or_else(|| Error::Shape("trivial coaction needs a coaugmented coring".into()))?;
        let field = coring.field();
        let side = module.side;
        let t = match side {
            Side::Right => tensor_over(module, &coring.bimodule.left)?,
            Side::Left => tensor_over(&coring.bimodule.right, module)?,
        };
        Comodule::from_fn(coring, module, |c| {
            let e = SparseVec::unit(c.1, field);
            match side {
                Side::Right => t.class(c.0, &e, 0, &g),
                Side::Left => t.class(0, &g, c.0, &e),
            }
        })
    }

    pub fn side(&self) -> Side {
        self.module.side
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.module.complex
    }

    pub fn label(&self, c: Cell) -> &str {
        self.complex().label(c.0, c.1)
    }

    /// `δ(m)` as pure tensors: `(coefficient, module cell, coring cell)` for a
    /// right comodule, `(coefficient, coring cell, module cell)` for a left one.
    pub fn coaction_terms(&self, c: Cell) -> Vec<(Scalar, Cell, Cell)> {
        self.target.lift_terms(c.0, &self.coaction.image_of(c.0, c.1))
    }

    /// The two sides of the coassociativity square, computed in
    /// `(M ⊗_A C) ⊗_A C` or `(C ⊗_A C) ⊗_A N`.
    fn coassociators(&self, triple: &Balanced, x: Cell) -> (SparseVec, SparseVec) {
        let field = self.coring.field();
        let c = &self.coring;
        let mut l = SparseVec::new();
        let mut r = SparseVec::new();
        for (s, y, z) in self.coaction_terms(x) {
            match self.side() {
                Side::Right => {
                    // y ∈ M, z ∈ C.
                    let dy = self.coaction.image_of(y.0, y.1);
                    l.axpy(&s, &triple.class(y.0, &dy, z.0, &SparseVec::unit(z.1, field)));
                    for (t, z1, z2) in c.delta_terms(z) {
                        let yz1 = self.target.class_cells(y, z1);
                        r.axpy(&s.mul(&t), &triple.class(y.0 + z1.0, &yz1, z2.0, &SparseVec::unit(z2.1, field)));
                    }
                }
                Side::Left => {
                    // y ∈ C, z ∈ N.
                    let dy = c.delta.image_of(y.0, y.1);
                    l.axpy(&s, &triple.class(y.0, &dy, z.0, &SparseVec::unit(z.1, field)));
                    for (t, z1, z2) in self.coaction_terms(z) {
                        let yz1 = c.cc.class_cells(y, z1);
                        r.axpy(&s.mul(&t), &triple.class(y.0 + z1.0, &yz1, z2.0, &SparseVec::unit(z2.1, field)));
                    }
                }
            }
        }
        (l, r)
    }

    /// `(M ⊗_A C) ⊗_A C` or `(C ⊗_A C) ⊗_A N`.
    pub fn triple(&self) -> Result<Balanced> {
        match self.side() {
            Side::Right => {
                let r = self.target.induced_right(&self.coring.bimodule.right)?;
                tensor_over(&r, &self.coring.bimodule.left)
            }
            Side::Left => tensor_over(&self.coring.cc_right, &self.module),
        }
    }

    /// Action of `A` on the coaction target on the module's side.
    pub fn target_action(&self) -> Result<AModule> {
        match self.side() {
            Side::Right => self.target.induced_right(&self.coring.bimodule.right),
            Side::Left => self.target.induced_left(&self.coring.bimodule.left),
        }
    }
}

/// Module axioms, linearity of `δ`, coassociativity and counit.
pub fn verify_comodule(m: &Comodule) -> CheckReport {
    let mut rep = CheckReport::new("comodule");
    rep.merge(verify_module(&m.module));
    rep.checked("coaction is a chain map");
    for f in m.coaction.verify().failures {
        rep.fail("coaction is a chain map", f.degree, f.witness, f.detail);
    }
    for a in ["coaction linear", "coassociativity", "counit"] {
        rep.checked(a);
    }
    let field = m.coring.field();
    let a = &m.coring.base;
    let w = m.complex().window();
    let cells = m.complex().space().elements();
    match m.target_action() {
        Ok(act) => {
            for &x in &cells {
                let dx = m.coaction.image_of(x.0, x.1);
                for p in a.complex.space().elements() {
                    let n = x.0 + p.0;
                    if !w.contains(n) {
                        continue;
                    }
                    let l = m.coaction.apply(n, &m.module.act_cells(x, p));
                    let r = act.act(x.0, &dx, p.0, &SparseVec::unit(p.1, field));
                    if l != r {
                        rep.fail("coaction linear", Some(n), vec![m.label(x).into(), a.label(p).into()], "δ is not A-linear");
                    }
                }
            }
        }
        Err(e) => rep.fail("coaction linear", None, vec![], e.to_string()),
    }
    for &x in &cells {
        let mut back = SparseVec::new();
        for (s, y, z) in m.coaction_terms(x) {
            let v = match m.side() {
                Side::Right => m.module.act(y.0, &SparseVec::unit(y.1, field), z.0, &m.coring.counit_vec(z)),
                Side::Left => m.module.act(z.0, &SparseVec::unit(z.1, field), y.0, &m.coring.counit_vec(y)),
            };
            back.axpy(&s, &v);
        }
        if back != SparseVec::unit(x.1, field) {
            rep.fail("counit", Some(x.0), vec![m.label(x).into()], "counit does not recover the element");
        }
    }
    match m.triple() {
        Ok(t) => {
            for &x in &cells {
                let (l, r) = m.coassociators(&t, x);
                if l != r {
                    rep.fail("coassociativity", Some(x.0), vec![m.label(x).into()], "coaction is not coassociative");
                }
            }
        }
        Err(e) => rep.fail("coassociativity", None, vec![], e.to_string()),
    }
    rep
}

/// `M □_C N` as the equalizer inside `M ⊗_A N`.
#[derive(Clone, Debug)]
pub struct Cotensor {
    pub tensor: Balanced,
    pub equalizer: SubComplex,
}

impl Cotensor {
    pub fn complex(&self) -> &ChainComplex {
        &self.equalizer.complex
    }
}

/// Kernel of `δ_M ⊗ 1 - 1 ⊗ δ_N: M ⊗_A N → M ⊗_A C ⊗_A N`.
pub fn cotensor_over(m: &Comodule, n: &Comodule) -> Result<Cotensor> {
    if m.side() != Side::Right || n.side() != Side::Left {
        return Err(Error::Shape("cotensor needs a right and a left comodule".into()));
    }
    if m.coring.complex() != n.coring.complex() || m.coring.base.complex != n.coring.base.complex {
        return Err(Error::BaseMismatch("comodules over different corings".into()));
    }
    let field = m.coring.field();
    let mn = tensor_over(&m.module, &n.module)?;
    let mc_right = m.target.induced_right(&m.coring.bimodule.right)?;
    let mcn = tensor_over(&mc_right, &n.module)?;
    let f = mn.map_from(mcn.complex(), 0, |x, y| {
        let dx = m.coaction.image_of(x.0, x.1);
        let mut v = mcn.class(x.0, &dx, y.0, &SparseVec::unit(y.1, field));
        for (s, c, y2) in n.coaction_terms(y) {
            let xc = m.target.class_cells(x, c);
            v.axpy(&s.neg(), &mcn.class(x.0 + c.0, &xc, y2.0, &SparseVec::unit(y2.1, field)));
        }
        v
    })?;
    let equalizer = SubComplex::kernel(&f)?;
    Ok(Cotensor { tensor: mn, equalizer })
}

/// `{ b : δ(b) = b ⊗ g }` for a right comodule over a coaugmented coring.
pub fn coinvariants(b: &Comodule) -> Result<SubComplex> {
    if b.side() != Side::Right {
        return Err(Error::Shape("coinvariants of a right comodule".into()));
    }
    let g = b
        .coring
        .coaugmentation
        .clone()
        .ok_or_else(|| Error::Shape("coinvariants need a coaugmented coring".into()))?;
    let field = b.coring.field();
    let f = ChainMap::linear_from_fn(b.complex(), b.target.complex(), 0, |n, i| {
        let e = SparseVec::unit(i, field);
        b.coaction.image_of(n, i).sub(&b.target.class(n, &e, 0, &g))
    })?;
    SubComplex::kernel(&f)
}
