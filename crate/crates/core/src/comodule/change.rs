use super::balanced::tensor_over;
use super::comodule::{cotensor_over, Comodule, Cotensor};
use super::coring::Coring;
use super::module::{AModule, Side};
use super::scalars::{coring_pushforward, extend_scalars};
use crate::chain::ChainMap;
use crate::dg::AlgebraMap;
use crate::error::{Error, Result};
use crate::linalg::{rank, solve, SparseVec};
use crate::monoidal::Cell;
use crate::report::CheckReport;

/// A morphism of corings over a fixed base.
#[derive(Clone, Debug)]
pub struct CoringMap {
    pub source: Coring,
    pub target: Coring,
    pub map: ChainMap,
}

impl CoringMap {
    pub fn new(source: &Coring, target: &Coring, map: ChainMap) -> Result<CoringMap> {
        let f = CoringMap { source: source.clone(), target: target.clone(), map };
        verify_coring_map(&f).into_result()?;
        Ok(f)
    }

    pub fn from_fn(source: &Coring, target: &Coring, image: impl FnMut(i64, usize) -> SparseVec) -> Result<CoringMap> {
        let map = ChainMap::linear_from_fn(source.complex(), target.complex(), 0, image)?;
        CoringMap::new(source, target, map)
    }

    pub fn identity(c: &Coring) -> CoringMap {
        CoringMap { source: c.clone(), target: c.clone(), map: ChainMap::identity(c.complex()) }
    }

    pub fn image_of(&self, x: Cell) -> SparseVec {
        self.map.image_of(x.0, x.1)
    }
}

pub fn verify_coring_map(f: &CoringMap) -> CheckReport {
    let mut rep = CheckReport::new("coring map");
    let (c, d) = (&f.source, &f.target);
    if c.base.complex != d.base.complex {
        rep.fail("same base", None, vec![], "corings over different algebras");
        return rep;
    }
    rep.checked("chain map");
    for x in f.map.verify().failures {
        rep.fail("chain map", x.degree, x.witness, x.detail);
    }
    for a in ["bilinear", "comultiplicative", "counital"] {
        rep.checked(a);
    }
    let field = c.field();
    let w = c.window();
    for x in c.complex().space().elements() {
        let fx = f.image_of(x);
        for p in c.base.complex.space().elements() {
            let n = x.0 + p.0;
            if !w.contains(n) {
                continue;
            }
            let ep = SparseVec::unit(p.1, field);
            let l = f.map.apply(n, &c.bimodule.left.act_cells(x, p)) == d.bimodule.left.act(x.0, &fx, p.0, &ep);
            let r = f.map.apply(n, &c.bimodule.right.act_cells(x, p)) == d.bimodule.right.act(x.0, &fx, p.0, &ep);
            if !(l && r) {
                rep.fail("bilinear", Some(n), vec![c.label(x).into(), c.base.label(p).into()], "f does not commute with the actions");
            }
        }
        let mut ff = SparseVec::new();
        for (s, y, z) in c.delta_terms(x) {
            ff.axpy(&s, &d.cc.class(y.0, &f.image_of(y), z.0, &f.image_of(z)));
        }
        if d.delta.apply(x.0, &fx) != ff {
            rep.fail("comultiplicative", Some(x.0), vec![c.label(x).into()], "Δ f != (f ⊗ f) Δ");
        }
        if d.eps.apply(x.0, &fx) != c.counit_vec(x) {
            rep.fail("counital", Some(x.0), vec![c.label(x).into()], "ε f != ε");
        }
    }
    rep
}

/// `f: S → T` commutes with the module actions and the coactions.
pub fn verify_comodule_map(s: &Comodule, t: &Comodule, f: &ChainMap) -> CheckReport {
    let mut rep = CheckReport::new("comodule map");
    if s.coring.complex() != t.coring.complex() || s.side() != t.side() {
        rep.fail("same coring", None, vec![], "comodules over different corings or sides");
        return rep;
    }
    rep.checked("chain map");
    for x in f.verify().failures {
        rep.fail("chain map", x.degree, x.witness, x.detail);
    }
    rep.checked("linear");
    rep.checked("colinear");
    let field = s.coring.field();
    let w = s.complex().window();
    let unit = |x: Cell| SparseVec::unit(x.1, field);
    for x in s.complex().space().elements() {
        let fx = f.image_of(x.0, x.1);
        for p in s.coring.base.complex.space().elements() {
            let n = x.0 + p.0;
            if w.contains(n) && f.apply(n, &s.module.act_cells(x, p)) != t.module.act(x.0, &fx, p.0, &unit(p)) {
                rep.fail("linear", Some(n), vec![s.label(x).into(), s.coring.base.label(p).into()], "f is not A-linear");
            }
        }
        let mut l = SparseVec::new();
        for (c, y, z) in s.coaction_terms(x) {
            let v = match s.side() {
                Side::Right => t.target.class(y.0, &f.image_of(y.0, y.1), z.0, &unit(z)),
                Side::Left => t.target.class(y.0, &unit(y), z.0, &f.image_of(z.0, z.1)),
            };
            l.axpy(&c, &v);
        }
        if t.coaction.apply(x.0, &fx) != l {
            rep.fail("colinear", Some(x.0), vec![s.label(x).into()], "δ f != (f ⊗ 1) δ");
        }
    }
    rep
}

/// A complex with a left coaction of one coring and a right coaction of
/// another; both comodules must share the underlying complex.
#[derive(Clone, Debug)]
pub struct Bicomodule {
    pub left: Comodule,
    pub right: Comodule,
}

/// `M □_D X` with the right coaction inherited from `X`.
#[derive(Clone, Debug)]
pub struct PullBack {
    pub comodule: Comodule,
    pub cotensor: Cotensor,
}

/// `M □_D X` for a right `D`-comodule `M` and a `(D, C)`-bicomodule `X`. The
/// coaction is `1 ⊗ δ_X` restricted to the equalizer, which needs
/// `(M □ X) ⊗_A C → (M ⊗ X) ⊗_A C` to be injective.
pub fn cotensor_comodule(m: &Comodule, x: &Bicomodule) -> Result<PullBack> {
    if x.left.complex() != x.right.complex() || x.left.side() != Side::Left || x.right.side() != Side::Right {
        return Err(Error::Shape("bicomodule needs a left and a right coaction on one complex".into()));
    }
    let cot = cotensor_over(m, &x.left)?;
    let c = &x.right.coring;
    let field = c.field();
    let unit = |x: Cell| SparseVec::unit(x.1, field);
    let e = &cot.equalizer;
    let mx = cot.tensor.induced_right(&x.right.module)?;
    let mut closed = true;
    let e_mod = AModule::from_fn(&c.base, &e.complex, Side::Right, |k, a| {
        let v = mx.act(k.0, &e.include(k.0, &unit(k)), a.0, &unit(a));
        e.coordinates(k.0 + a.0, &v).unwrap_or_else(|| {
            closed = false;
            SparseVec::new()
        })
    })?;
    if !closed {
        return Err(Error::Construction("cotensor is not closed under the right action".into()));
    }
    let ec = tensor_over(&e_mod, &c.bimodule.left)?;
    let mxc = tensor_over(&mx, &c.bimodule.left)?;
    let j = ec.map_from(mxc.complex(), 0, |k, y| mxc.class(k.0, &e.include(k.0, &unit(k)), y.0, &unit(y)))?;
    for n in ec.complex().window().degrees() {
        if rank(&j.block(n))? != ec.dim(n) {
            return Err(Error::Witness(format!("flatness gate: (M □ X) ⊗_A C does not inject into (M ⊗ X) ⊗_A C in degree {n}")));
        }
    }
    let one_delta = cot.tensor.map_from(mxc.complex(), 0, |p, q| {
        let mut out = SparseVec::new();
        for (s, x0, z) in x.right.coaction_terms(q) {
            out.axpy(&s, &mxc.class(p.0 + x0.0, &cot.tensor.class_cells(p, x0), z.0, &unit(z)));
        }
        out
    })?;
    let mut err = None;
    let comodule = Comodule::from_fn(c, &e_mod, |k| {
        let v = one_delta.apply(k.0, &e.include(k.0, &unit(k)));
        match solve(&j.block(k.0), &v) {
            Ok(Some(s)) => s,
            Ok(None) => {
                err.get_or_insert(Error::Construction(format!("coaction leaves the cotensor in degree {}", k.0)));
                SparseVec::new()
            }
            Err(e) => {
                err.get_or_insert(e.into());
                SparseVec::new()
            }
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(PullBack { comodule, cotensor: cot })
}

/// `f_*(M, δ) = (M, (1 ⊗ f) δ)`.
pub fn push_forward(f: &CoringMap, m: &Comodule) -> Result<Comodule> {
    if m.coring.complex() != f.source.complex() {
        return Err(Error::BaseMismatch("comodule is not over the source coring".into()));
    }
    let field = f.source.field();
    let d = &f.target;
    let tgt = match m.side() {
        Side::Right => tensor_over(&m.module, &d.bimodule.left)?,
        Side::Left => tensor_over(&d.bimodule.right, &m.module)?,
    };
    Comodule::from_fn(d, &m.module, |x| {
        let mut out = SparseVec::new();
        for (s, y, z) in m.coaction_terms(x) {
            let v = match m.side() {
                Side::Right => tgt.class(y.0, &SparseVec::unit(y.1, field), z.0, &f.image_of(z)),
                Side::Left => tgt.class(y.0, &f.image_of(y), z.0, &SparseVec::unit(z.1, field)),
            };
            out.axpy(&s, &v);
        }
        out
    })
}

/// `C` as a `(D, C)`-bicomodule through `(f ⊗ 1) Δ` and `Δ`.
pub fn source_bicomodule(f: &CoringMap) -> Result<Bicomodule> {
    let (c, d) = (&f.source, &f.target);
    let field = c.field();
    let tgt = tensor_over(&d.bimodule.right, &c.bimodule.left)?;
    let left = Comodule::from_fn(d, &c.bimodule.left, |x| {
        let mut out = SparseVec::new();
        for (s, y, z) in c.delta_terms(x) {
            out.axpy(&s, &tgt.class(y.0, &f.image_of(y), z.0, &SparseVec::unit(z.1, field)));
        }
        out
    })?;
    Ok(Bicomodule { left, right: Comodule::regular(c, Side::Right)? })
}

/// `f^*(M) = M □_D C`.
pub fn pull_back(f: &CoringMap, m: &Comodule) -> Result<PullBack> {
    if m.coring.complex() != f.target.complex() {
        return Err(Error::BaseMismatch("comodule is not over the target coring".into()));
    }
    cotensor_comodule(m, &source_bicomodule(f)?)
}

/// `f_* f^*(M) → M`, `Σ m ⊗ c ↦ Σ m ε(c)`.
pub fn pull_counit(f: &CoringMap, pb: &PullBack, m: &Comodule) -> Result<ChainMap> {
    let field = f.source.field();
    let amb = pb
        .cotensor
        .tensor
        .map_from(m.complex(), 0, |x, y| m.module.act(x.0, &SparseVec::unit(x.1, field), y.0, &f.source.counit_vec(y)))?;
    amb.compose(&pb.cotensor.equalizer.inclusion())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoringDirection {
    Push,
    Pull,
}

pub fn change_of_corings(f: &CoringMap, m: &Comodule, direction: CoringDirection) -> Result<Comodule> {
    verify_coring_map(f).into_result()?;
    match direction {
        CoringDirection::Push => push_forward(f, m),
        CoringDirection::Pull => Ok(pull_back(f, m)?.comodule),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Canonical {
    Can,
    Prim,
}

/// `Can_φ(M) = M ⊗_A B` with coaction `m ⊗ b ↦ Σ (m₀ ⊗ 1) ⊗_B (1 ⊗ m₁ ⊗ b)`.
pub fn can(phi: &AlgebraMap, m: &Comodule) -> Result<Comodule> {
    if m.side() != Side::Right {
        return Err(Error::Shape("Can takes a right comodule".into()));
    }
    let pf = coring_pushforward(phi, &m.coring)?;
    let ext = extend_scalars(phi, &m.module)?;
    let field = phi.target.field();
    let one = phi.target.one();
    let d = &pf.coring;
    let tgt = tensor_over(&ext.module, &d.bimodule.left)?;
    Comodule::from_fn(d, &ext.module, |k| {
        let mut out = SparseVec::new();
        for (s, x, b) in ext.tensor.lift_terms(k.0, &SparseVec::unit(k.1, field)) {
            for (t, x0, c1) in m.coaction_terms(x) {
                let l = ext.tensor.class(x0.0, &SparseVec::unit(x0.1, field), 0, &one);
                let r = pf.elem(0, &one, c1, b.0, &SparseVec::unit(b.1, field));
                out.axpy(&s.mul(&t), &tgt.class(x0.0, &l, c1.0 + b.0, &r));
            }
        }
        out
    })
}

/// `B ⊗_A C` as a `(φ_*C, C)`-bicomodule.
pub fn canonical_bicomodule(phi: &AlgebraMap, c: &Coring) -> Result<Bicomodule> {
    let pf = coring_pushforward(phi, c)?;
    let field = c.field();
    let one = phi.target.one();
    let unit = |x: Cell| SparseVec::unit(x.1, field);
    let lm = pf.bc.induced_left(&AModule::regular(&phi.target, Side::Left))?;
    let rm = pf.bc.induced_right(&c.bimodule.right)?;
    let d = &pf.coring;
    let ltgt = tensor_over(&d.bimodule.right, &lm)?;
    let rtgt = tensor_over(&rm, &c.bimodule.left)?;
    let split = |k: Cell, f: &dyn Fn(Cell, Cell, Cell) -> SparseVec| {
        let mut out = SparseVec::new();
        for (s, b, x) in pf.bc.lift_terms(k.0, &unit(k)) {
            for (t, c1, c2) in c.delta_terms(x) {
                out.axpy(&s.mul(&t), &f(b, c1, c2));
            }
        }
        out
    };
    let left = Comodule::from_fn(d, &lm, |k| {
        split(k, &|b, c1, c2| ltgt.class(b.0 + c1.0, &pf.elem(b.0, &unit(b), c1, 0, &one), c2.0, &pf.bc.class(0, &one, c2.0, &unit(c2))))
    })?;
    let right = Comodule::from_fn(c, &rm, |k| split(k, &|b, c1, c2| rtgt.class(b.0 + c1.0, &pf.bc.class_cells(b, c1), c2.0, &unit(c2))))?;
    Ok(Bicomodule { left, right })
}

/// `Prim_φ(N) = N □_{φ_*C} (B ⊗_A C)` for a right `φ_*C`-comodule `N`.
pub fn prim(phi: &AlgebraMap, c: &Coring, n: &Comodule) -> Result<PullBack> {
    let x = canonical_bicomodule(phi, c)?;
    if n.coring.complex() != x.left.coring.complex() {
        return Err(Error::BaseMismatch("comodule is not over the pushed-forward coring".into()));
    }
    cotensor_comodule(n, &x)
}

pub fn canonical_functors(phi: &AlgebraMap, c: &Coring, m: &Comodule, direction: Canonical) -> Result<Comodule> {
    match direction {
        Canonical::Can => {
            if m.coring.complex() != c.complex() {
                return Err(Error::BaseMismatch("comodule is not over the given coring".into()));
            }
            can(phi, m)
        }
        Canonical::Prim => Ok(prim(phi, c, m)?.comodule),
    }
}

/// The unit `M → Prim_φ Can_φ(M)`, `m ↦ Σ (m₀ ⊗ 1) ⊗ (1 ⊗ m₁)`.
pub fn can_prim_unit(phi: &AlgebraMap, m: &Comodule) -> Result<(PullBack, ChainMap)> {
    let cm = can(phi, m)?;
    let pb = prim(phi, &m.coring, &cm)?;
    let ext = extend_scalars(phi, &m.module)?;
    let pf = coring_pushforward(phi, &m.coring)?;
    let field = phi.target.field();
    let one = phi.target.one();
    let t = &pb.cotensor.tensor;
    let mut err = None;
    let f = ChainMap::linear_from_fn(m.complex(), pb.comodule.complex(), 0, |n, i| {
        let mut v = SparseVec::new();
        for (s, x0, c1) in m.coaction_terms((n, i)) {
            let l = ext.tensor.class(x0.0, &SparseVec::unit(x0.1, field), 0, &one);
            let r = pf.bc.class(0, &one, c1.0, &SparseVec::unit(c1.1, field));
            v.axpy(&s, &t.class(x0.0, &l, c1.0, &r));
        }
        pb.cotensor.equalizer.coordinates(n, &v).unwrap_or_else(|| {
            err.get_or_insert(Error::Construction(format!("unit leaves the cotensor in degree {n}")));
            SparseVec::new()
        })
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok((pb, f))
}
