use std::collections::BTreeMap;

use super::balanced::{tensor_over, Balanced};
use super::coring::Coring;
use super::module::{AModule, Bimodule, Side};
use crate::chain::ChainMap;
use crate::dg::AlgebraMap;
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::monoidal::Cell;
use crate::report::CheckReport;

/// `φ_*(M) = M ⊗_A B` with `B` acting by right multiplication.
#[derive(Clone, Debug)]
pub struct Extended {
    pub module: AModule,
    pub tensor: Balanced,
}

pub fn extend_scalars(phi: &AlgebraMap, m: &AModule) -> Result<Extended> {
    if m.side != Side::Right {
        return Err(Error::Shape("extension of scalars takes a right module".into()));
    }
    if m.alg.complex != phi.source.complex {
        return Err(Error::BaseMismatch("module is not over the source of the algebra map".into()));
    }
    let bl = AModule::regular(&phi.target, Side::Left).restrict(phi)?;
    let tensor = tensor_over(m, &bl)?;
    let module = tensor.induced_right(&AModule::regular(&phi.target, Side::Right))?;
    Ok(Extended { module, tensor })
}

/// `φ^*(N)`: the same complex acted on through `φ`.
pub fn restrict_scalars(phi: &AlgebraMap, n: &AModule) -> Result<AModule> {
    if n.side != Side::Right {
        return Err(Error::Shape("restriction of scalars takes a right module".into()));
    }
    n.restrict(phi)
}

/// `η_M: M → φ^*φ_*(M)`, `m ↦ [m ⊗ 1]`.
pub fn adjunction_unit(phi: &AlgebraMap, m: &AModule) -> Result<(Extended, ChainMap)> {
    let ext = extend_scalars(phi, m)?;
    let one = phi.target.one();
    let field = m.complex.field();
    let f = ChainMap::linear_from_fn(&m.complex, ext.tensor.complex(), 0, |n, i| ext.tensor.class(n, &SparseVec::unit(i, field), 0, &one))?;
    Ok((ext, f))
}

/// `ε_N: φ_*φ^*(N) → N`, `[n ⊗ b] ↦ n b`.
pub fn adjunction_counit(phi: &AlgebraMap, n: &AModule) -> Result<(Extended, ChainMap)> {
    let ext = extend_scalars(phi, &restrict_scalars(phi, n)?)?;
    let f = ext.tensor.map_from(&n.complex, 0, |x, b| n.act_cells(x, b))?;
    Ok((ext, f))
}

/// Linearity of the unit and counit and both triangle identities, at the right
/// `A`-module `m` and the right `B`-module `n`.
pub fn verify_adjunction(phi: &AlgebraMap, m: &AModule, n: &AModule) -> Result<CheckReport> {
    let mut rep = CheckReport::new("extension/restriction adjunction");
    let field = m.complex.field();
    let (ext, unit) = adjunction_unit(phi, m)?;
    let (_, counit) = adjunction_counit(phi, n)?;
    for (name, f) in [("unit is a chain map", &unit), ("counit is a chain map", &counit)] {
        rep.checked(name);
        for x in f.verify().failures {
            rep.fail(name, x.degree, x.witness, x.detail);
        }
    }

    rep.checked("unit A-linear");
    for x in m.complex.space().elements() {
        for a in phi.source.complex.space().elements() {
            let k = x.0 + a.0;
            if !m.window().contains(k) {
                continue;
            }
            let l = unit.apply(k, &m.act_cells(x, a));
            let r = ext.module.act(x.0, &unit.image_of(x.0, x.1), a.0, &phi.map.image_of(a.0, a.1));
            if l != r {
                rep.fail("unit A-linear", Some(k), vec![m.complex.label(x.0, x.1).into(), phi.source.label(a).into()], "η(m a) != η(m) φ(a)");
            }
        }
    }

    // ε_{φ_* M} ∘ φ_*(η_M) = id.
    rep.checked("triangle at φ_*M");
    let (ext2, eps2) = adjunction_counit(phi, &ext.module)?;
    let lift = ext.tensor.map_from(ext2.tensor.complex(), 0, |x, b| {
        let eta = ext.tensor.class(x.0, &SparseVec::unit(x.1, field), 0, &phi.target.one());
        ext2.tensor.class(x.0, &eta, b.0, &SparseVec::unit(b.1, field))
    })?;
    if eps2.compose(&lift)? != ChainMap::identity(ext.tensor.complex()) {
        rep.fail("triangle at φ_*M", None, vec![], "ε φ_*(η) != id");
    }

    // φ^*(ε_N) ∘ η_{φ^* N} = id.
    rep.checked("triangle at φ^*N");
    let (_, eta_n) = adjunction_unit(phi, &restrict_scalars(phi, n)?)?;
    if counit.compose(&eta_n)? != ChainMap::identity(&n.complex) {
        rep.fail("triangle at φ^*N", None, vec![], "φ^*(ε) η != id");
    }
    Ok(rep)
}

/// `φ_*(C) = B ⊗_A C ⊗_A B` as a `B`-coring.
#[derive(Clone, Debug)]
pub struct Pushforward {
    pub phi: AlgebraMap,
    pub coring: Coring,
    /// `B ⊗_A C`.
    pub bc: Balanced,
    /// `(B ⊗_A C) ⊗_A B`.
    pub bcb: Balanced,
}

impl Pushforward {
    /// Class of `u ⊗ x ⊗ v` for `u ∈ B_p`, `x` a cell of `C`, `v ∈ B_q`.
    pub fn elem(&self, p: i64, u: &SparseVec, x: Cell, q: i64, v: &SparseVec) -> SparseVec {
        triple_class(&self.bc, &self.bcb, p, u, x, q, v)
    }
}

fn triple_class(bc: &Balanced, bcb: &Balanced, p: i64, u: &SparseVec, x: Cell, q: i64, v: &SparseVec) -> SparseVec {
    let ux = bc.class(p, u, x.0, &SparseVec::unit(x.1, bc.complex().field()));
    bcb.class(p + x.0, &ux, q, v)
}

/// `Δ(b ⊗ c ⊗ b') = Σ (b ⊗ c₁ ⊗ 1) ⊗_B (1 ⊗ c₂ ⊗ b')`, `ε(b ⊗ c ⊗ b') = b φ(ε c) b'`.
pub fn coring_pushforward(phi: &AlgebraMap, c: &Coring) -> Result<Pushforward> {
    if c.base.complex != phi.source.complex {
        return Err(Error::BaseMismatch("coring is not over the source of the algebra map".into()));
    }
    let b = &phi.target;
    let field = c.field();
    let one = b.one();
    let br = AModule::regular(b, Side::Right).restrict(phi)?;
    let bl = AModule::regular(b, Side::Left).restrict(phi)?;
    let bc = tensor_over(&br, &c.bimodule.left)?;
    let bcb = tensor_over(&bc.induced_right(&c.bimodule.right)?, &bl)?;
    let left = bcb.induced_left(&bc.induced_left(&AModule::regular(b, Side::Left))?)?;
    let right = bcb.induced_right(&AModule::regular(b, Side::Right))?;
    let bim = Bimodule::new(left, right)?;
    let dd = tensor_over(&bim.right, &bim.left)?;
    let unit = |x: Cell| SparseVec::unit(x.1, field);
    let mut terms = BTreeMap::new();
    for n in bcb.complex().window().degrees() {
        for k in 0..bcb.dim(n) {
            let mut ts = Vec::new();
            for (s, ux, bp) in bcb.lift_terms(n, &SparseVec::unit(k, field)) {
                for (t, bx, cx) in bc.lift_terms(ux.0, &unit(ux)) {
                    ts.push((s.mul(&t), bx, cx, bp));
                }
            }
            terms.insert((n, k), ts);
        }
    }
    let delta = |k: Cell| {
        let mut out = SparseVec::new();
        for (s, bx, cx, bp) in &terms[&k] {
            for (r, c1, c2) in c.delta_terms(*cx) {
                let l = triple_class(&bc, &bcb, bx.0, &unit(*bx), c1, 0, &one);
                let rr = triple_class(&bc, &bcb, 0, &one, c2, bp.0, &unit(*bp));
                out.axpy(&s.mul(&r), &dd.class(bx.0 + c1.0, &l, c2.0 + bp.0, &rr));
            }
        }
        out
    };
    let eps = |k: Cell| {
        let mut out = SparseVec::new();
        for (s, bx, cx, bp) in &terms[&k] {
            let e = phi.map.apply(cx.0, &c.counit_vec(*cx));
            let be = b.mul(bx.0, &unit(*bx), cx.0, &e);
            out.axpy(s, &b.mul(bx.0 + cx.0, &be, bp.0, &unit(*bp)));
        }
        out
    };
    let coaug = c.coaugmentation.as_ref().map(|g| {
        let ug = bc.class(0, &one, 0, g);
        bcb.class(0, &ug, 0, &one)
    });
    let coring = Coring::from_fn(&bim, delta, eps, coaug)?;
    Ok(Pushforward { phi: phi.clone(), coring, bc, bcb })
}
