use super::structures::{coinvariant_algebra, verify_comod_alg_morphism, ComodAlgMorphism, ComodAlgebra, ModuleCoalgebra};
use crate::chain::{ChainComplex, ChainMap};
use crate::comodule::{coring_pushforward, tensor_over, AModule, Balanced, Bimodule, Coring, CoringMap, Pushforward, Side};
use crate::dg::{AlgebraMap, BialgebraMap, DGAlgebra, DGBialgebra, DGCoalgebra};
use crate::error::{Error, Result};
use crate::linalg::{rank, SparseVec};
use crate::monoidal::{Cell, Tensor};
use crate::report::CheckReport;

fn unit(c: Cell, field: crate::linalg::Field) -> SparseVec {
    SparseVec::unit(c.1, field)
}

/// The descent coring `B ⊗_A B` of `φ: A → B`.
#[derive(Clone, Debug)]
pub struct Desc {
    pub phi: AlgebraMap,
    pub coring: Coring,
    pub tensor: Balanced,
}

impl Desc {
    /// The coaugmentations `b ↦ b ⊗ 1` and `b ↦ 1 ⊗ b`.
    pub fn coaugmentations(&self) -> Result<(ChainMap, ChainMap)> {
        let b = &self.phi.target;
        let field = b.field();
        let one = b.one();
        let t = &self.tensor;
        let l = ChainMap::linear_from_fn(&b.complex, t.complex(), 0, |n, i| t.class(n, &SparseVec::unit(i, field), 0, &one))?;
        let r = ChainMap::linear_from_fn(&b.complex, t.complex(), 0, |n, i| t.class(0, &one, n, &SparseVec::unit(i, field)))?;
        Ok((l, r))
    }
}

/// `Δ(b ⊗ b') = (b ⊗ 1) ⊗_B (1 ⊗ b')`, `ε(b ⊗ b') = b b'`.
pub fn desc(phi: &AlgebraMap) -> Result<Desc> {
    let b = &phi.target;
    let field = b.field();
    let one = b.one();
    let br = AModule::regular(b, Side::Right).restrict(phi)?;
    let bl = AModule::regular(b, Side::Left).restrict(phi)?;
    let t = tensor_over(&br, &bl)?;
    let left = t.induced_left(&AModule::regular(b, Side::Left))?;
    let right = t.induced_right(&AModule::regular(b, Side::Right))?;
    let bim = Bimodule::new(left, right)?;
    let cc = tensor_over(&bim.right, &bim.left)?;
    let delta = |k: Cell| {
        let mut out = SparseVec::new();
        for (s, x, y) in t.lift_terms(k.0, &unit(k, field)) {
            let l = t.class(x.0, &unit(x, field), 0, &one);
            let r = t.class(0, &one, y.0, &unit(y, field));
            out.axpy(&s, &cc.class(x.0, &l, y.0, &r));
        }
        out
    };
    let eps = |k: Cell| {
        let mut out = SparseVec::new();
        for (s, x, y) in t.lift_terms(k.0, &unit(k, field)) {
            out.axpy(&s, &b.mul_cells(x, y));
        }
        out
    };
    let coaug = t.class(0, &one, 0, &one);
    let coring = Coring::new(&bim, delta, eps, Some(coaug))?;
    Ok(Desc { phi: phi.clone(), coring, tensor: t })
}

/// The Hopf coring `A ⊗ C` of a comodule algebra and a module coalgebra.
#[derive(Clone, Debug)]
pub struct HopfCoring {
    pub comod: ComodAlgebra,
    pub module: ModuleCoalgebra,
    /// `A ⊗ C`.
    pub layout: Tensor,
    pub coring: Coring,
}

impl HopfCoring {
    pub fn elem(&self, p: i64, a: &SparseVec, q: i64, c: &SparseVec) -> SparseVec {
        self.layout.layout.pure(&[(p, a), (q, c)]).1
    }
}

/// Left action `a'(a ⊗ c) = a'a ⊗ c`; right action
/// `(a ⊗ c) a' = Σ (−1)^{|c||a'₀|} a a'₀ ⊗ c·a'₁`; `Δ = A ⊗ Δ_C`, `ε = A ⊗ ε_C`.
pub fn hopf(ca: &ComodAlgebra, mc: &ModuleCoalgebra) -> Result<HopfCoring> {
    if ca.h.complex() != mc.h.complex() || ca.h.alg.mu != mc.h.alg.mu || ca.h.coalg.delta != mc.h.coalg.delta {
        return Err(Error::BaseMismatch("comodule algebra and module coalgebra over different bialgebras".into()));
    }
    let a = &ca.alg;
    let c = &mc.coalg;
    let field = a.field();
    let one = a.one();
    let t = Tensor::pair(&a.complex, &c.complex, a.window())?;
    let pure = |p: i64, u: &SparseVec, q: i64, v: &SparseVec| t.layout.pure(&[(p, u), (q, v)]).1;
    let left = AModule::from_fn(a, &t.complex, Side::Left, |m, x| {
        let k = t.layout.key(m.0, m.1);
        pure(x.0 + k[0].0, &a.mul_cells(x, k[0]), k[1].0, &unit(k[1], field))
    })?;
    let right = AModule::from_fn(a, &t.complex, Side::Right, |m, x| {
        let k = t.layout.key(m.0, m.1);
        let mut out = SparseVec::new();
        for (s, x0, h) in ca.coaction_terms(x) {
            let ax = a.mul_cells(k[0], x0);
            let ch = mc.act_cells(k[1], h);
            if ax.is_zero() || ch.is_zero() {
                continue;
            }
            let s = s.mul(&field.sign(k[1].0 * x0.0));
            out.axpy(&s, &pure(k[0].0 + x0.0, &ax, k[1].0 + h.0, &ch));
        }
        out
    })?;
    let bim = Bimodule::new(left, right)?;
    let cc = tensor_over(&bim.right, &bim.left)?;
    let delta = |m: Cell| {
        let k = t.layout.key(m.0, m.1);
        let mut out = SparseVec::new();
        for (s, c1, c2) in c.delta_terms(k[1]) {
            let l = pure(k[0].0, &unit(k[0], field), c1.0, &unit(c1, field));
            let r = pure(0, &one, c2.0, &unit(c2, field));
            out.axpy(&s, &cc.class(k[0].0 + c1.0, &l, c2.0, &r));
        }
        out
    };
    let eps = |m: Cell| {
        let k = t.layout.key(m.0, m.1);
        unit(k[0], field).scaled(&c.counit(k[1]))
    };
    let coaug = c.unit().map(|g| pure(0, &one, 0, &g));
    let coring = Coring::new(&bim, delta, eps, coaug)?;
    Ok(HopfCoring { comod: ca.clone(), module: mc.clone(), layout: t, coring })
}

/// `hopf(ρ, μ)`: the bialgebra acting on itself.
pub fn hopf_regular(ca: &ComodAlgebra) -> Result<HopfCoring> {
    hopf(ca, &ModuleCoalgebra::regular(&ca.h))
}

/// `Cof(Γ) = R ⊗_H K` with the structure pushed down from `K`.
#[derive(Clone, Debug)]
pub struct Cof {
    pub gamma: BialgebraMap,
    pub tensor: Balanced,
    pub module: ModuleCoalgebra,
    /// `π_Γ: K → Cof(Γ)`, `k ↦ [1 ⊗ k]`.
    pub pi: ChainMap,
}

pub fn cof(gamma: &BialgebraMap) -> Result<Cof> {
    let h = &gamma.source;
    let k = &gamma.target;
    let field = k.field();
    let w = k.window();
    let ground = ChainComplex::ground(field, w);
    let r = SparseVec::unit(0, field);
    let r_eps = AModule::from_fn(&h.alg, &ground, Side::Right, |m, x| {
        let e = h.coalg.counit(x);
        if e.is_zero() {
            SparseVec::new()
        } else {
            unit(m, field).scaled(&e)
        }
    })?;
    let k_gamma = AModule::regular(&k.alg, Side::Left).restrict(&gamma.algebra_map())?;
    let t = tensor_over(&r_eps, &k_gamma)?;
    let pi = ChainMap::linear_from_fn(k.complex(), t.complex(), 0, |n, i| t.class(0, &r, n, &SparseVec::unit(i, field)))?;
    let cc = Tensor::pair(t.complex(), t.complex(), w)?;
    let dmap = t.map_from(&cc.complex, 0, |_, y| {
        let mut out = SparseVec::new();
        for (s, y1, y2) in k.coalg.delta_terms(y) {
            let (_, v) = cc.layout.pure(&[(y1.0, &pi.image_of(y1.0, y1.1)), (y2.0, &pi.image_of(y2.0, y2.1))]);
            out.axpy(&s, &v);
        }
        out
    })?;
    let emap = t.map_from(&ground, 0, |_, y| r.scaled(&k.coalg.counit(y)))?;
    let one = k.alg.one();
    let coalg = DGCoalgebra::new(
        t.complex(),
        |q| cc.layout.terms(q.0, &dmap.image_of(q.0, q.1)).map(|(s, key)| (s.clone(), key[0], key[1])).collect(),
        |q| emap.image_of(q.0, q.1).get(0).cloned().unwrap_or_else(|| field.zero()),
        Some(pi.apply(0, &one)),
    )?;
    let module = ModuleCoalgebra::new(k, &coalg, |q, x| {
        let mut out = SparseVec::new();
        for (s, rr, y) in t.lift_terms(q.0, &unit(q, field)) {
            out.axpy(&s, &t.class(rr.0, &unit(rr, field), y.0 + x.0, &k.alg.mul_cells(y, x)));
        }
        out
    })?;
    Ok(Cof { gamma: gamma.clone(), tensor: t, module, pi })
}

/// The Galois coring morphism `B ⊗_A B → B ⊗ Cof(Γ)`.
#[derive(Clone, Debug)]
pub struct Galois {
    pub morphism: ComodAlgMorphism,
    pub desc: Desc,
    pub cof: Cof,
    pub hopf: HopfCoring,
    pub map: CoringMap,
}

impl Galois {
    /// Per degree: `(degree, rank, dim source, dim target)`.
    pub fn ranks(&self) -> Result<Vec<(i64, usize, usize, usize)>> {
        let f = &self.map.map;
        let mut out = Vec::new();
        for n in f.source.window().degrees() {
            out.push((n, rank(&f.block(n))?, f.source.dim(n), f.target.dim(n)));
        }
        Ok(out)
    }

    pub fn invertible(&self) -> Result<bool> {
        Ok(self.ranks()?.iter().all(|&(_, r, s, t)| r == s && r == t))
    }
}

/// `[b ⊗ b'] ↦ Σ b b'₀ ⊗ π(b'₁)`, checked to be a coring map.
pub fn galois(m: &ComodAlgMorphism) -> Result<Galois> {
    verify_comod_alg_morphism(m).into_result()?;
    let b = &m.target;
    let desc = desc(&m.phi)?;
    let cof = cof(&m.gamma)?;
    let hopf = hopf(b, &cof.module)?;
    let map = desc.tensor.map_from(hopf.coring.complex(), 0, |x, y| {
        let mut out = SparseVec::new();
        for (s, y0, k1) in b.coaction_terms(y) {
            let xy = b.alg.mul_cells(x, y0);
            if xy.is_zero() {
                continue;
            }
            out.axpy(&s, &hopf.elem(x.0 + y0.0, &xy, k1.0, &cof.pi.image_of(k1.0, k1.1)));
        }
        out
    })?;
    let map = CoringMap::new(&desc.coring, &hopf.coring, map)?;
    Ok(Galois { morphism: m.clone(), desc, cof, hopf, map })
}

/// The outcome of `relative_hopf_check`.
#[derive(Clone, Debug)]
pub struct RelativeHopf {
    pub report: CheckReport,
    pub galois: Galois,
}

/// Whether `K ⊗_H K → K ⊗ Cof(Γ)` is invertible.
pub fn relative_hopf_check(gamma: &BialgebraMap) -> Result<RelativeHopf> {
    let source = ComodAlgebra::regular(&gamma.source);
    let target = ComodAlgebra::regular(&gamma.target);
    let m = ComodAlgMorphism::new(gamma, &source, &target, &gamma.algebra_map())?;
    let galois = galois(&m)?;
    let mut report = CheckReport::new("relative Hopf algebra");
    report.checked("Galois map invertible");
    for (n, r, s, t) in galois.ranks()? {
        if r != s || r != t {
            report.fail("Galois map invertible", Some(n), vec![], format!("rank {r}, source {s}, target {t}"));
        }
    }
    Ok(RelativeHopf { report, galois })
}

/// `(Γ, E ⊗ Γ): (E ⊗ H, E ⊗ Δ) → (E ⊗ K, E ⊗ Δ)`.
pub fn normal_extension(e: &DGAlgebra, gamma: &BialgebraMap) -> Result<ComodAlgMorphism> {
    let rel = relative_hopf_check(gamma)?;
    if !rel.report.passed() {
        return Err(Error::NotRelativeHopf(format!("Galois map fails: {:?}", rel.report.failed_axioms())));
    }
    let field = e.field();
    let a = ComodAlgebra::free(e, &gamma.source)?;
    let b = ComodAlgebra::free(e, &gamma.target)?;
    let eh = Tensor::pair(&e.complex, gamma.source.complex(), e.window())?;
    let ek = Tensor::pair(&e.complex, gamma.target.complex(), e.window())?;
    let phi = AlgebraMap::from_fn(&a.alg, &b.alg, |n, i| {
        let k = eh.layout.key(n, i);
        let g = gamma.map.image_of(k[1].0, k[1].1);
        ek.layout.pure(&[(k[0].0, &unit(k[0], field)), (k[1].0, &g)]).1
    })?;
    ComodAlgMorphism::new(gamma, &a, &b, &phi)
}

/// `φ^{co Γ}: A^{co H} → B^{co K}`.
pub fn coinvariant_comparison(m: &ComodAlgMorphism) -> Result<ChainMap> {
    let (sa, _) = coinvariant_algebra(&m.source)?;
    let (sb, _) = coinvariant_algebra(&m.target)?;
    sa.restrict_map(&m.phi.map, &sb)
}

/// `H → H ⊗ K`, `h ↦ h ⊗ 1`.
pub fn first_factor_inclusion(h: &DGBialgebra, k: &DGBialgebra) -> Result<BialgebraMap> {
    let field = h.field();
    let hk = DGBialgebra::tensor(h, k, h.window())?;
    let layout = Tensor::pair(h.complex(), k.complex(), h.window())?;
    let one = k.alg.one();
    BialgebraMap::from_fn(h, &hk, |n, i| layout.layout.pure(&[(n, &SparseVec::unit(i, field)), (0, &one)]).1)
}

/// A coring morphism `(A, C) → (B, D)` split as the change of rings `C ↦ φ_*C`
/// followed by the change of corings `f: φ_*C → D`.
#[derive(Clone, Debug)]
pub struct CoringMorphism {
    pub phi: AlgebraMap,
    pub source: Coring,
    pub pushforward: Pushforward,
    pub f: CoringMap,
}

impl CoringMorphism {
    /// From a map `g: C → D` that is `A`-bilinear along `φ`:
    /// `f(b ⊗ c ⊗ b') = b g(c) b'`.
    pub fn along(phi: &AlgebraMap, c: &Coring, d: &Coring, g: &ChainMap) -> Result<CoringMorphism> {
        let pf = coring_pushforward(phi, c)?;
        let dl = &d.bimodule.left;
        let dr = &d.bimodule.right;
        let field = phi.target.field();
        let bc = pf.bc.map_from(d.complex(), 0, |bx, cx| dl.act(cx.0, &g.image_of(cx.0, cx.1), bx.0, &unit(bx, field)))?;
        let f = pf.bcb.map_from(d.complex(), 0, |ux, bp| dr.act(ux.0, &bc.image_of(ux.0, ux.1), bp.0, &unit(bp, field)))?;
        let f = CoringMap::new(&pf.coring, d, f)?;
        Ok(CoringMorphism { phi: phi.clone(), source: c.clone(), pushforward: pf, f })
    }

    pub fn factor(&self) -> (&Pushforward, &CoringMap) {
        (&self.pushforward, &self.f)
    }
}
