use super::algebra::{pair_product, verify_algebra, verify_algebra_map, AlgebraMap, DGAlgebra};
use super::coalgebra::{verify_coalgebra, DGCoalgebra};
use crate::chain::{homology, ChainComplex, ChainMap, DegreeWindow};
use crate::error::{Error, Result};
use crate::linalg::{rank, Field, SparseVec};
use crate::monoidal::Tensor;
use crate::report::CheckReport;

/// Algebra and coalgebra structures on one complex.
#[derive(Clone, Debug)]
pub struct DGBialgebra {
    pub alg: DGAlgebra,
    pub coalg: DGCoalgebra,
}

impl DGBialgebra {
    /// Pairs the structures without checking compatibility.
    pub fn from_parts(alg: DGAlgebra, coalg: DGCoalgebra) -> Result<DGBialgebra> {
        if alg.complex != coalg.complex {
            return Err(Error::BaseMismatch("algebra and coalgebra live on different complexes".into()));
        }
        Ok(DGBialgebra { alg, coalg })
    }

    pub fn new(alg: DGAlgebra, coalg: DGCoalgebra) -> Result<DGBialgebra> {
        let h = DGBialgebra::from_parts(alg, coalg)?;
        verify_bialgebra(&h).into_result()?;
        Ok(h)
    }

    pub fn ground(field: Field, window: DegreeWindow) -> DGBialgebra {
        DGBialgebra { alg: DGAlgebra::ground(field, window), coalg: DGCoalgebra::ground(field, window) }
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.alg.complex
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn window(&self) -> DegreeWindow {
        self.alg.window()
    }

    /// Tensor product bialgebra on `H ⊗ K`.
    pub fn tensor(h: &DGBialgebra, k: &DGBialgebra, window: DegreeWindow) -> Result<DGBialgebra> {
        let (alg, _) = DGAlgebra::tensor(&h.alg, &k.alg, window)?;
        let (coalg, _) = DGCoalgebra::tensor(&h.coalg, &k.coalg, window)?;
        DGBialgebra::from_parts(alg, coalg)
    }
}

/// Algebra axioms, coalgebra axioms, and that `Δ` and `ε` are algebra maps.
pub fn verify_bialgebra(h: &DGBialgebra) -> CheckReport {
    let mut rep = CheckReport::new("bialgebra");
    rep.merge(verify_algebra(&h.alg));
    rep.merge(verify_coalgebra(&h.coalg));
    for a in ["Δ multiplicative", "Δ unital", "ε multiplicative", "ε unital"] {
        rep.checked(a);
    }
    let a = &h.alg;
    let c = &h.coalg;
    let one = a.one();
    let (_, oo) = c.cc.layout.pure(&[(0, &one), (0, &one)]);
    if c.delta.apply(0, &one) != oo {
        rep.fail("Δ unital", Some(0), vec!["1".into()], "Δ(1) != 1⊗1");
    }
    if !c.counit_vec(0, &one).is_one() {
        rep.fail("ε unital", Some(0), vec!["1".into()], "ε(1) != 1");
    }
    let cells = h.complex().space().elements();
    let w = h.window();
    for &x in &cells {
        for &y in &cells {
            let n = x.0 + y.0;
            if !w.contains(n) {
                continue;
            }
            let xy = a.mul_cells(x, y);
            let l = c.delta.apply(n, &xy);
            let r = pair_product(a, a, &c.cc.layout, x.0, &c.delta_vec(x), y.0, &c.delta_vec(y));
            if l != r {
                rep.fail("Δ multiplicative", Some(n), vec![a.label(x).into(), a.label(y).into()], "Δ(ab) != Δ(a)Δ(b)");
            }
            if n == 0 {
                let el = c.counit_vec(0, &xy);
                let er = c.counit(x).mul(&c.counit(y));
                if el != er {
                    rep.fail("ε multiplicative", Some(0), vec![a.label(x).into(), a.label(y).into()], "ε(ab) != ε(a)ε(b)");
                }
            }
        }
    }
    rep
}

/// A bialgebra morphism `Γ: H → K`.
#[derive(Clone, Debug)]
pub struct BialgebraMap {
    pub source: DGBialgebra,
    pub target: DGBialgebra,
    pub map: ChainMap,
}

impl BialgebraMap {
    pub fn new(source: &DGBialgebra, target: &DGBialgebra, map: ChainMap) -> Result<BialgebraMap> {
        let g = BialgebraMap { source: source.clone(), target: target.clone(), map };
        verify_bialgebra_map(&g).into_result()?;
        Ok(g)
    }

    pub fn from_fn(source: &DGBialgebra, target: &DGBialgebra, image: impl FnMut(i64, usize) -> SparseVec) -> Result<BialgebraMap> {
        let map = ChainMap::linear_from_fn(source.complex(), target.complex(), 0, image)?;
        BialgebraMap::new(source, target, map)
    }

    pub fn identity(h: &DGBialgebra) -> BialgebraMap {
        BialgebraMap { source: h.clone(), target: h.clone(), map: ChainMap::identity(h.complex()) }
    }

    /// The unit `η: R → K`.
    pub fn unit(k: &DGBialgebra) -> BialgebraMap {
        BialgebraMap { source: DGBialgebra::ground(k.field(), k.window()), target: k.clone(), map: k.alg.eta.clone() }
    }

    pub fn algebra_map(&self) -> AlgebraMap {
        AlgebraMap { source: self.source.alg.clone(), target: self.target.alg.clone(), map: self.map.clone() }
    }

    pub fn apply(&self, n: i64, v: &SparseVec) -> SparseVec {
        self.map.apply(n, v)
    }

    pub fn is_identity(&self) -> bool {
        self.source.complex() == self.target.complex() && self.map == ChainMap::identity(self.source.complex())
    }

    /// Whether the source is the ground field and the map is the unit.
    pub fn is_unit(&self) -> bool {
        let s = self.source.complex();
        s.space().total_dim() == 1 && s.dim(0) == 1 && self.map.image_of(0, 0) == self.target.alg.one()
    }
}

pub fn verify_bialgebra_map(g: &BialgebraMap) -> CheckReport {
    let mut rep = verify_algebra_map(&g.algebra_map());
    rep.name = "bialgebra map".into();
    rep.checked("comultiplicative");
    rep.checked("counital");
    let s = &g.source.coalg;
    let t = &g.target.coalg;
    for x in g.source.complex().space().elements() {
        let gx = g.map.image_of(x.0, x.1);
        let l = t.delta.apply(x.0, &gx);
        let mut r = SparseVec::new();
        for (c, a, b) in s.delta_terms(x) {
            let (_, v) = t.cc.layout.pure(&[(a.0, &g.map.image_of(a.0, a.1)), (b.0, &g.map.image_of(b.0, b.1))]);
            r.axpy(&c, &v);
        }
        if l != r {
            rep.fail("comultiplicative", Some(x.0), vec![s.label(x).into()], "ΔΓ != (Γ⊗Γ)Δ");
        }
        if t.counit_vec(x.0, &gx) != s.counit(x) {
            rep.fail("counital", Some(x.0), vec![s.label(x).into()], "εΓ != ε");
        }
    }
    rep
}

/// `(μ ⊗ H)(H ⊗ Δ): H ⊗ H → H ⊗ H`, `a ⊗ b ↦ Σ a b₁ ⊗ b₂`. Invertible exactly
/// when `H` admits an antipode.
pub fn galois_map(h: &DGBialgebra) -> Result<(Tensor, ChainMap)> {
    let a = &h.alg;
    let c = &h.coalg;
    let hh = c.cc.clone();
    let field = h.field();
    let m = ChainMap::linear_from_fn(&hh.complex, &hh.complex, 0, |n, i| {
        let k = hh.layout.key(n, i);
        let (x, y) = (k[0], k[1]);
        let mut out = SparseVec::new();
        for (s, b1, b2) in c.delta_terms(y) {
            let xb = a.mul_cells(x, b1);
            if xb.is_zero() {
                continue;
            }
            let (_, v) = hh.layout.pure(&[(x.0 + b1.0, &xb), (b2.0, &SparseVec::unit(b2.1, field))]);
            out.axpy(&s, &v);
        }
        out
    })?;
    Ok((hh, m))
}

/// Degreewise ranks of the Galois map against the dimension of `H ⊗ H`.
pub fn galois_map_invertible(h: &DGBialgebra) -> Result<(bool, Vec<(i64, usize, usize)>)> {
    let (hh, m) = galois_map(h)?;
    let mut ok = true;
    let mut ev = Vec::new();
    for n in hh.complex.window().degrees() {
        let r = rank(&m.block(n))?;
        let d = hh.complex.dim(n);
        ok &= r == d;
        ev.push((n, r, d));
    }
    Ok((ok, ev))
}

/// `H_n = 0` for `n < 0` and `H_0` spanned by the class of `unit`.
pub fn is_connected(x: &ChainComplex, unit: &SparseVec) -> Result<bool> {
    let w = x.window();
    for n in w.lo..0 {
        if n <= w.hi - 1 && homology(x, n)?.dim != 0 {
            return Ok(false);
        }
    }
    if !w.contains(0) || w.hi < 1 {
        return Err(Error::WindowTooSmall("connectivity needs degrees 0 and 1".into()));
    }
    let h0 = homology(x, 0)?;
    if h0.dim != 1 || unit.is_zero() {
        return Ok(false);
    }
    let b: Vec<SparseVec> = x.d(1).columns().to_vec();
    let s = crate::linalg::Subspace::span(x.field(), x.dim(0), &b);
    Ok(!s.contains(unit))
}

/// Connected with a zero degree-1 component.
pub fn is_simply_connected(x: &ChainComplex, unit: &SparseVec) -> Result<bool> {
    Ok(is_connected(x, unit)? && x.dim(1) == 0)
}
