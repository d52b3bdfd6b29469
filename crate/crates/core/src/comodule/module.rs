use crate::chain::{ChainComplex, ChainMap, GradedSpace};
use crate::dg::{AlgebraMap, DGAlgebra};
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::monoidal::{Cell, Tensor};
use crate::report::CheckReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A one-sided DG module over `alg`. `layout` is `M ⊗ A` for a right module and
/// `A ⊗ M` for a left one; `action` is the structure map out of it.
#[derive(Clone, Debug)]
pub struct AModule {
    pub alg: DGAlgebra,
    pub complex: ChainComplex,
    pub side: Side,
    pub layout: Tensor,
    pub action: ChainMap,
}

impl AModule {
    /// Builds from the action on basis pairs `(module cell, algebra cell)`,
    /// unchecked.
    pub fn from_fn(
        alg: &DGAlgebra,
        complex: &ChainComplex,
        side: Side,
        mut act: impl FnMut(Cell, Cell) -> SparseVec,
    ) -> Result<AModule> {
        if alg.field() != complex.field() {
            return Err(Error::BaseMismatch("module and algebra over different fields".into()));
        }
        let w = complex.window();
        let layout = match side {
            Side::Right => Tensor::pair(complex, &alg.complex, w)?,
            Side::Left => Tensor::pair(&alg.complex, complex, w)?,
        };
        let action = ChainMap::linear_from_fn(&layout.complex, complex, 0, |n, i| {
            let k = layout.layout.key(n, i);
            match side {
                Side::Right => act(k[0], k[1]),
                Side::Left => act(k[1], k[0]),
            }
        })?;
        Ok(AModule { alg: alg.clone(), complex: complex.clone(), side, layout, action })
    }

    pub fn new(alg: &DGAlgebra, complex: &ChainComplex, side: Side, act: impl FnMut(Cell, Cell) -> SparseVec) -> Result<AModule> {
        let m = AModule::from_fn(alg, complex, side, act)?;
        verify_module(&m).into_result()?;
        Ok(m)
    }

    /// `A` acting on itself by multiplication.
    pub fn regular(alg: &DGAlgebra, side: Side) -> AModule {
        AModule::from_fn(alg, &alg.complex, side, |m, a| match side {
            Side::Right => alg.mul_cells(m, a),
            Side::Left => alg.mul_cells(a, m),
        })
        .expect("regular module")
    }

    /// `A ⊗ X` (left) or `X ⊗ A` (right) on a zero-differential space `X`.
    pub fn free(alg: &DGAlgebra, gens: &GradedSpace, side: Side) -> Result<AModule> {
        let x = ChainComplex::zero_differential(gens.clone());
        let w = alg.window();
        let t = match side {
            Side::Left => Tensor::pair(&alg.complex, &x, w)?,
            Side::Right => Tensor::pair(&x, &alg.complex, w)?,
        };
        let field = alg.field();
        AModule::from_fn(alg, &t.complex, side, |m, a| {
            let k = t.layout.key(m.0, m.1);
            match side {
                Side::Left => {
                    let p = alg.mul_cells(a, k[0]);
                    t.layout.pure(&[(a.0 + k[0].0, &p), (k[1].0, &SparseVec::unit(k[1].1, field))]).1
                }
                Side::Right => {
                    let p = alg.mul_cells(k[1], a);
                    t.layout.pure(&[(k[0].0, &SparseVec::unit(k[0].1, field)), (k[1].0 + a.0, &p)]).1
                }
            }
        })
    }

    pub fn window(&self) -> crate::chain::DegreeWindow {
        self.complex.window()
    }

    /// `m · a` (right) or `a · m` (left) on basis cells; zero beyond the window.
    pub fn act_cells(&self, m: Cell, a: Cell) -> SparseVec {
        let key = match self.side {
            Side::Right => [m, a],
            Side::Left => [a, m],
        };
        match self.layout.layout.index(&key) {
            Some((n, j)) => self.action.image_of(n, j),
            None => SparseVec::new(),
        }
    }

    /// Bilinear extension of [`act_cells`](Self::act_cells) to homogeneous vectors.
    pub fn act(&self, p: i64, m: &SparseVec, q: i64, a: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, x) in m.iter() {
            for (j, y) in a.iter() {
                out.axpy(&x.mul(y), &self.act_cells((p, i), (q, j)));
            }
        }
        out
    }

    /// The same complex acted on through `φ: A' → A`.
    pub fn restrict(&self, phi: &AlgebraMap) -> Result<AModule> {
        if phi.target.complex != self.alg.complex {
            return Err(Error::BaseMismatch("restriction along a map into a different algebra".into()));
        }
        AModule::from_fn(&phi.source, &self.complex, self.side, |m, a| {
            let fa = phi.map.image_of(a.0, a.1);
            self.act(m.0, &SparseVec::unit(m.1, self.complex.field()), a.0, &fa)
        })
    }
}

/// Action associativity and unit, and that the action is a chain map.
pub fn verify_module(m: &AModule) -> CheckReport {
    let mut rep = CheckReport::new(match m.side {
        Side::Right => "right module",
        Side::Left => "left module",
    });
    rep.checked("action is a chain map");
    for f in m.action.verify().failures {
        rep.fail("action is a chain map", f.degree, f.witness, f.detail);
    }
    rep.checked("associativity");
    rep.checked("unit");
    let a = &m.alg;
    let field = m.complex.field();
    let one = a.one();
    let w = m.window();
    let acells = a.complex.space().elements();
    for x in m.complex.space().elements() {
        let ex = SparseVec::unit(x.1, field);
        if m.act(x.0, &ex, 0, &one) != ex {
            rep.fail("unit", Some(x.0), vec![m.complex.label(x.0, x.1).into()], "1 does not act as the identity");
        }
        for &p in &acells {
            for &q in &acells {
                let n = x.0 + p.0 + q.0;
                if !w.contains(n) {
                    continue;
                }
                // right: (x p) q = x (p q); left: q (p x) = (q p) x.
                let (lhs, rhs) = match m.side {
                    Side::Right => {
                        let xp = m.act_cells(x, p);
                        (m.act(x.0 + p.0, &xp, q.0, &SparseVec::unit(q.1, field)), m.act(x.0, &ex, p.0 + q.0, &a.mul_cells(p, q)))
                    }
                    Side::Left => {
                        let px = m.act_cells(x, p);
                        (m.act(x.0 + p.0, &px, q.0, &SparseVec::unit(q.1, field)), m.act(x.0, &ex, p.0 + q.0, &a.mul_cells(q, p)))
                    }
                };
                if lhs != rhs {
                    rep.fail(
                        "associativity",
                        Some(n),
                        vec![m.complex.label(x.0, x.1).into(), a.label(p).into(), a.label(q).into()],
                        "iterated action disagrees with the product",
                    );
                }
            }
        }
    }
    rep
}

/// Commuting left and right actions on one complex.
#[derive(Clone, Debug)]
pub struct Bimodule {
    pub left: AModule,
    pub right: AModule,
}

impl Bimodule {
    pub fn new(left: AModule, right: AModule) -> Result<Bimodule> {
        if left.side != Side::Left || right.side != Side::Right || left.complex != right.complex {
            return Err(Error::Shape("bimodule needs a left and a right action on one complex".into()));
        }
        Ok(Bimodule { left, right })
    }

    pub fn regular(alg: &DGAlgebra) -> Bimodule {
        Bimodule { left: AModule::regular(alg, Side::Left), right: AModule::regular(alg, Side::Right) }
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.left.complex
    }
}

pub fn verify_bimodule(b: &Bimodule) -> CheckReport {
    let mut rep = CheckReport::new("bimodule");
    rep.merge(verify_module(&b.left));
    rep.merge(verify_module(&b.right));
    rep.checked("actions commute");
    let field = b.complex().field();
    let w = b.complex().window();
    let lc = b.left.alg.complex.space().elements();
    let rc = b.right.alg.complex.space().elements();
    for x in b.complex().space().elements() {
        for &p in &lc {
            for &q in &rc {
                let n = x.0 + p.0 + q.0;
                if !w.contains(n) {
                    continue;
                }
                let px = b.left.act_cells(x, p);
                let l = b.right.act(x.0 + p.0, &px, q.0, &SparseVec::unit(q.1, field));
                let xq = b.right.act_cells(x, q);
                let r = b.left.act(x.0 + q.0, &xq, p.0, &SparseVec::unit(p.1, field));
                if l != r {
                    rep.fail(
                        "actions commute",
                        Some(n),
                        vec![b.left.alg.label(p).into(), b.complex().label(x.0, x.1).into(), b.right.alg.label(q).into()],
                        "(a m) b != a (m b)",
                    );
                }
            }
        }
    }
    rep
}
