use super::module::{AModule, Side};
use crate::chain::{ChainComplex, ChainMap, QuotientComplex};
use crate::error::{Error, Result};
use crate::linalg::{Scalar, SparseVec};
use crate::monoidal::{Cell, Tensor};

/// `M ⊗_A N`: the plain tensor `M ⊗ N` modulo `(m a) ⊗ n - m ⊗ (a n)`.
/// Quotient basis elements are classes of pure tensors of basis elements.
#[derive(Clone, Debug)]
pub struct Balanced {
    pub right: AModule,
    pub left: AModule,
    pub tensor: Tensor,
    pub quotient: QuotientComplex,
}

/// The coequalizer of the two actions `M ⊗ A ⊗ N ⇉ M ⊗ N`.
pub fn tensor_over(m: &AModule, n: &AModule) -> Result<Balanced> {
    if m.side != Side::Right || n.side != Side::Left {
        return Err(Error::Shape("tensor_over needs a right module and a left module".into()));
    }
    if m.alg.complex != n.alg.complex {
        return Err(Error::BaseMismatch("modules over different algebras".into()));
    }
    let w = m.window();
    let t = Tensor::pair(&m.complex, &n.complex, w)?;
    let field = m.complex.field();
    let mc = m.complex.space().elements();
    let ac = m.alg.complex.space().elements();
    let nc = n.complex.space().elements();
    let quotient = QuotientComplex::new(&t.complex, |deg| {
        let mut rels = Vec::new();
        for &x in &mc {
            for &a in &ac {
                if a.0 == 0 && m.alg.one() == SparseVec::unit(a.1, field) {
                    continue;
                }
                for &y in &nc {
                    if x.0 + a.0 + y.0 != deg {
                        continue;
                    }
                    let xa = m.act_cells(x, a);
                    let ay = n.act_cells(y, a);
                    let l = t.layout.pure(&[(x.0 + a.0, &xa), (y.0, &SparseVec::unit(y.1, field))]).1;
                    let r = t.layout.pure(&[(x.0, &SparseVec::unit(x.1, field)), (a.0 + y.0, &ay)]).1;
                    let v = l.sub(&r);
                    if !v.is_zero() {
                        rels.push(v);
                    }
                }
            }
        }
        rels
    })?;
    Ok(Balanced { right: m.clone(), left: n.clone(), tensor: t, quotient })
}

impl Balanced {
    pub fn complex(&self) -> &ChainComplex {
        &self.quotient.complex
    }

    pub fn dim(&self, n: i64) -> usize {
        self.quotient.dim(n)
    }

    /// Class of `u ⊗ v` for homogeneous `u ∈ M_p`, `v ∈ N_q`.
    pub fn class(&self, p: i64, u: &SparseVec, q: i64, v: &SparseVec) -> SparseVec {
        let n = p + q;
        if !self.complex().window().contains(n) {
            return SparseVec::new();
        }
        let (_, t) = self.tensor.layout.pure(&[(p, u), (q, v)]);
        self.quotient.project(n, &t)
    }

    pub fn class_cells(&self, a: Cell, b: Cell) -> SparseVec {
        let field = self.complex().field();
        self.class(a.0, &SparseVec::unit(a.1, field), b.0, &SparseVec::unit(b.1, field))
    }

    /// A representative of `v` as a sum of pure tensors of basis elements.
    pub fn lift_terms(&self, n: i64, v: &SparseVec) -> Vec<(Scalar, Cell, Cell)> {
        let amb = self.quotient.lift(n, v);
        self.tensor.layout.terms(n, &amb).map(|(c, k)| (c.clone(), k[0], k[1])).collect()
    }

    /// Pure-tensor key of quotient basis element `k` in degree `n`.
    pub fn basis_key(&self, n: i64, k: usize) -> (Cell, Cell) {
        let amb = self.quotient.lift_basis(n, k);
        let (i, _) = amb.first().expect("nonzero lift");
        let key = self.tensor.layout.key(n, i);
        (key[0], key[1])
    }

    /// The linear map out of `M ⊗_A N` induced by `f` on pure basis tensors;
    /// fails if `f` does not vanish on the balancing relations.
    pub fn map_from(
        &self,
        target: &ChainComplex,
        degree: i64,
        mut f: impl FnMut(Cell, Cell) -> SparseVec,
    ) -> Result<ChainMap> {
        let amb = ChainMap::linear_from_fn(&self.tensor.complex, target, degree, |n, i| {
            let k = self.tensor.layout.key(n, i);
            f(k[0], k[1])
        })?;
        for n in self.complex().window().degrees() {
            if let Some(q) = self.quotient.quotient(n) {
                for r in q.relations.basis() {
                    if !amb.apply(n, r).is_zero() {
                        return Err(Error::Construction(format!("map does not respect the balancing relations in degree {n}")));
                    }
                }
            }
        }
        ChainMap::linear_from_fn(self.complex(), target, degree, |n, k| amb.apply(n, &self.quotient.lift_basis(n, k)))
    }

    /// Left action `a · [x ⊗ y] = [(a x) ⊗ y]` from a left action on `M`.
    pub fn induced_left(&self, outer: &AModule) -> Result<AModule> {
        if outer.side != Side::Left || outer.complex != self.right.complex {
            return Err(Error::Shape("induced left action needs a left action on the first factor".into()));
        }
        let field = self.complex().field();
        AModule::from_fn(&outer.alg, self.complex(), Side::Left, |c, a| {
            let mut out = SparseVec::new();
            for (s, x, y) in self.lift_terms(c.0, &SparseVec::unit(c.1, field)) {
                let ax = outer.act_cells(x, a);
                out.axpy(&s, &self.class(x.0 + a.0, &ax, y.0, &SparseVec::unit(y.1, field)));
            }
            out
        })
    }

    /// Right action `[x ⊗ y] · b = [x ⊗ (y b)]` from a right action on `N`.
    pub fn induced_right(&self, outer: &AModule) -> Result<AModule> {
        if outer.side != Side::Right || outer.complex != self.left.complex {
            return Err(Error::Shape("induced right action needs a right action on the second factor".into()));
        }
        let field = self.complex().field();
        AModule::from_fn(&outer.alg, self.complex(), Side::Right, |c, b| {
            let mut out = SparseVec::new();
            for (s, x, y) in self.lift_terms(c.0, &SparseVec::unit(c.1, field)) {
                let yb = outer.act_cells(y, b);
                out.axpy(&s, &self.class(x.0, &SparseVec::unit(x.1, field), y.0 + b.0, &yb));
            }
            out
        })
    }
}
