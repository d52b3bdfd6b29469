use crate::chain::{ChainComplex, ChainMap, DegreeWindow, QuotientComplex};
use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar, SparseVec};
use crate::monoidal::{Cell, Tensor, TensorSpace};
use crate::report::CheckReport;

/// One term `coefficient · left ⊗ right` of a comultiplication.
pub type Term = (Scalar, Cell, Cell);

/// A DG coalgebra stored as a comultiplication table.
#[derive(Clone, Debug)]
pub struct DGCoalgebra {
    pub complex: ChainComplex,
    /// `C ⊗ C`, the target of `delta`.
    pub cc: Tensor,
    pub delta: ChainMap,
    pub eps: ChainMap,
    pub coaugmentation: Option<ChainMap>,
}

impl DGCoalgebra {
    /// Builds from tables without checking axioms.
    pub fn from_table(
        complex: &ChainComplex,
        mut delta: impl FnMut(Cell) -> Vec<Term>,
        eps: impl Fn(Cell) -> Scalar,
        coaugmentation: Option<SparseVec>,
    ) -> Result<DGCoalgebra> {
        let field = complex.field();
        let w = complex.window();
        if !w.contains(0) {
            return Err(Error::WindowTooSmall("a coalgebra window must contain degree 0".into()));
        }
        let cc = Tensor::pair(complex, complex, w)?;
        let delta = ChainMap::linear_from_fn(complex, &cc.complex, 0, |n, i| {
            let mut v = SparseVec::new();
            for (c, a, b) in delta((n, i)) {
                if a.0 + b.0 != n {
                    continue;
                }
                if let Some((_, j)) = cc.layout.index(&[a, b]) {
                    v.add_at(j, &c);
                }
            }
            v
        })?;
        let ground = ChainComplex::ground(field, w);
        let eps = ChainMap::linear_from_fn(complex, &ground, 0, |n, i| {
            if n == 0 {
                SparseVec::from_pairs([(0, eps((n, i)))])
            } else {
                SparseVec::new()
            }
        })?;
        let coaugmentation = match coaugmentation {
            Some(v) => Some(ChainMap::linear_from_fn(&ground, complex, 0, |_, _| v.clone())?),
            None => None,
        };
        Ok(DGCoalgebra { complex: complex.clone(), cc, delta, eps, coaugmentation })
    }

    pub fn new(
        complex: &ChainComplex,
        delta: impl FnMut(Cell) -> Vec<Term>,
        eps: impl Fn(Cell) -> Scalar,
        coaugmentation: Option<SparseVec>,
    ) -> Result<DGCoalgebra> {
        let c = DGCoalgebra::from_table(complex, delta, eps, coaugmentation)?;
        verify_coalgebra(&c).into_result()?;
        Ok(c)
    }

    pub fn ground(field: Field, window: DegreeWindow) -> DGCoalgebra {
        let x = ChainComplex::ground(field, window);
        DGCoalgebra::from_table(
            &x,
            |_| vec![(field.one(), (0, 0), (0, 0))],
            |_| field.one(),
            Some(SparseVec::unit(0, field)),
        )
        .expect("ground coalgebra")
    }

    pub fn field(&self) -> Field {
        self.complex.field()
    }

    pub fn window(&self) -> DegreeWindow {
        self.complex.window()
    }

    pub fn label(&self, c: Cell) -> &str {
        self.complex.label(c.0, c.1)
    }

    pub fn delta_vec(&self, c: Cell) -> SparseVec {
        self.delta.image_of(c.0, c.1)
    }

    pub fn delta_terms(&self, c: Cell) -> Vec<Term> {
        let v = self.delta_vec(c);
        self.cc.layout.terms(c.0, &v).map(|(s, k)| (s.clone(), k[0], k[1])).collect()
    }

    pub fn counit(&self, c: Cell) -> Scalar {
        if c.0 != 0 {
            return self.field().zero();
        }
        self.eps.image_of(0, c.1).get(0).cloned().unwrap_or_else(|| self.field().zero())
    }

    pub fn counit_vec(&self, n: i64, v: &SparseVec) -> Scalar {
        let mut s = self.field().zero();
        for (i, c) in v.iter() {
            s = s.add(&c.mul(&self.counit((n, i))));
        }
        s
    }

    /// Image of `1` under the coaugmentation.
    pub fn unit(&self) -> Option<SparseVec> {
        self.coaugmentation.as_ref().map(|e| e.image_of(0, 0))
    }

    /// Coaugmentation coideal `C̄ = C / span η(1)` as a quotient complex.
    pub fn coideal(&self) -> Result<QuotientComplex> {
        let unit = self
            .unit()
            .ok_or_else(|| Error::Shape("coalgebra has no coaugmentation".into()))?;
        QuotientComplex::new(&self.complex, |n| if n == 0 { vec![unit.clone()] } else { Vec::new() })
    }

    /// Tensor product coalgebra, `Δ(c ⊗ d) = Σ (-1)^{|c₂||d₁|} (c₁ ⊗ d₁) ⊗ (c₂ ⊗ d₂)`.
    pub fn tensor(c: &DGCoalgebra, d: &DGCoalgebra, window: DegreeWindow) -> Result<(DGCoalgebra, Tensor)> {
        let t = Tensor::pair(&c.complex, &d.complex, window)?;
        let field = c.field();
        let coaug = match (c.unit(), d.unit()) {
            (Some(a), Some(b)) => Some(t.layout.pure(&[(0, &a), (0, &b)]).1),
            _ => None,
        };
        let co = DGCoalgebra::from_table(
            &t.complex,
            |x| {
                let k = t.layout.key(x.0, x.1);
                let mut out = Vec::new();
                for (s1, c1, c2) in c.delta_terms(k[0]) {
                    for (s2, d1, d2) in d.delta_terms(k[1]) {
                        let (Some(l), Some(r)) = (t.layout.index(&[c1, d1]), t.layout.index(&[c2, d2])) else {
                            continue;
                        };
                        out.push((s1.mul(&s2).mul(&field.sign(c2.0 * d1.0)), l, r));
                    }
                }
                out
            },
            |x| {
                let k = t.layout.key(x.0, x.1);
                c.counit(k[0]).mul(&d.counit(k[1]))
            },
            coaug,
        )?;
        Ok((co, t))
    }
}

fn rename(rep: &mut CheckReport, from: CheckReport, axiom: &str) {
    rep.checked(axiom);
    for f in from.failures {
        rep.fail(axiom, f.degree, f.witness, f.detail);
    }
}

/// `(Δ ⊗ 1)Δ(c)` and `(1 ⊗ Δ)Δ(c)` expanded in `C ⊗ C ⊗ C`.
pub(crate) fn coassociators(c: &DGCoalgebra, ccc: &TensorSpace, x: Cell) -> (SparseVec, SparseVec) {
    let mut l = SparseVec::new();
    let mut r = SparseVec::new();
    for (s, a, b) in c.delta_terms(x) {
        for (s2, a1, a2) in c.delta_terms(a) {
            if let Some((_, i)) = ccc.index(&[a1, a2, b]) {
                l.add_at(i, &s.mul(&s2));
            }
        }
        for (s2, b1, b2) in c.delta_terms(b) {
            if let Some((_, i)) = ccc.index(&[a, b1, b2]) {
                r.add_at(i, &s.mul(&s2));
            }
        }
    }
    (l, r)
}

/// Coassociativity, counit laws, chain-map conditions and coaugmentation axioms.
pub fn verify_coalgebra(c: &DGCoalgebra) -> CheckReport {
    let mut rep = CheckReport::new("coalgebra");
    let field = c.field();
    rename(&mut rep, c.delta.verify(), "comultiplication is a chain map");
    rename(&mut rep, c.eps.verify(), "counit is a chain map");
    rep.checked("coassociativity");
    rep.checked("left counit");
    rep.checked("right counit");
    let sp = c.complex.space().clone();
    let ccc = match TensorSpace::new(&[sp.clone(), sp.clone(), sp], c.window()) {
        Ok(t) => t,
        Err(e) => {
            rep.fail("coassociativity", None, vec![], e.to_string());
            return rep;
        }
    };
    for x in c.complex.space().elements() {
        let (l, r) = coassociators(c, &ccc, x);
        if l != r {
            let bad = l.sub(&r);
            let (i, _) = bad.first().expect("nonzero difference");
            rep.fail(
                "coassociativity",
                Some(x.0),
                vec![c.label(x).into(), ccc.space().label(x.0, i).into()],
                "(Δ⊗1)Δ != (1⊗Δ)Δ",
            );
        }
        let mut left = SparseVec::new();
        let mut right = SparseVec::new();
        for (s, a, b) in c.delta_terms(x) {
            if a.0 == 0 {
                left.axpy(&s.mul(&c.counit(a)), &SparseVec::unit(b.1, field));
            }
            if b.0 == 0 {
                right.axpy(&s.mul(&c.counit(b)), &SparseVec::unit(a.1, field));
            }
        }
        let ex = SparseVec::unit(x.1, field);
        if left != ex {
            rep.fail("left counit", Some(x.0), vec![c.label(x).into()], "(ε⊗1)Δ != id");
        }
        if right != ex {
            rep.fail("right counit", Some(x.0), vec![c.label(x).into()], "(1⊗ε)Δ != id");
        }
    }
    if let Some(e) = &c.coaugmentation {
        rename(&mut rep, e.verify(), "coaugmentation is a chain map");
        rep.checked("coaugmentation comultiplicative");
        rep.checked("coaugmentation counital");
        let u = e.image_of(0, 0);
        if !c.counit_vec(0, &u).is_one() {
            rep.fail("coaugmentation counital", Some(0), vec!["1".into()], "ε(η(1)) != 1");
        }
        let du = c.delta.apply(0, &u);
        let (_, uu) = c.cc.layout.pure(&[(0, &u), (0, &u)]);
        if du != uu {
            rep.fail("coaugmentation comultiplicative", Some(0), vec!["1".into()], "Δη(1) != η(1)⊗η(1)");
        }
    }
    rep
}
