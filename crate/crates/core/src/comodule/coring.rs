use super::balanced::{tensor_over, Balanced};
use super::module::{verify_bimodule, AModule, Bimodule, Side};
use crate::chain::{ChainComplex, ChainMap, DegreeWindow};
use crate::dg::{DGAlgebra, DGCoalgebra};
use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar, SparseVec};
use crate::monoidal::Cell;
use crate::report::CheckReport;

/// A coring over `base`: a bimodule with `Δ: C → C ⊗_A C` and `ε: C → A`.
#[derive(Clone, Debug)]
pub struct Coring {
    pub base: DGAlgebra,
    pub bimodule: Bimodule,
    pub cc: Balanced,
    /// Left and right actions on `C ⊗_A C`.
    pub cc_left: AModule,
    pub cc_right: AModule,
    pub delta: ChainMap,
    pub eps: ChainMap,
    /// A grouplike element of degree 0.
    pub coaugmentation: Option<SparseVec>,
}

impl Coring {
    /// Unchecked construction; `delta` gives coordinates in `C ⊗_A C` and
    /// `eps` in `A`.
    pub fn from_fn(
        bimodule: &Bimodule,
        mut delta: impl FnMut(Cell) -> SparseVec,
        mut eps: impl FnMut(Cell) -> SparseVec,
        coaugmentation: Option<SparseVec>,
    ) -> Result<Coring> {
        let base = bimodule.left.alg.clone();
        if bimodule.right.alg.complex != base.complex {
            return Err(Error::BaseMismatch("coring bimodule over two different algebras".into()));
        }
        let c = bimodule.complex();
        let cc = tensor_over(&bimodule.right, &bimodule.left)?;
        let cc_left = cc.induced_left(&bimodule.left)?;
        let cc_right = cc.induced_right(&bimodule.right)?;
        let delta = ChainMap::linear_from_fn(c, cc.complex(), 0, |n, i| delta((n, i)))?;
        let eps = ChainMap::linear_from_fn(c, &base.complex, 0, |n, i| eps((n, i)))?;
        Ok(Coring { base, bimodule: bimodule.clone(), cc, cc_left, cc_right, delta, eps, coaugmentation })
    }

    pub fn new(
        bimodule: &Bimodule,
        delta: impl FnMut(Cell) -> SparseVec,
        eps: impl FnMut(Cell) -> SparseVec,
        coaugmentation: Option<SparseVec>,
    ) -> Result<Coring> {
        let c = Coring::from_fn(bimodule, delta, eps, coaugmentation)?;
        verify_coring(&c).into_result()?;
        Ok(c)
    }

    /// The trivial coring `(A, A)`: `Δ(a) = a ⊗ 1`, `ε = id`.
    pub fn trivial(alg: &DGAlgebra) -> Coring {
        let b = Bimodule::regular(alg);
        let one = alg.one();
        let field = alg.field();
        let cc = tensor_over(&b.right, &b.left).expect("A ⊗_A A");
        Coring::from_fn(
            &b,
            |c| cc.class(c.0, &SparseVec::unit(c.1, field), 0, &one),
            |c| SparseVec::unit(c.1, field),
            Some(one.clone()),
        )
        .expect("trivial coring")
    }

    /// A coalgebra as a coring over the ground field.
    pub fn from_coalgebra(c: &DGCoalgebra) -> Coring {
        let field = c.field();
        let r = DGAlgebra::ground(field, c.window());
        let scalar = |m: Cell, _a: Cell| SparseVec::unit(m.1, field);
        let b = Bimodule {
            left: AModule::from_fn(&r, &c.complex, Side::Left, scalar).expect("ground action"),
            right: AModule::from_fn(&r, &c.complex, Side::Right, scalar).expect("ground action"),
        };
        Coring::from_fn(
            &b,
            |x| c.delta_vec(x),
            |x| {
                let e = c.counit(x);
                if e.is_zero() {
                    SparseVec::new()
                } else {
                    SparseVec::from_pairs([(0, e)])
                }
            },
            c.unit(),
        )
        .expect("coalgebra as coring")
    }

    pub fn complex(&self) -> &ChainComplex {
        self.bimodule.complex()
    }

    pub fn field(&self) -> Field {
        self.complex().field()
    }

    pub fn window(&self) -> DegreeWindow {
        self.complex().window()
    }

    pub fn label(&self, c: Cell) -> &str {
        self.complex().label(c.0, c.1)
    }

    /// `Δ(c)` as a sum of pure tensors of basis elements.
    pub fn delta_terms(&self, c: Cell) -> Vec<(Scalar, Cell, Cell)> {
        self.cc.lift_terms(c.0, &self.delta.image_of(c.0, c.1))
    }

    pub fn counit_vec(&self, c: Cell) -> SparseVec {
        self.eps.image_of(c.0, c.1)
    }

    /// Whether the base algebra is the ground field.
    pub fn over_ground(&self) -> bool {
        self.base.complex.space().total_dim() == 1
    }

    /// `(C ⊗_A C) ⊗_A C`.
    pub fn triple(&self) -> Result<Balanced> {
        tensor_over(&self.cc_right, &self.bimodule.left)
    }
}

fn named(rep: &mut CheckReport, from: CheckReport, axiom: &str) {
    rep.checked(axiom);
    for f in from.failures {
        rep.fail(axiom, f.degree, f.witness, f.detail);
    }
}

/// Bimodule axioms, bilinearity of `Δ` and `ε`, coassociativity in
/// `C ⊗_A C ⊗_A C`, both counit laws, and the coaugmentation if present.
pub fn verify_coring(c: &Coring) -> CheckReport {
    let mut rep = CheckReport::new("coring");
    rep.merge(verify_bimodule(&c.bimodule));
    named(&mut rep, c.delta.verify(), "Δ is a chain map");
    named(&mut rep, c.eps.verify(), "ε is a chain map");
    for a in ["Δ left linear", "Δ right linear", "ε left linear", "ε right linear", "coassociativity", "left counit", "right counit"] {
        rep.checked(a);
    }
    let field = c.field();
    let a = &c.base;
    let w = c.window();
    let cells = c.complex().space().elements();
    let acells = a.complex.space().elements();
    for &x in &cells {
        let ex = SparseVec::unit(x.1, field);
        let dx = c.delta.image_of(x.0, x.1);
        let ev = c.counit_vec(x);
        for &p in &acells {
            let n = x.0 + p.0;
            if !w.contains(n) {
                continue;
            }
            let ep = SparseVec::unit(p.1, field);
            let px = c.bimodule.left.act_cells(x, p);
            if c.delta.apply(n, &px) != c.cc_left.act(x.0, &dx, p.0, &ep) {
                rep.fail("Δ left linear", Some(n), vec![a.label(p).into(), c.label(x).into()], "Δ(a c) != a Δ(c)");
            }
            if c.eps.apply(n, &px) != a.mul(p.0, &ep, x.0, &ev) {
                rep.fail("ε left linear", Some(n), vec![a.label(p).into(), c.label(x).into()], "ε(a c) != a ε(c)");
            }
            let xp = c.bimodule.right.act_cells(x, p);
            if c.delta.apply(n, &xp) != c.cc_right.act(x.0, &dx, p.0, &ep) {
                rep.fail("Δ right linear", Some(n), vec![c.label(x).into(), a.label(p).into()], "Δ(c a) != Δ(c) a");
            }
            if c.eps.apply(n, &xp) != a.mul(x.0, &ev, p.0, &ep) {
                rep.fail("ε right linear", Some(n), vec![c.label(x).into(), a.label(p).into()], "ε(c a) != ε(c) a");
            }
        }
        // Counit laws on a representative of Δ(x).
        let mut left = SparseVec::new();
        let mut right = SparseVec::new();
        for (s, y, z) in c.delta_terms(x) {
            let ey = c.counit_vec(y);
            let ez = c.counit_vec(z);
            left.axpy(&s, &c.bimodule.left.act(z.0, &SparseVec::unit(z.1, field), y.0, &ey));
            right.axpy(&s, &c.bimodule.right.act(y.0, &SparseVec::unit(y.1, field), z.0, &ez));
        }
        if left != ex {
            rep.fail("left counit", Some(x.0), vec![c.label(x).into()], "(ε⊗1)Δ != id");
        }
        if right != ex {
            rep.fail("right counit", Some(x.0), vec![c.label(x).into()], "(1⊗ε)Δ != id");
        }
    }
    match c.triple() {
        Ok(ccc) => {
            for &x in &cells {
                let (l, r) = coassociators(c, &ccc, x);
                if l != r {
                    rep.fail("coassociativity", Some(x.0), vec![c.label(x).into()], "(Δ⊗1)Δ != (1⊗Δ)Δ");
                }
            }
        }
        Err(e) => rep.fail("coassociativity", None, vec![], e.to_string()),
    }
    if let Some(g) = &c.coaugmentation {
        rep.checked("coaugmentation grouplike");
        rep.checked("coaugmentation counital");
        if c.delta.apply(0, g) != c.cc.class(0, g, 0, g) {
            rep.fail("coaugmentation grouplike", Some(0), vec![], "Δ(g) != g ⊗ g");
        }
        if c.eps.apply(0, g) != a.one() {
            rep.fail("coaugmentation counital", Some(0), vec![], "ε(g) != 1");
        }
    }
    rep
}

/// `(Δ ⊗ 1)Δ(x)` and `(1 ⊗ Δ)Δ(x)` in the triple tensor over `A`.
pub(crate) fn coassociators(c: &Coring, ccc: &Balanced, x: Cell) -> (SparseVec, SparseVec) {
    let field = c.field();
    let mut l = SparseVec::new();
    let mut r = SparseVec::new();
    for (s, y, z) in c.delta_terms(x) {
        let dy = c.delta.image_of(y.0, y.1);
        l.axpy(&s, &ccc.class(y.0, &dy, z.0, &SparseVec::unit(z.1, field)));
        for (t, z1, z2) in c.delta_terms(z) {
            let yz1 = c.cc.class_cells(y, z1);
            r.axpy(&s.mul(&t), &ccc.class(y.0 + z1.0, &yz1, z2.0, &SparseVec::unit(z2.1, field)));
        }
    }
    (l, r)
}
