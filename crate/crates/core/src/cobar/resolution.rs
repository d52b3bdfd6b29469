use std::collections::HashMap;

use super::complex::{cobar, Coaction, CobarComplex, Word};
use crate::chain::{verify_chain_homotopy, ChainHomotopy, ChainMap, DegreeWindow, SubComplex};
use crate::comodule::Side;
use crate::dg::DGCoalgebra;
use crate::error::{Error, Result};
use crate::linalg::{rank, Matrix, SparseVec};
use crate::monoidal::Tensor;
use crate::report::CheckReport;

/// `M → Ω(M;C;C) → M ⊗ C` factoring the coaction, with the retraction
/// `π = (M⊗ε)q` and a contraction of `Ω(M;C;C)` onto the image of `ρ̃`.
#[derive(Clone, Debug)]
pub struct CobarResolution {
    pub cobar: CobarComplex,
    pub rho_tilde: ChainMap,
    /// Target is `M ⊗ C` on the window of the cobar complex.
    pub q: ChainMap,
    pub mc: Tensor,
    pub pi: ChainMap,
    pub contraction: ChainHomotopy,
}

pub fn cobar_resolution(m: &Coaction, c: &DGCoalgebra, w: DegreeWindow) -> Result<CobarResolution> {
    let n = Coaction::regular(c, Side::Left);
    let x = cobar(m, c, &n, w)?;
    let field = c.field();
    let g = c.unit().expect("gated on coaugmentation");
    if g.iter().any(|(i, _)| i != 0) || c.complex.dim(0) != 1 {
        return Err(Error::Construction("coaugmentation is not the degree-0 basis cell".into()));
    }

    let rho_tilde = ChainMap::linear_from_fn(&m.complex, &x.complex, 0, |d, i| {
        let terms = m.terms((d, i)).iter().map(|(s, a, b)| (s.clone(), Word::new(*a, vec![], *b)));
        x.collect(d, terms)
    })?;
    let mc = Tensor::pair(&m.complex, &c.complex, w)?;
    let q = ChainMap::linear_from_fn(&x.complex, &mc.complex, 0, |d, i| {
        let word = x.word((d, i));
        if !word.letters.is_empty() {
            return SparseVec::new();
        }
        mc.layout.index(&[word.left, word.right]).map(|(_, j)| SparseVec::unit(j, field)).unwrap_or_default()
    })?;
    let pi = ChainMap::linear_from_fn(&x.complex, &m.complex, 0, |d, i| {
        let word = x.word((d, i));
        if !word.letters.is_empty() || !m.complex.window().contains(d) {
            return SparseVec::new();
        }
        SparseVec::unit(word.left.1, field).scaled(&c.counit(word.right))
    })?;
    // Extra degeneracy: the last letter becomes the C factor when the old one
    // is counital.
    let h = ChainMap::linear_from_fn(&x.complex, &x.complex, 1, |d, i| {
        let word = x.word((d, i));
        let Some((&last, rest)) = word.letters.split_last() else {
            return SparseVec::new();
        };
        let e = c.counit(word.right);
        if e.is_zero() {
            return SparseVec::new();
        }
        let shorter = Word::new(word.left, rest.to_vec(), last);
        let s = field.sign(word.left.0 + shorter.letters_degree()).mul(&e);
        x.collect(d + 1, [(s, shorter)])
    })?;
    let back = rho_tilde.compose(&pi)?;
    let contraction = ChainHomotopy::new(ChainMap::identity(&x.complex), back, h)?;
    Ok(CobarResolution { cobar: x, rho_tilde, q, mc, pi, contraction })
}

impl CobarResolution {
    /// The coaction of `M` as a map `M → M ⊗ C`.
    pub fn coaction_map(&self) -> Result<ChainMap> {
        let m = &self.cobar.left;
        ChainMap::linear_from_fn(&m.complex, &self.mc.complex, 0, |d, i| {
            let mut v = SparseVec::new();
            for (s, a, b) in m.terms((d, i)) {
                if let Some((_, j)) = self.mc.layout.index(&[*a, *b]) {
                    v.add_at(j, s);
                }
            }
            v
        })
    }

    /// Sub-complex of words whose last factor is the grouplike.
    pub fn grouplike_words(&self) -> Result<SubComplex> {
        let x = &self.cobar;
        let field = x.field();
        SubComplex::span(&x.complex, |d| {
            x.words(d)
                .iter()
                .enumerate()
                .filter(|(_, w)| w.right == (0, 0))
                .map(|(i, _)| SparseVec::unit(i, field))
                .collect()
        })
    }

    /// `Ω(M;C;R) → Ω(M;C;C)`, `x⊗w⊗1 ↦ x⊗w⊗g`.
    pub fn coinvariant_inclusion(&self, reduced: &CobarComplex) -> Result<ChainMap> {
        let x = &self.cobar;
        ChainMap::from_fn(&reduced.complex, &x.complex, 0, |d, i| {
            let w = reduced.word((d, i));
            x.collect(d, [(x.field().one(), Word::new(w.left, w.letters.clone(), (0, 0)))])
        })
    }

    /// Degreewise dimension of `{z : ρ(z) = z ⊗ g}` for the coaction on the
    /// last factor.
    pub fn coinvariant_dims(&self) -> Result<Vec<(i64, usize)>> {
        let x = &self.cobar;
        let c = &x.coalg;
        let field = x.field();
        let mut out = Vec::new();
        for d in x.window().degrees() {
            let mut rows: HashMap<((i64, usize), (i64, usize)), usize> = HashMap::new();
            let mut cols = Vec::new();
            for word in x.words(d) {
                let mut col = SparseVec::new();
                let mut push = |s: &crate::linalg::Scalar, cell: (i64, usize), k: (i64, usize)| {
                    let n = rows.len();
                    let r = *rows.entry((cell, k)).or_insert(n);
                    col.add_at(r, s);
                };
                for (s, a, b) in c.delta_terms(word.right) {
                    let cell = x.index(&Word::new(word.left, word.letters.clone(), a)).ok_or_else(|| {
                        Error::Construction("coaction leaves the word basis".into())
                    })?;
                    push(&s, cell, b);
                }
                let me = x.index(word).expect("basis word");
                push(&field.one().neg(), me, (0, 0));
                cols.push(col);
            }
            let mat = Matrix::from_columns(field, rows.len(), cols)?;
            out.push((d, x.complex.dim(d) - rank(&mat)?));
        }
        Ok(out)
    }
}

/// Re-checks every promise of the resolution on its window.
pub fn verify_resolution(r: &CobarResolution, reduced: &CobarComplex) -> Result<CheckReport> {
    let mut rep = CheckReport::new("cobar resolution");
    for (name, f) in [("rho_tilde", &r.rho_tilde), ("q", &r.q), ("pi", &r.pi)] {
        let sub = f.verify();
        if !sub.passed() {
            let fl = sub.first_failure().expect("failed");
            rep.fail(&format!("{name} is a chain map"), fl.degree, fl.witness.clone(), fl.detail.clone());
        } else {
            rep.checked(format!("{name} is a chain map"));
        }
    }
    let m = &r.cobar.left.complex;
    let top = m.window().hi.min(r.cobar.window().hi);
    let lo = m.window().lo;
    let id_check = r.pi.compose(&r.rho_tilde)?;
    rep.checked("pi rho_tilde = id");
    for d in lo..=top {
        if id_check.block(d) != Matrix::identity(m.field(), m.dim(d)) {
            rep.fail("pi rho_tilde = id", Some(d), vec![], "defect");
        }
    }
    let rho = r.coaction_map()?;
    let qr = r.q.compose(&r.rho_tilde)?;
    rep.checked("q rho_tilde = rho");
    for d in lo..=top {
        if qr.block(d) != rho.block(d) {
            rep.fail("q rho_tilde = rho", Some(d), vec![], "defect");
        }
    }
    rep.merge(verify_chain_homotopy(&r.contraction));

    rep.checked("coinvariants are the grouplike words");
    let gw = r.grouplike_words()?;
    let inc = r.coinvariant_inclusion(reduced)?;
    for (d, k) in r.coinvariant_dims()? {
        let ok = k == gw.dim(d) && reduced.complex.dim(d) == k && rank(&inc.block(d))? == k;
        if !ok {
            rep.fail("coinvariants are the grouplike words", Some(d), vec![], format!("coinvariant dimension {k}"));
        }
    }
    Ok(rep)
}
