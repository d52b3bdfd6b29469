use std::collections::BTreeMap;

use super::algebra::CobarAlgebra;
use super::complex::{cobar, Coaction, CobarComplex, Word};
use crate::chain::{verify_split_ses, ChainMap, QuotientComplex, SubComplex};
use crate::comodule::Side;
use crate::dg::ConilpotentWitness;
use crate::error::{Error, Result};
use crate::linalg::{rank, Matrix, SparseVec};
use crate::monoidal::{Cell, Tensor};
use crate::report::CheckReport;

/// `Ω(A;H;R) ⊆ Ω(A;H;H[0]) ⊆ ⋯` for two-sided cobar algebras with the
/// subquotients compared to `Ω(A;H;R) ⊗ H[n]/H[n−1]`.
#[derive(Clone, Debug)]
pub struct CobarFiltration {
    pub reduced: CobarComplex,
    pub stages: Vec<SubComplex>,
}

fn prefix(w: &Word) -> Word {
    Word::new(w.left, w.letters.clone(), (0, 0))
}

fn stage_span(x: &CobarComplex, reduced: &CobarComplex, stage: &SubComplex) -> Result<SubComplex> {
    let field = x.field();
    SubComplex::span(&x.complex, |d| {
        let mut out = Vec::new();
        for p in reduced.complex.window().degrees() {
            let q = d - p;
            for pw in reduced.words(p) {
                for k in 0..stage.dim(q) {
                    let v = stage.include(q, &SparseVec::unit(k, field));
                    let mut z = SparseVec::new();
                    for (j, s) in v.iter() {
                        if let Some(c) = x.index(&Word::new(pw.left, pw.letters.clone(), (q, j))) {
                            z.add_at(c.1, s);
                        }
                    }
                    out.push(z);
                }
            }
        }
        out
    })
}

pub fn cobar_filtration(two: &CobarAlgebra, wit: &ConilpotentWitness) -> Result<CobarFiltration> {
    let x = &two.cobar;
    let ground = Coaction::ground(&two.h.coalg, Side::Left)?;
    let reduced = cobar(&x.left, &two.h.coalg, &ground, x.window())?;
    let stages = wit.stages.iter().map(|s| stage_span(x, &reduced, s)).collect::<Result<Vec<_>>>()?;
    Ok(CobarFiltration { reduced, stages })
}

/// Checks `F_0 ≅ Ω(A;H;R)` and that every `F_{n−1} → F_n → Ω(A;H;R) ⊗ H[n]/H[n−1]`
/// is a degreewise split short exact sequence of complexes.
pub fn verify_cobar_filtration(two: &CobarAlgebra, wit: &ConilpotentWitness) -> Result<CheckReport> {
    let filt = cobar_filtration(two, wit)?;
    let x = &two.cobar;
    let field = x.field();
    let w = x.window();
    let mut rep = CheckReport::new("cobar filtration");
    rep.checked("first stage is the reduced cobar complex");
    let f0 = filt.stages.first().ok_or_else(|| Error::Witness("empty conilpotency witness".into()))?;
    for d in w.degrees() {
        if f0.dim(d) != filt.reduced.complex.dim(d) {
            rep.fail("first stage is the reduced cobar complex", Some(d), vec![], "dimension mismatch");
        }
    }
    for n in 1..wit.stages.len() {
        let (hs, hl) = (&wit.stages[n], &wit.stages[n - 1]);
        let (fs, fl) = (&filt.stages[n], &filt.stages[n - 1]);
        let name = format!("stage {n} splits");
        let i = ChainMap::linear_from_fn(&fl.complex, &fs.complex, 0, |d, k| {
            fs.coordinates(d, &fl.include(d, &SparseVec::unit(k, field))).unwrap_or_default()
        })?;
        let coker = QuotientComplex::new(&hs.complex, |q| {
            (0..hl.dim(q)).filter_map(|k| hs.coordinates(q, &hl.include(q, &SparseVec::unit(k, field)))).collect()
        })?;
        let t = Tensor::pair(&filt.reduced.complex, &coker.complex, w)?;
        let p = ChainMap::linear_from_fn(&fs.complex, &t.complex, 0, |d, k| {
            let z = fs.include(d, &SparseVec::unit(k, field));
            let mut groups: BTreeMap<Cell, (i64, SparseVec)> = BTreeMap::new();
            for (j, s) in z.iter() {
                let word = x.word((d, j));
                let pc = filt.reduced.index(&prefix(word)).expect("prefix word");
                groups.entry(pc).or_insert((word.right.0, SparseVec::new())).1.add_at(word.right.1, s);
            }
            let mut out = SparseVec::new();
            for (pc, (q, u)) in groups {
                let Some(coords) = hs.coordinates(q, &u) else { continue };
                let cv = coker.project(q, &coords);
                out.axpy(&field.one(), &t.pure(&[(pc.0, &SparseVec::unit(pc.1, field)), (q, &cv)]).1);
            }
            out
        })?;
        let mut split = BTreeMap::new();
        for d in w.degrees() {
            let mut cols = Vec::new();
            for k in 0..t.complex.dim(d) {
                let key = t.layout.key(d, k);
                let (pc, kc) = (key[0], key[1]);
                let u = hs.include(kc.0, &coker.lift_basis(kc.0, kc.1));
                let pw = filt.reduced.word(pc);
                let mut z = SparseVec::new();
                for (j, s) in u.iter() {
                    if let Some(c) = x.index(&Word::new(pw.left, pw.letters.clone(), (kc.0, j))) {
                        z.add_at(c.1, s);
                    }
                }
                cols.push(fs.coordinates(d, &z).unwrap_or_default());
            }
            split.insert(d, Matrix::from_columns(field, fs.dim(d), cols)?);
        }
        let sub = verify_split_ses(&i, &p, &split);
        rep.checked(name.clone());
        for f in sub.failures {
            rep.fail(&name, f.degree, f.witness, format!("{}: {}", f.axiom, f.detail));
        }
    }
    Ok(rep)
}

/// Rank test for the underlying graded module of `Ω(A;H;H)` being free over
/// `A` on `T(s⁻¹H̄) ⊗ H` through `ρ̃`.
pub fn verify_a_free(two: &CobarAlgebra) -> Result<CheckReport> {
    let x = &two.cobar;
    let field = x.field();
    let rho = two.rho_tilde()?;
    let one = two.left.one();
    let mut rep = CheckReport::new("A-free");
    rep.checked("action map is bijective");
    for d in x.window().degrees() {
        let mut cols = Vec::new();
        for word in x.words(d) {
            let ra = rho.map.image_of(word.left.0, word.left.1);
            let rest = x.collect(
                d - word.left.0,
                one.iter().map(|(i, s)| (s.clone(), Word::new((0, i), word.letters.clone(), word.right))),
            );
            cols.push(two.algebra.mul(word.left.0, &ra, d - word.left.0, &rest));
        }
        let m = Matrix::from_columns(field, x.complex.dim(d), cols)?;
        let r = rank(&m)?;
        if r != x.complex.dim(d) {
            rep.fail("action map is bijective", Some(d), vec![], format!("rank {r} of {}", x.complex.dim(d)));
        }
    }
    Ok(rep)
}
