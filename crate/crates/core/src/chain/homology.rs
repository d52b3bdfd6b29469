use std::collections::BTreeMap;

use super::complex::ChainComplex;
use super::map::ChainMap;
use super::space::TrustedRange;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, rank, Matrix, SparseVec, Subspace};
use crate::report::CheckReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub degree: i64,
    pub dim: usize,
    /// Cycles whose classes form a basis of `H_n`.
    pub representatives: Vec<SparseVec>,
}

fn boundaries(x: &ChainComplex, n: i64) -> Subspace {
    let d = x.d(n + 1);
    Subspace::span(x.field(), x.dim(n), d.columns())
}

/// `H_n(x)`. Requires `n` in the trusted range `[lo, hi - 1]` of the window:
/// the window top has no incoming differential, so no claim is made there.
pub fn homology(x: &ChainComplex, n: i64) -> Result<Homology> {
    let w = x.window();
    if n < w.lo || n > w.hi - 1 {
        return Err(Error::Truncation { degree: n, lo: w.lo, hi: w.hi - 1 });
    }
    let cycles = kernel_basis(&x.d(n))?;
    let b = boundaries(x, n);
    let mut span: Vec<SparseVec> = b.basis().to_vec();
    let mut reps = Vec::new();
    let mut r = b.dim();
    for z in cycles {
        span.push(z.clone());
        let s = Subspace::span(x.field(), x.dim(n), &span);
        if s.dim() > r {
            r = s.dim();
            reps.push(z);
        } else {
            span.pop();
        }
    }
    Ok(Homology { degree: n, dim: reps.len(), representatives: reps })
}

/// Homology dimensions over a range, keyed by degree.
pub fn homology_dims(x: &ChainComplex, r: TrustedRange) -> Result<BTreeMap<i64, usize>> {
    r.degrees().map(|n| homology(x, n).map(|h| (n, h.dim))).collect()
}

pub fn euler_characteristic(x: &ChainComplex, r: TrustedRange) -> Result<i64> {
    let dims = homology_dims(x, r)?;
    Ok(dims.iter().map(|(n, d)| if n.rem_euclid(2) == 0 { *d as i64 } else { -(*d as i64) }).sum())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeEvidence {
    pub degree: i64,
    pub source_dim: usize,
    pub target_dim: usize,
    /// Rank of the induced map on homology.
    pub induced_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiIsoEvidence {
    pub holds: bool,
    pub range: TrustedRange,
    pub degrees: Vec<DegreeEvidence>,
}

/// Whether `f` induces isomorphisms `H_n(source) -> H_n(target)` for all `n` in `r`.
pub fn is_quasi_iso(f: &ChainMap, r: TrustedRange) -> Result<QuasiIsoEvidence> {
    if f.degree != 0 {
        return Err(Error::Shape("quasi-isomorphism test needs a degree-0 map".into()));
    }
    if !r.within(&f.source.window()) || !r.within(&f.target.window()) {
        return Err(Error::Shape(format!(
            "range {r} not within source {} and target {} minus the top degree",
            f.source.window(),
            f.target.window()
        )));
    }
    let mut degrees = Vec::new();
    let mut holds = true;
    for n in r.degrees() {
        let hs = homology(&f.source, n)?;
        let ht = homology(&f.target, n)?;
        let b = boundaries(&f.target, n);
        let mut span: Vec<SparseVec> = b.basis().to_vec();
        span.extend(hs.representatives.iter().map(|z| f.apply(n, z)));
        let induced_rank = Subspace::span(f.target.field(), f.target.dim(n), &span).dim() - b.dim();
        let ok = hs.dim == ht.dim && induced_rank == hs.dim;
        holds &= ok;
        degrees.push(DegreeEvidence { degree: n, source_dim: hs.dim, target_dim: ht.dim, induced_rank });
    }
    Ok(QuasiIsoEvidence { holds, range: r, degrees })
}

/// Checks that `0 -> M' -i-> M -p-> M'' -> 0` is exact and degreewise split by `s`
/// (`s_n: M''_n -> M_n`, not required to commute with `d`).
pub fn verify_split_ses(i: &ChainMap, p: &ChainMap, s: &BTreeMap<i64, Matrix>) -> CheckReport {
    let mut rep = CheckReport::new("split short exact sequence");
    for a in ["p i = 0", "p s = id", "i injective", "p surjective", "ker p = im i", "i chain map", "p chain map"] {
        rep.checked(a);
    }
    if i.degree != 0 || p.degree != 0 || !i.target.space().same_shape(p.source.space()) {
        rep.fail("shape", None, vec![], "maps are not composable degree-0 maps");
        return rep;
    }
    for (name, m) in [("i chain map", i), ("p chain map", p)] {
        for f in m.verify().failures {
            rep.fail(name, f.degree, f.witness, f.detail);
        }
    }
    let mid = &i.target;
    for n in mid.window().degrees() {
        let im = i.block(n);
        let pm = p.block(n);
        let pi = pm.mul(&im).expect("composable");
        if let Some((r, c, _)) = pi.entries().next() {
            rep.fail(
                "p i = 0",
                Some(n),
                vec![i.source.label(n, c).to_string(), p.target.label(n, r).to_string()],
                "nonzero composite",
            );
        }
        let sn = match s.get(&n) {
            Some(m) => m.clone(),
            None => Matrix::zero(mid.field(), mid.dim(n), p.target.dim(n)),
        };
        if sn.rows() != mid.dim(n) || sn.cols() != p.target.dim(n) {
            rep.fail("p s = id", Some(n), vec![], "splitting has the wrong shape");
            continue;
        }
        let ps = pm.mul(&sn).expect("composable");
        let id = Matrix::identity(mid.field(), p.target.dim(n));
        if ps != id {
            let bad = ps.sub(&id).unwrap();
            let (_, c, _) = bad.entries().next().unwrap();
            rep.fail("p s = id", Some(n), vec![p.target.label(n, c).to_string()], "splitting is not a section");
        }
        let ri = rank(&im).unwrap();
        let rp = rank(&pm).unwrap();
        if ri != i.source.dim(n) {
            rep.fail("i injective", Some(n), vec![], format!("rank {ri} < {}", i.source.dim(n)));
        }
        if rp != p.target.dim(n) {
            rep.fail("p surjective", Some(n), vec![], format!("rank {rp} < {}", p.target.dim(n)));
        }
        if ri + rp != mid.dim(n) {
            rep.fail("ker p = im i", Some(n), vec![], format!("rank i + rank p = {} != {}", ri + rp, mid.dim(n)));
        }
    }
    rep
}
