use std::collections::BTreeMap;

use super::coalgebra::DGCoalgebra;
use crate::chain::SubComplex;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Matrix, Quotient, Scalar, SparseVec};
use crate::report::CheckReport;

/// Tower `R = C[-1] ⊆ C[0] ⊆ … ⊆ C[n] = C` of subcoalgebras.
/// `stages[0]` is `C[-1]`, the span of the coaugmentation.
#[derive(Clone, Debug)]
pub struct ConilpotentWitness {
    pub stages: Vec<SubComplex>,
}

impl ConilpotentWitness {
    pub fn new(stages: Vec<SubComplex>) -> ConilpotentWitness {
        ConilpotentWitness { stages }
    }

    /// `R ⊆ C`, the span of the coaugmentation.
    pub fn unit_stage(c: &DGCoalgebra) -> Result<SubComplex> {
        let u = c.unit().ok_or_else(|| Error::Shape("coalgebra has no coaugmentation".into()))?;
        SubComplex::span(&c.complex, |n| if n == 0 { vec![u.clone()] } else { Vec::new() })
    }
}

type PairKey = (i64, usize, i64, usize);

fn quotients(c: &DGCoalgebra, s: &SubComplex) -> BTreeMap<i64, Quotient> {
    let field = c.field();
    c.window()
        .degrees()
        .map(|n| {
            let basis: Vec<SparseVec> = s.subspace(n).map(|sp| sp.basis().to_vec()).unwrap_or_default();
            (n, Quotient::new(field, c.complex.dim(n), &basis))
        })
        .collect()
}

/// `(p ⊗ q)Δ(v)` for degreewise maps `p`, `q` given as quotient projections
/// (`None` = identity), keyed by the pair of output coordinates.
fn project_delta(
    c: &DGCoalgebra,
    n: i64,
    v: &SparseVec,
    p: Option<&BTreeMap<i64, Quotient>>,
    q: Option<&BTreeMap<i64, Quotient>>,
) -> BTreeMap<PairKey, Scalar> {
    let field = c.field();
    let side = |m: Option<&BTreeMap<i64, Quotient>>, d: i64, i: usize| -> SparseVec {
        match m {
            Some(m) => m[&d].project(&SparseVec::unit(i, field)),
            None => SparseVec::unit(i, field),
        }
    };
    let mut out: BTreeMap<PairKey, Scalar> = BTreeMap::new();
    let dv = c.delta.apply(n, v);
    for (s, k) in c.cc.layout.terms(n, &dv) {
        let (a, b) = (k[0], k[1]);
        let pa = side(p, a.0, a.1);
        let qb = side(q, b.0, b.1);
        for (i, x) in pa.iter() {
            for (j, y) in qb.iter() {
                let e = out.entry((a.0, i, b.0, j)).or_insert_with(|| field.zero());
                *e = e.add(&s.mul(x).mul(y));
            }
        }
    }
    out.retain(|_, x| !x.is_zero());
    out
}

/// The coradical filtration `C[n] = Δ⁻¹(R ⊗ C + C ⊗ C[n-1])`, computed as the
/// kernel of `(π_R ⊗ π_{n-1})Δ`. Fails if the tower stalls below `C`.
pub fn primitive_filtration(c: &DGCoalgebra) -> Result<ConilpotentWitness> {
    let field = c.field();
    let total = c.complex.space().total_dim();
    let mut stages = vec![ConilpotentWitness::unit_stage(c)?];
    let pi_r = quotients(c, &stages[0]);
    loop {
        let last = stages.last().expect("nonempty");
        let have: usize = c.window().degrees().map(|n| last.dim(n)).sum();
        if have == total {
            return Ok(ConilpotentWitness { stages });
        }
        let pi = quotients(c, last);
        let mut next: BTreeMap<i64, Vec<SparseVec>> = BTreeMap::new();
        for n in c.window().degrees() {
            let dim = c.complex.dim(n);
            let images: Vec<_> =
                (0..dim).map(|i| project_delta(c, n, &SparseVec::unit(i, field), Some(&pi_r), Some(&pi))).collect();
            let mut keys: BTreeMap<PairKey, usize> = BTreeMap::new();
            for img in &images {
                for k in img.keys() {
                    let len = keys.len();
                    keys.entry(*k).or_insert(len);
                }
            }
            let cols = images
                .iter()
                .map(|img| SparseVec::from_pairs(img.iter().map(|(k, x)| (keys[k], x.clone()))))
                .collect();
            let m = Matrix::from_columns(field, keys.len(), cols)?;
            next.insert(n, kernel_basis(&m)?);
        }
        let stage = SubComplex::span(&c.complex, |n| next.remove(&n).unwrap_or_default())?;
        let got: usize = c.window().degrees().map(|n| stage.dim(n)).sum();
        if got == have {
            return Err(Error::Witness(format!("primitive filtration stalls at total dimension {have} of {total}")));
        }
        stages.push(stage);
    }
}

/// Checks a conilpotency witness. Non-nested stages or a stage that is not a
/// subcoalgebra are witness errors; a nontrivial quotient comultiplication or a
/// non-exhaustive tower is a reported failure.
pub fn verify_split_conilpotent(c: &DGCoalgebra, wtn: &ConilpotentWitness) -> Result<CheckReport> {
    let mut rep = CheckReport::new("split conilpotent");
    for a in ["bottom stage is the ground field", "trivial quotient comultiplication", "exhaustive", "degreewise split"] {
        rep.checked(a);
    }
    rep.note("degreewise splittings exist automatically over a field");
    let w = c.window();
    let Some(first) = wtn.stages.first() else {
        return Err(Error::Witness("empty tower".into()));
    };
    for s in &wtn.stages {
        if s.ambient != c.complex {
            return Err(Error::BaseMismatch("witness stage is not a subcomplex of the coalgebra".into()));
        }
    }
    let unit = c.unit().ok_or_else(|| Error::Shape("coalgebra has no coaugmentation".into()))?;
    let first_total: usize = w.degrees().map(|n| first.dim(n)).sum();
    if first_total != 1 || first.coordinates(0, &unit).is_none() {
        rep.fail("bottom stage is the ground field", None, vec![], "stage 0 is not the span of the coaugmentation");
    }
    for (k, pair) in wtn.stages.windows(2).enumerate() {
        for n in w.degrees() {
            if let Some(sp) = pair[0].subspace(n) {
                if sp.basis().iter().any(|v| pair[1].coordinates(n, v).is_none()) {
                    return Err(Error::Witness(format!("stage {k} is not contained in stage {} in degree {n}", k + 1)));
                }
            }
        }
    }
    let proj: Vec<_> = wtn.stages.iter().map(|s| quotients(c, s)).collect();
    for (k, s) in wtn.stages.iter().enumerate() {
        for n in w.degrees() {
            let Some(sp) = s.subspace(n) else { continue };
            for v in sp.basis() {
                if !project_delta(c, n, v, Some(&proj[k]), None).is_empty()
                    || !project_delta(c, n, v, None, Some(&proj[k])).is_empty()
                {
                    return Err(Error::Witness(format!("stage {k} is not a subcoalgebra in degree {n}")));
                }
                if k > 0 && !project_delta(c, n, v, Some(&proj[k - 1]), Some(&proj[k - 1])).is_empty() {
                    rep.fail(
                        "trivial quotient comultiplication",
                        Some(n),
                        vec![format!("stage {k}")],
                        "quotient of consecutive stages has nonzero reduced comultiplication",
                    );
                }
            }
        }
    }
    let last = wtn.stages.last().expect("nonempty");
    for n in w.degrees() {
        if last.dim(n) != c.complex.dim(n) {
            rep.fail("exhaustive", Some(n), vec![], format!("top stage has dimension {} of {}", last.dim(n), c.complex.dim(n)));
        }
    }
    Ok(rep)
}
