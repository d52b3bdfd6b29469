use super::module::{AModule, Side};
use crate::chain::SubComplex;
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::report::CheckReport;

/// Generators `X(0), X(1), …` of a filtration `F_n = A · (X(0) ∪ … ∪ X(n))`.
/// Each generator is a homogeneous vector `(degree, coordinates)` of the module.
#[derive(Clone, Debug, Default)]
pub struct FiltrationWitness {
    pub stages: Vec<Vec<(i64, SparseVec)>>,
}

impl FiltrationWitness {
    /// Stages given by basis labels of the module.
    pub fn from_labels(n: &AModule, stages: &[&[&str]]) -> Result<FiltrationWitness> {
        let field = n.complex.field();
        let mut out = Vec::new();
        for s in stages {
            let mut gens = Vec::new();
            for l in *s {
                let (deg, i) = n
                    .complex
                    .space()
                    .find(l)
                    .ok_or_else(|| Error::Witness(format!("no basis element labelled {l}")))?;
                gens.push((deg, SparseVec::unit(i, field)));
            }
            out.push(gens);
        }
        Ok(FiltrationWitness { stages: out })
    }
}

/// `F_n` for each stage.
fn stages(n: &AModule, wtn: &FiltrationWitness) -> Result<Vec<SubComplex>> {
    let field = n.complex.field();
    let acells = n.alg.complex.space().elements();
    let mut out = Vec::new();
    let mut gens: Vec<(i64, SparseVec)> = Vec::new();
    for (k, stage) in wtn.stages.iter().enumerate() {
        gens.extend(stage.iter().cloned());
        let sub = SubComplex::span(&n.complex, |deg| {
            let mut vs = Vec::new();
            for (g, v) in &gens {
                for &a in &acells {
                    if g + a.0 == deg {
                        vs.push(n.act(*g, v, a.0, &SparseVec::unit(a.1, field)));
                    }
                }
            }
            vs
        })
        .map_err(|_| Error::Witness(format!("stage {k} is not closed under the differential")))?;
        out.push(sub);
    }
    Ok(out)
}

/// Checks that each quotient `F_n / F_{n-1}` is free over `A` on `X(n)` with
/// zero differential, and that the filtration exhausts the module. Degreewise
/// splitting of the inclusions is automatic over a field.
pub fn verify_cellular_filtration(n: &AModule, wtn: &FiltrationWitness) -> Result<CheckReport> {
    let mut rep = CheckReport::new("cellular filtration");
    let w = n.window();
    for (k, stage) in wtn.stages.iter().enumerate() {
        for (g, v) in stage {
            if !w.contains(*g) || v.iter().any(|(i, _)| i >= n.complex.dim(*g)) {
                return Err(Error::Witness(format!("stage {k} has a generator outside the module")));
            }
            if v.is_zero() {
                return Err(Error::Witness(format!("stage {k} has a zero generator")));
            }
        }
    }
    let fs = stages(n, wtn)?;
    for a in ["zero differential on generators", "free quotient", "exhaustive"] {
        rep.checked(a);
    }
    let acells = n.alg.complex.space().elements();
    for (k, stage) in wtn.stages.iter().enumerate() {
        let prev = k.checked_sub(1).map(|j| &fs[j]);
        let in_prev = |deg: i64, v: &SparseVec| match prev {
            Some(p) => p.coordinates(deg, v).is_some(),
            None => v.is_zero(),
        };
        for (g, v) in stage {
            if !in_prev(g - 1, &n.complex.apply_d(*g, v)) {
                rep.fail("zero differential on generators", Some(*g), vec![format!("stage {k}")], "d of a generator is not in the previous stage");
            }
        }
        for deg in w.degrees() {
            let expected: usize = stage.iter().map(|(g, _)| acells.iter().filter(|a| g + a.0 == deg).count()).sum();
            let got = fs[k].dim(deg) - prev.map_or(0, |p| p.dim(deg));
            if got != expected {
                rep.fail(
                    "free quotient",
                    Some(deg),
                    vec![format!("stage {k}")],
                    format!("quotient has dimension {got}, a free module on the generators has {expected}"),
                );
            }
        }
    }
    let top = fs.last();
    for deg in w.degrees() {
        if top.map_or(0, |t| t.dim(deg)) != n.complex.dim(deg) {
            rep.fail("exhaustive", Some(deg), vec![], "the last stage is not the whole module");
        }
    }
    rep.note(match n.side {
        Side::Left => "left module; inclusions split degreewise over a field",
        Side::Right => "right module; inclusions split degreewise over a field",
    });
    Ok(rep)
}
