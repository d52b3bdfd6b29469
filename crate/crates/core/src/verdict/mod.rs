//! Decision procedures for relative Hopf–Galois extensions, classical and
//! homotopic, with the evidence behind every conclusion.

mod checks;
mod problems;

pub use checks::{CLASSICAL_HG, DESCENT, HOMOTOPIC_HG, KOSZUL, check_classical_hg, check_descent_hypotheses, check_homotopic_hg, koszul_report};
pub use problems::{degree_filtration, homotopic_normal_basis, problem_catalog, resolution_problem, NormalBasis};

use crate::chain::{ChainMap, DegreeWindow, QuasiIsoEvidence, TrustedRange};
use crate::comodule::FiltrationWitness;
use crate::constructors::{verify_comod_alg_morphism, ComodAlgMorphism};
use crate::dg::ConilpotentWitness;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable,
    NotDecided,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::NotApplicable => "not applicable",
            Outcome::NotDecided => "not decided",
        }
    }

    /// Fail dominates, then not decided; not-applicable lines are neutral.
    pub fn combine(outcomes: impl IntoIterator<Item = Outcome>) -> Outcome {
        let mut out = Outcome::Pass;
        for o in outcomes {
            match o {
                Outcome::Fail => return Outcome::Fail,
                Outcome::NotDecided => out = Outcome::NotDecided,
                _ => {}
            }
        }
        out
    }
}

/// `(degree, rank, source dimension, target dimension)` of an exact matrix.
pub type RankRow = (i64, usize, usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    Ranks(Vec<RankRow>),
    QuasiIso(QuasiIsoEvidence),
    Homology { range: TrustedRange, dims: Vec<(i64, usize)> },
    /// An exact identity between matrices, checked on every basis element.
    Identity(String),
    Note(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub outcome: Outcome,
    pub evidence: Vec<Evidence>,
}

impl CheckLine {
    pub fn new(name: impl Into<String>, outcome: Outcome, evidence: Vec<Evidence>) -> CheckLine {
        CheckLine { name: name.into(), outcome, evidence }
    }

    pub fn pass_if(name: impl Into<String>, ok: bool, evidence: Vec<Evidence>) -> CheckLine {
        CheckLine::new(name, if ok { Outcome::Pass } else { Outcome::Fail }, evidence)
    }
}

/// A conclusion drawn from a named result whose hypotheses are check lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inference {
    pub conclusion: String,
    pub by: String,
    pub hypotheses: Vec<String>,
}

/// Basis labels of an object handed back with a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attachment {
    pub name: String,
    pub basis: Vec<(i64, Vec<String>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub check: String,
    pub problem: String,
    pub outcome: Outcome,
    pub lines: Vec<CheckLine>,
    pub ledger: Vec<Inference>,
    pub attachments: Vec<Attachment>,
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn new(check: &str, problem: &str) -> Verdict {
        Verdict {
            check: check.into(),
            problem: problem.into(),
            outcome: Outcome::NotDecided,
            lines: Vec::new(),
            ledger: Vec::new(),
            attachments: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, line: CheckLine) {
        self.lines.push(line);
    }

    pub fn line(&self, name: &str) -> Option<&CheckLine> {
        self.lines.iter().find(|l| l.name == name)
    }

    /// Records the inference only if every named hypothesis line passed.
    pub fn infer(&mut self, conclusion: &str, by: &str, hypotheses: &[&str]) -> bool {
        let ok = hypotheses.iter().all(|h| self.line(h).is_some_and(|l| l.outcome == Outcome::Pass));
        if ok {
            self.ledger.push(Inference {
                conclusion: conclusion.into(),
                by: by.into(),
                hypotheses: hypotheses.iter().map(|h| h.to_string()).collect(),
            });
        }
        ok
    }

    pub fn concludes(&self, conclusion: &str) -> bool {
        self.ledger.iter().any(|i| i.conclusion == conclusion)
    }

    /// Overall outcome from the given lines.
    pub fn settle(&mut self, lines: &[&str]) {
        self.outcome = Outcome::combine(lines.iter().map(|n| self.line(n).map_or(Outcome::NotDecided, |l| l.outcome)));
    }

    /// `IncompleteEvidence` when a missing witness left the verdict open.
    pub fn decided(self) -> Result<Verdict> {
        if self.outcome == Outcome::NotDecided {
            let open: Vec<&str> = self.lines.iter().filter(|l| l.outcome == Outcome::NotDecided).map(|l| l.name.as_str()).collect();
            return Err(Error::IncompleteEvidence(open.join("; ")));
        }
        Ok(self)
    }

    /// Every inference cites only passing lines.
    pub fn is_sound(&self) -> bool {
        self.ledger
            .iter()
            .all(|i| i.hypotheses.iter().all(|h| self.line(h).is_some_and(|l| l.outcome == Outcome::Pass)))
    }
}

/// How the target coring `B ⊗ Cof(Γ)` is shown flat-cofibrant over `B`.
#[derive(Clone, Debug, Default)]
pub enum CoringFiltration {
    #[default]
    Missing,
    Supplied(FiltrationWitness),
    /// Generators `1 ⊗ c` over the basis of `Cof(Γ)`, one stage per degree.
    Canonical,
}

/// A comodule-algebra morphism with the optional witnesses the checks consume.
#[derive(Clone, Debug)]
pub struct ExtensionProblem {
    pub name: String,
    pub morphism: ComodAlgMorphism,
    pub window: DegreeWindow,
    /// `B` as a left `A`-module.
    pub filtration: Option<FiltrationWitness>,
    /// `r: B → A`.
    pub retract: Option<ChainMap>,
    pub conilpotent: Option<ConilpotentWitness>,
    /// Candidate map of homotopy-coinvariant models.
    pub comparison: Option<ChainMap>,
    pub coring_filtration: CoringFiltration,
    /// Set when both comodule algebras are fibrant (cofree shapes), so that
    /// the coinvariants already model the homotopy coinvariants.
    pub fibrant: bool,
}

impl ExtensionProblem {
    pub fn new(name: &str, morphism: ComodAlgMorphism, window: DegreeWindow) -> Result<ExtensionProblem> {
        verify_comod_alg_morphism(&morphism).into_result()?;
        Ok(ExtensionProblem {
            name: name.into(),
            morphism,
            window,
            filtration: None,
            retract: None,
            conilpotent: None,
            comparison: None,
            coring_filtration: CoringFiltration::Missing,
            fibrant: false,
        })
    }

    pub fn with_filtration(mut self, w: FiltrationWitness) -> ExtensionProblem {
        self.filtration = Some(w);
        self
    }

    pub fn with_retract(mut self, r: ChainMap) -> Result<ExtensionProblem> {
        let m = &self.morphism;
        if r.source != m.target.alg.complex || r.target != m.source.alg.complex || r.degree != 0 {
            return Err(Error::Witness("the retract must be a degree-0 map B → A".into()));
        }
        self.retract = Some(r);
        Ok(self)
    }

    pub fn with_conilpotent(mut self, w: ConilpotentWitness) -> ExtensionProblem {
        self.conilpotent = Some(w);
        self
    }

    pub fn with_comparison(mut self, c: ChainMap) -> ExtensionProblem {
        self.comparison = Some(c);
        self
    }

    pub fn with_fibrant(mut self) -> ExtensionProblem {
        self.fibrant = true;
        self
    }

    pub fn with_coring_filtration(mut self, c: CoringFiltration) -> ExtensionProblem {
        self.coring_filtration = c;
        self
    }
}
