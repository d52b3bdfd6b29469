//! Pass/fail reports produced by the verifiers.

use std::fmt;

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub axiom: String,
    pub degree: Option<i64>,
    /// Labels of the basis elements exhibiting the failure.
    pub witness: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CheckReport {
    pub name: String,
    pub checked: Vec<String>,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> CheckReport {
        CheckReport { name: name.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn checked(&mut self, axiom: impl Into<String>) {
        let a = axiom.into();
        if !self.checked.contains(&a) {
            self.checked.push(a);
        }
    }

    pub fn fail(&mut self, axiom: &str, degree: Option<i64>, witness: Vec<String>, detail: impl Into<String>) {
        self.checked(axiom);
        self.failures.push(Failure { axiom: axiom.to_string(), degree, witness, detail: detail.into() });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn merge(&mut self, other: CheckReport) {
        for c in other.checked {
            self.checked(c);
        }
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }

    pub fn first_failure(&self) -> Option<&Failure> {
        self.failures.first()
    }

    pub fn failed_axioms(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for f in &self.failures {
            if !out.contains(&f.axiom.as_str()) {
                out.push(&f.axiom);
            }
        }
        out
    }

    /// Converts the first failure into an [`Error::Axiom`].
    pub fn into_result(self) -> Result<(), Error> {
        match self.failures.into_iter().next() {
            None => Ok(()),
            Some(f) => Err(Error::Axiom { axiom: f.axiom, degree: f.degree, witness: f.witness.join(", ") }),
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.name, if self.passed() { "pass" } else { "FAIL" })?;
        for fl in &self.failures {
            let deg = fl.degree.map(|d| format!(" (degree {d})")).unwrap_or_default();
            writeln!(f, "  {}{}: [{}] {}", fl.axiom, deg, fl.witness.join(", "), fl.detail)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
