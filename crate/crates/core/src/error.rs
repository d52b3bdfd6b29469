use crate::linalg::LinalgError;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    /// Dimensions or degrees that do not fit together.
    #[error("shape error: {0}")]
    Shape(String),
    /// A homology claim was requested outside the trusted range.
    #[error("degree {degree} is outside the trusted range [{lo}, {hi}]")]
    Truncation { degree: i64, lo: i64, hi: i64 },
    /// Generators in degree <= 0 (or an augmentation ideal reaching degree 0).
    #[error("not connected: {0}")]
    NonConnected(String),
    #[error("exterior generator in even degree {0}")]
    OddDegree(i64),
    /// The coaugmentation coideal has elements below degree 2.
    #[error("not simply connected: {0}")]
    NonSimplyConnected(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    /// Objects built over different algebras, coalgebras or fields.
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
    #[error("witness rejected: {0}")]
    Witness(String),
    #[error("not a relative Hopf algebra: {0}")]
    NotRelativeHopf(String),
    #[error("unsupported comparison: {0}")]
    UnsupportedGamma(String),
    #[error("incomplete evidence: {0}")]
    IncompleteEvidence(String),
    /// A structure axiom failed; `witness` names the offending basis elements.
    #[error("axiom `{axiom}` fails{}: {witness}", degree.map(|d| format!(" in degree {d}")).unwrap_or_default())]
    Axiom { axiom: String, degree: Option<i64>, witness: String },
    /// An internal construction did not satisfy the identity it promises.
    #[error("construction error: {0}")]
    Construction(String),
    #[error("parse error at {position}: {message}")]
    Parse { position: String, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
