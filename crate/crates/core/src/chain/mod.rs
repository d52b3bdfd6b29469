//! Finite-type chain complexes in a degree window, chain maps, homotopies and
//! exact homology.

mod complex;
mod homology;
mod map;
mod space;
mod sub;

pub use complex::{verify_complex, ChainComplex};
pub use homology::{
    euler_characteristic, homology, homology_dims, is_quasi_iso, verify_split_ses, DegreeEvidence, Homology,
    QuasiIsoEvidence,
};
pub use map::{verify_chain_homotopy, ChainHomotopy, ChainMap};
pub use space::{DegreeWindow, GradedSpace, TrustedRange};
pub use sub::{QuotientComplex, SubComplex};
