//! Exact engine for finite-type differential graded algebra over a field.

pub mod chain;
pub mod cobar;
pub mod comodule;
pub mod constructors;
pub mod dg;
pub mod error;
pub mod io;
pub mod linalg;
pub mod monoidal;
pub mod report;
pub mod verdict;

pub use error::{Error, Result};
