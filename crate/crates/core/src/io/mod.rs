//! JSON object documents and reports.
//!
//! Documents are canonical: keys in fixed order, entries in basis order,
//! rationals as `"p/q"` strings and residues as integers, so saving a loaded
//! canonical file reproduces it byte for byte.

mod document;
mod report;

pub use document::{
    load_path, load_str, save, to_document, Coef, Entry, Generator, Object, ObjectDocument, ObjectKind, Part, StageGenerator,
    WitnessBlock, SCHEMA_VERSION,
};
pub use report::{digest, verdict_json, verdict_text, ReportDocument, ENGINE_VERSION};
