//! `hgx`: verify DG structures, build corings and cobar models, and run the
//! Hopf–Galois checks on object documents.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hgx_core::io::ReportDocument;
use hgx_core::linalg::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Range {
    pub lo: i64,
    pub hi: i64,
}

fn parse_range(s: &str) -> Result<Range, String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected LO:HI, got {s:?}"))?;
    let lo = a.trim().parse().map_err(|_| format!("bad lower bound {a:?}"))?;
    let hi = b.trim().parse().map_err(|_| format!("bad upper bound {b:?}"))?;
    if hi < lo {
        return Err(format!("empty range {s}"));
    }
    Ok(Range { lo, hi })
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e| format!("{e}"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Classical,
    Homotopic,
    Descent,
    Koszul,
}

#[derive(Parser, Debug)]
#[command(name = "hgx", version, about = "Exact checks for DG Hopf-Galois extensions")]
pub struct Cli {
    /// `Q` or `Fp:<p>`; documents must agree with it when given.
    #[arg(long, global = true, value_parser = parse_field)]
    pub field: Option<Field>,
    /// Degree window `LO:HI` for constructions and shipped fixtures.
    #[arg(long, global = true, value_parser = parse_range)]
    pub window: Option<Range>,
    /// Also write the structured report to this path.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Load a document and verify every structure axiom.
    Verify { file: PathBuf },
    /// Homology dimensions over a range inside the trusted range.
    Homology {
        file: PathBuf,
        #[arg(long, value_parser = parse_range)]
        range: Option<Range>,
    },
    /// The descent coring `B ⊗_A B` of an extension problem.
    Desc { file: PathBuf },
    /// The Hopf coring `B ⊗ Cof(Γ)` of an extension problem.
    Hopf { file: PathBuf },
    /// The quotient coalgebra `Cof(Γ)` of an extension problem.
    Cof { file: PathBuf },
    /// Ranks of the Galois coring map.
    Galois { file: PathBuf },
    /// The cobar complex `Ω(M; C; N)` of a coaugmented coalgebra.
    Cobar {
        file: PathBuf,
        /// `ground`, `regular`, or a comodule-algebra document.
        #[arg(long, default_value = "ground")]
        left: String,
        /// `ground` or `regular`.
        #[arg(long, default_value = "ground")]
        right: String,
    },
    /// The bar coalgebra of an augmented algebra.
    Bar { file: PathBuf },
    /// The homotopy-coinvariant model `Ω(A; H; R)` of a comodule algebra.
    Hco { file: PathBuf },
    /// Run one of the extension checks.
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        file: PathBuf,
    },
    /// Emit a shipped fixture, or list them.
    Catalog { name: Option<String> },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = commands::run(&cli);
    let report = ReportDocument::new(&out.command, &out.input, out.payload.clone());
    if let Some(path) = &cli.report {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: cannot write report {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    match cli.format {
        Format::Text => print!("{}", out.text),
        Format::Structured => print!("{}", report.to_json()),
    }
    if let Some(e) = &out.error {
        eprintln!("error: {e}");
    }
    ExitCode::from(out.code)
}
