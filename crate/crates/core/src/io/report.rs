use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::chain::TrustedRange;
use crate::verdict::{Evidence, Verdict};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Envelope around every structured output. Keys are sorted, so equal
/// inputs give byte-identical reports.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    pub engine_version: String,
    pub command: String,
    pub input_digest: String,
    pub payload: Value,
}

impl ReportDocument {
    pub fn new(command: &str, input: &[u8], payload: Value) -> ReportDocument {
        ReportDocument { engine_version: ENGINE_VERSION.into(), command: command.into(), input_digest: digest(input), payload }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Lowercase hex SHA-256.
pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn range(r: &TrustedRange) -> Value {
    json!([r.lo, r.hi])
}

fn evidence(e: &Evidence) -> Value {
    match e {
        Evidence::Ranks(rows) => json!({
            "ranks": rows.iter().map(|(d, r, s, t)| json!({"degree": d, "rank": r, "source_dim": s, "target_dim": t})).collect::<Vec<_>>()
        }),
        Evidence::QuasiIso(q) => json!({
            "quasi_iso": {
                "holds": q.holds,
                "range": range(&q.range),
                "degrees": q.degrees.iter().map(|d| json!({
                    "degree": d.degree,
                    "source_dim": d.source_dim,
                    "target_dim": d.target_dim,
                    "induced_rank": d.induced_rank,
                })).collect::<Vec<_>>(),
            }
        }),
        Evidence::Homology { range: r, dims } => json!({
            "homology": {"range": range(r), "dims": dims.iter().map(|(d, n)| json!([d, n])).collect::<Vec<_>>()}
        }),
        Evidence::Identity(s) => json!({ "identity": s }),
        Evidence::Note(s) => json!({ "note": s }),
    }
}

pub fn verdict_json(v: &Verdict) -> Value {
    json!({
        "check": v.check,
        "problem": v.problem,
        "outcome": v.outcome.as_str(),
        "lines": v.lines.iter().map(|l| json!({
            "name": l.name,
            "outcome": l.outcome.as_str(),
            "evidence": l.evidence.iter().map(evidence).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "inferences": v.ledger.iter().map(|i| json!({
            "conclusion": i.conclusion,
            "by": i.by,
            "hypotheses": i.hypotheses,
        })).collect::<Vec<_>>(),
        "attachments": v.attachments.iter().map(|a| json!({
            "name": a.name,
            "basis": a.basis.iter().map(|(d, ls)| json!({"degree": d, "labels": ls})).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "notes": v.notes,
    })
}

fn evidence_text(e: &Evidence) -> String {
    match e {
        Evidence::Ranks(rows) => {
            let parts: Vec<String> =
                rows.iter().filter(|r| r.2 > 0 || r.3 > 0).map(|(d, r, s, t)| format!("deg {d}: rank {r} of {s}x{t}")).collect();
            parts.join(", ")
        }
        Evidence::QuasiIso(q) => {
            let parts: Vec<String> = q
                .degrees
                .iter()
                .map(|d| format!("H{}: {} -> {} rank {}", d.degree, d.source_dim, d.target_dim, d.induced_rank))
                .collect();
            format!("on [{}, {}]: {}", q.range.lo, q.range.hi, parts.join(", "))
        }
        Evidence::Homology { range: r, dims } => {
            let parts: Vec<String> = dims.iter().map(|(d, n)| format!("H{d} = {n}")).collect();
            format!("on [{}, {}]: {}", r.lo, r.hi, parts.join(", "))
        }
        Evidence::Identity(s) | Evidence::Note(s) => s.clone(),
    }
}

pub fn verdict_text(v: &Verdict) -> String {
    let mut out = format!("{} for {}: {}\n", v.check, v.problem, v.outcome.as_str());
    for l in &v.lines {
        out.push_str(&format!("  [{}] {}\n", l.outcome.as_str(), l.name));
        for e in &l.evidence {
            out.push_str(&format!("      {}\n", evidence_text(e)));
        }
    }
    for i in &v.ledger {
        out.push_str(&format!("  => {}\n       by: {}\n       from: {}\n", i.conclusion, i.by, i.hypotheses.join("; ")));
    }
    for a in &v.attachments {
        let parts: Vec<String> = a.basis.iter().map(|(d, ls)| format!("{d}: {}", ls.join(" "))).collect();
        out.push_str(&format!("  {}: {}\n", a.name, parts.join("; ")));
    }
    for n in &v.notes {
        out.push_str(&format!("  note: {n}\n"));
    }
    out
}
