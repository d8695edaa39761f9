//! Canonical JSON form of modular data.
//!
//! Numbers are written with 17 significant digits so that every `f64`
//! survives a round trip; keys appear in a fixed order and lines end in `\n`.

use std::fmt::Write as _;
use std::path::Path;

use nalgebra::DMatrix;
use serde::Deserialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::modular::{validate_verlinde_axioms, ModularData, INTEGER_TOLERANCE};
use crate::scalar::{from_pair, to_pair, Real};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModularFile {
    name: String,
    rank: usize,
    labels: Vec<String>,
    lambda: f64,
    #[serde(rename = "S")]
    s: Vec<Vec<[f64; 2]>>,
    t: Vec<[f64; 2]>,
    #[serde(default)]
    provenance: Map<String, Value>,
    #[serde(default = "default_tolerance")]
    tolerance: f64,
}

fn default_tolerance() -> f64 {
    1e-9
}

/// Canonical number text: 17 significant digits in exponent form.
pub fn fmt_number(x: f64) -> String {
    if x == 0.0 {
        // keep the sign of negative zero out of golden files
        return "0.0000000000000000e0".to_string();
    }
    format!("{x:.16e}")
}

pub fn fmt_complex(z: [f64; 2]) -> String {
    format!("[{}, {}]", fmt_number(z[0]), fmt_number(z[1]))
}

/// Serializes to the canonical text.
pub fn to_canonical_json<T: Real>(md: &ModularData<T>) -> String {
    let mut out = String::new();
    let q = |s: &str| serde_json::to_string(s).expect("string");
    out.push_str("{\n");
    let _ = writeln!(out, "  \"name\": {},", q(&md.name));
    let _ = writeln!(out, "  \"rank\": {},", md.rank());
    let labels: Vec<String> = md.labels.iter().map(|l| q(l)).collect();
    let _ = writeln!(out, "  \"labels\": [{}],", labels.join(", "));
    let _ = writeln!(out, "  \"lambda\": {},", fmt_number(md.lambda.as_f64()));
    out.push_str("  \"S\": [\n");
    for i in 0..md.rank() {
        let row: Vec<String> = (0..md.rank())
            .map(|j| fmt_complex(to_pair(md.s[(i, j)])))
            .collect();
        let sep = if i + 1 < md.rank() { "," } else { "" };
        let _ = writeln!(out, "    [{}]{sep}", row.join(", "));
    }
    out.push_str("  ],\n");
    let t: Vec<String> = md.t.iter().map(|z| fmt_complex(to_pair(*z))).collect();
    let _ = writeln!(out, "  \"t\": [{}],", t.join(", "));
    let prov = serde_json::to_string(&Value::Object(md.provenance.clone())).expect("json");
    let _ = writeln!(out, "  \"provenance\": {prov},");
    let _ = writeln!(out, "  \"tolerance\": {}", fmt_number(md.tolerance));
    out.push_str("}\n");
    out
}

/// Parses modular data and records the axiom report. With `strict`, any
/// violation or warning is an error.
pub fn from_json<T: Real>(text: &str, strict: bool) -> Result<ModularData<T>> {
    let file: ModularFile = serde_json::from_str(text)?;
    let r = file.rank;
    if file.labels.len() != r
        || file.t.len() != r
        || file.s.len() != r
        || file.s.iter().any(|row| row.len() != r)
    {
        return Err(Error::Schema(format!(
            "rank {r} does not match the sizes of labels, S and t"
        )));
    }
    if r == 0 {
        return Err(Error::Schema("rank must be at least 1".into()));
    }
    let s = DMatrix::from_fn(r, r, |i, j| from_pair(file.s[i][j]));
    let md = ModularData {
        name: file.name,
        labels: file.labels,
        s,
        t: file.t.iter().map(|&z| from_pair(z)).collect(),
        lambda: T::lit(file.lambda),
        provenance: file.provenance,
        tolerance: file.tolerance,
        load_report: None,
    };
    let report = validate_verlinde_axioms(&md, md.tolerance, INTEGER_TOLERANCE);
    if let Some(v) = report.violations.first() {
        if strict {
            return Err(Error::AxiomFailure {
                axiom: v.tag.clone(),
                detail: v.message.clone(),
            });
        }
    }
    if strict {
        if let Some(w) = report.warnings.first() {
            return Err(Error::AxiomFailure {
                axiom: w.tag.clone(),
                detail: w.message.clone(),
            });
        }
    }
    Ok(ModularData {
        load_report: Some(report),
        ..md
    })
}

pub fn load<T: Real>(path: &Path, strict: bool) -> Result<ModularData<T>> {
    from_json(&std::fs::read_to_string(path)?, strict)
}

pub fn save<T: Real>(md: &ModularData<T>, path: &Path) -> Result<()> {
    std::fs::write(path, to_canonical_json(md))?;
    Ok(())
}
