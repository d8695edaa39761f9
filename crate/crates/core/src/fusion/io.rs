//! JSON reader and writer for fusion systems.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::fusion::builtins::DEFAULT_TOLERANCE;
use crate::fusion::fsymbols::{FKey, FSymbols};
use crate::fusion::ring::{validate_fusion_ring, FusionRing};
use crate::fusion::FusionSystem;
use crate::scalar::{c, Real};

#[derive(Debug, Serialize, Deserialize)]
struct LabelEntry {
    name: String,
    dual: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct SystemFile {
    name: String,
    rank: usize,
    labels: Vec<LabelEntry>,
    #[serde(rename = "N")]
    n: Vec<[u32; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dims: Option<Vec<f64>>,
    #[serde(rename = "F")]
    f: Vec<Vec<Value>>,
    #[serde(default = "default_tolerance")]
    tolerance: f64,
}

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

fn index(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::Schema(format!("{what} must be a non-negative integer, got {v}")))
}

fn number(v: &Value, what: &str) -> Result<f64> {
    v.as_f64()
        .ok_or_else(|| Error::Schema(format!("{what} must be a number, got {v}")))
}

/// Parses a fusion system from JSON text. Invalid rings are rejected.
pub fn from_json<T: Real>(text: &str) -> Result<FusionSystem<T>> {
    let file: SystemFile = serde_json::from_str(text)?;
    if file.labels.len() != file.rank {
        return Err(Error::Schema(format!(
            "rank {} but {} labels",
            file.rank,
            file.labels.len()
        )));
    }
    for e in &file.n {
        if e[..3].iter().any(|&x| x as usize >= file.rank) {
            return Err(Error::Schema(format!("N entry {e:?} is out of range")));
        }
    }
    let labels = file.labels.into_iter().map(|l| (l.name, l.dual)).collect();
    let entries: Vec<_> = file
        .n
        .iter()
        .map(|e| (e[0] as usize, e[1] as usize, e[2] as usize, e[3]))
        .collect();
    let ring = FusionRing::from_sparse(labels, &entries);
    let report = validate_fusion_ring(&ring);
    if !report.is_valid() {
        return Err(Error::InvalidRing(report));
    }
    let mut fentries = Vec::with_capacity(file.f.len());
    for row in &file.f {
        if row.len() != 12 {
            return Err(Error::Schema(format!(
                "F entry needs 12 fields, got {}",
                row.len()
            )));
        }
        let ix: Vec<usize> = row[..10]
            .iter()
            .map(|v| index(v, "F index"))
            .collect::<Result<_>>()?;
        let key = FKey {
            i: ix[0],
            j: ix[1],
            k: ix[2],
            l: ix[3],
            m: ix[4],
            alpha: ix[5],
            beta: ix[6],
            n: ix[7],
            gamma: ix[8],
            delta: ix[9],
        };
        let value = c(
            T::lit(number(&row[10], "re")?),
            T::lit(number(&row[11], "im")?),
        );
        fentries.push((key, value));
    }
    let f = FSymbols::from_entries(&ring, fentries)?;
    let fs = FusionSystem::new(file.name, ring, f, file.tolerance)?;
    if let Some(dims) = file.dims {
        if dims.len() != fs.rank() {
            return Err(Error::Schema("dims has the wrong length".into()));
        }
        for (i, &d) in dims.iter().enumerate() {
            if (d - fs.d(i).as_f64()).abs() > 1e-6 * d.abs().max(1.0) {
                return Err(Error::Schema(format!(
                    "declared dimension {d} of {} disagrees with {}",
                    fs.ring().name(i),
                    fs.d(i).as_f64()
                )));
            }
        }
    }
    Ok(fs)
}

pub fn load<T: Real>(path: &Path) -> Result<FusionSystem<T>> {
    from_json(&std::fs::read_to_string(path)?)
}

/// Serializes a system; zero F entries are omitted.
pub fn to_json<T: Real>(fs: &FusionSystem<T>) -> Result<String> {
    let ring = fs.ring();
    let f = fs
        .fsymbols()
        .entries()
        .into_iter()
        .map(|(k, v)| {
            let mut row: Vec<Value> = [
                k.i, k.j, k.k, k.l, k.m, k.alpha, k.beta, k.n, k.gamma, k.delta,
            ]
            .iter()
            .map(|&x| Value::from(x as u64))
            .collect();
            row.push(Value::from(v.re.as_f64()));
            row.push(Value::from(v.im.as_f64()));
            row
        })
        .collect();
    let file = SystemFile {
        name: fs.name().to_string(),
        rank: ring.rank(),
        labels: ring
            .labels()
            .iter()
            .map(|l| LabelEntry {
                name: l.name.clone(),
                dual: l.dual,
            })
            .collect(),
        n: ring
            .entries()
            .into_iter()
            .map(|(i, j, k, v)| [i as u32, j as u32, k as u32, v])
            .collect(),
        dims: Some(fs.dims().d.iter().map(|d| d.as_f64()).collect()),
        f,
        tolerance: fs.tolerance(),
    };
    let mut s = serde_json::to_string_pretty(&file)?;
    s.push('\n');
    Ok(s)
}

pub fn save<T: Real>(fs: &FusionSystem<T>, path: &Path) -> Result<()> {
    std::fs::write(path, to_json(fs)?)?;
    Ok(())
}
