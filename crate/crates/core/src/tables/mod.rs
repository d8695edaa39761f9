//! Committed tables of closed-form invariant values and comparison of
//! modular data against them.
//!
//! A table may be matched by the data as given or by its complex conjugate
//! (the mirror orientation). The choice is made once per table, never per row.

pub mod expr;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::modular::{conjugate, ModularData};
use crate::scalar::{abs, C};
use crate::surgery::{
    brieskorn_invariant, lens_closed_form_p1, lens_closed_form_p2, lens_closed_form_p3,
    lens_invariant, s3_invariant, star_invariant,
};

/// Tables shipped with the crate, by name.
pub const BUILTIN_TABLES: &[(&str, &str)] = &[
    ("d5", include_str!("../../data/tables/d5.json")),
    ("e6", include_str!("../../data/tables/e6.json")),
    ("e6_z2z2", include_str!("../../data/tables/e6_z2z2.json")),
    ("e6_z3", include_str!("../../data/tables/e6_z3.json")),
    ("e6_z4", include_str!("../../data/tables/e6_z4.json")),
    ("e6_z5", include_str!("../../data/tables/e6_z5.json")),
    ("haagerup", include_str!("../../data/tables/haagerup.json")),
];

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum PSpec {
    Fixed(i64),
    Range {
        from: i64,
        to: i64,
        #[serde(default)]
        modulus: Option<i64>,
        #[serde(default)]
        residue: i64,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "invariant", rename_all = "lowercase", deny_unknown_fields)]
enum RawRow {
    Lens {
        p: PSpec,
        q: i64,
        value: String,
    },
    Brieskorn {
        args: [i64; 3],
        value: String,
    },
    Star {
        hub: i64,
        legs: Vec<i64>,
        value: String,
    },
    S3 {
        value: String,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    name: String,
    title: String,
    rows: Vec<RawRow>,
}

/// What to evaluate for one table entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    Lens(i64, i64),
    Brieskorn(i64, i64, i64),
    Star { hub: i64, legs: Vec<i64> },
    S3,
}

impl Query {
    pub fn label(&self) -> String {
        match self {
            Query::Lens(p, q) => format!("L({p},{q})"),
            Query::Brieskorn(p, q, r) => format!("Sigma({p},{q},{r})"),
            Query::Star { hub, legs } => {
                let l: Vec<String> = legs.iter().map(|x| x.to_string()).collect();
                format!("Star({hub};{})", l.join(","))
            }
            Query::S3 => "S3".into(),
        }
    }

    /// Lens spaces outside `1 ≤ q < p` fall back to the closed forms for
    /// `q ≤ 3`, which are defined for every admissible `p`.
    pub fn evaluate(&self, md: &ModularData<f64>) -> Result<C<f64>> {
        match self {
            &Query::Lens(p, q) => {
                if q >= 1 && q < p {
                    return lens_invariant(md, p, q);
                }
                match q {
                    1 => Ok(lens_closed_form_p1(md, p)),
                    2 => lens_closed_form_p2(md, p),
                    3 => lens_closed_form_p3(md, p),
                    _ => Err(Error::BadInput(format!("no evaluator for L({p},{q})"))),
                }
            }
            &Query::Brieskorn(p, q, r) => brieskorn_invariant(md, p, q, r),
            Query::Star { hub, legs } => star_invariant(md, *hub, legs),
            Query::S3 => s3_invariant(md),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub query: Query,
    pub expression: String,
    pub expected: C<f64>,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub name: String,
    pub title: String,
    pub entries: Vec<Entry>,
}

impl Table {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawTable = serde_json::from_str(text)?;
        let mut entries = Vec::new();
        for row in raw.rows {
            match row {
                RawRow::Lens { p, q, value } => match p {
                    PSpec::Fixed(p) => entries.push(Entry {
                        query: Query::Lens(p, q),
                        expected: expr::eval(&value, Some(p))?,
                        expression: value,
                    }),
                    PSpec::Range {
                        from,
                        to,
                        modulus,
                        residue,
                    } => {
                        for p in from..=to {
                            if modulus.is_some_and(|m| p.rem_euclid(m) != residue) {
                                continue;
                            }
                            entries.push(Entry {
                                query: Query::Lens(p, q),
                                expected: expr::eval(&value, Some(p))?,
                                expression: value.clone(),
                            });
                        }
                    }
                },
                RawRow::Brieskorn {
                    args: [p, q, r],
                    value,
                } => entries.push(Entry {
                    query: Query::Brieskorn(p, q, r),
                    expected: expr::eval(&value, None)?,
                    expression: value,
                }),
                RawRow::Star { hub, legs, value } => entries.push(Entry {
                    query: Query::Star { hub, legs },
                    expected: expr::eval(&value, None)?,
                    expression: value,
                }),
                RawRow::S3 { value } => entries.push(Entry {
                    query: Query::S3,
                    expected: expr::eval(&value, None)?,
                    expression: value,
                }),
            }
        }
        Ok(Self {
            name: raw.name,
            title: raw.title,
            entries,
        })
    }

    /// A shipped table by name, or a table file by path.
    /// Built-in name (`haagerup` or `haagerup_table`), or a path to a table file.
    pub fn resolve(name_or_path: &str) -> Result<Self> {
        let short = name_or_path.strip_suffix("_table").unwrap_or(name_or_path);
        if let Some((_, text)) = BUILTIN_TABLES.iter().find(|(n, _)| *n == short) {
            return Self::from_json(text);
        }
        let path = std::path::Path::new(name_or_path);
        if path.exists() {
            return Self::from_json(&std::fs::read_to_string(path)?);
        }
        Err(Error::BadInput(format!("no table named '{name_or_path}'")))
    }

    pub fn get(&self, q: &Query) -> Option<&Entry> {
        self.entries.iter().find(|e| &e.query == q)
    }
}

/// One compared entry.
#[derive(Debug, Clone)]
pub struct RowComparison {
    pub label: String,
    pub computed: C<f64>,
    pub expected: C<f64>,
    pub deviation: f64,
}

#[derive(Debug, Clone)]
pub struct Comparison {
    pub table: String,
    /// Whether the data had to be conjugated to match.
    pub conjugated: bool,
    pub max_deviation: f64,
    /// Deviation under the rejected convention, for the record.
    pub other_deviation: f64,
    pub rows: Vec<RowComparison>,
}

impl Comparison {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_deviation <= tol
    }
}

fn compare_as_is(md: &ModularData<f64>, table: &Table) -> Result<Vec<RowComparison>> {
    table
        .entries
        .iter()
        .map(|e| {
            let computed = e.query.evaluate(md)?;
            Ok(RowComparison {
                label: e.query.label(),
                computed,
                expected: e.expected,
                deviation: abs(computed - e.expected),
            })
        })
        .collect()
}

/// Compares every entry, choosing one orientation for the whole table.
pub fn compare(md: &ModularData<f64>, table: &Table) -> Result<Comparison> {
    let plain = compare_as_is(md, table)?;
    let mirrored = compare_as_is(&conjugate(md), table)?;
    let worst = |rows: &[RowComparison]| rows.iter().fold(0.0f64, |a, r| a.max(r.deviation));
    let (a, b) = (worst(&plain), worst(&mirrored));
    let (conjugated, rows, max_deviation, other_deviation) = if b < a {
        (true, mirrored, b, a)
    } else {
        (false, plain, a, b)
    };
    Ok(Comparison {
        table: table.name.clone(),
        conjugated,
        max_deviation,
        other_deviation,
        rows,
    })
}
