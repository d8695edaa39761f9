//! Result records for computed invariants.

use std::fmt::Write as _;

use crate::modular::io::fmt_complex;
use crate::scalar::{to_pair, Real, C};

/// Surgery description of a manifold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Presentation {
    /// Linear chain of unknots with the given framings.
    Chain(Vec<i64>),
    /// A `hub`-framed circle with one meridian per leg framing.
    Star { hub: i64, legs: Vec<i64> },
}

impl Presentation {
    fn to_json(&self) -> String {
        let list = |v: &[i64]| {
            v.iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        match self {
            Presentation::Chain(a) => format!("{{\"chain\": [{}]}}", list(a)),
            Presentation::Star { hub, legs } => format!(
                "{{\"star\": {{\"hub\": {hub}, \"legs\": [{}]}}}}",
                list(legs)
            ),
        }
    }
}

/// One computed value together with what it was computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantValue<T: Real> {
    /// Human descriptor such as `L(7,2)` or `Sigma(2,3,5)`.
    pub manifold: String,
    pub presentation: Presentation,
    pub value: C<T>,
    pub data: String,
    pub conjugated: bool,
}

impl<T: Real> InvariantValue<T> {
    /// Canonical single-line JSON.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        let q = |s: &str| serde_json::to_string(s).expect("string");
        let _ = write!(
            out,
            "{{\"manifold\": {}, \"presentation\": {}, \"value\": {}, \"data\": {}, \"convention\": {}}}",
            q(&self.manifold),
            self.presentation.to_json(),
            fmt_complex(to_pair(self.value)),
            q(&self.data),
            q(if self.conjugated { "conjugated" } else { "as-is" }),
        );
        out
    }
}
