//! Modular data `(S, t)`: validation, Verlinde fusion rules and conjugation.

pub mod io;
pub mod matching;

use nalgebra::DMatrix;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::fusion::FusionRing;
use crate::report::ValidationReport;
use crate::scalar::{abs, one, zero, Real, C};

pub use matching::{match_labels, LabelMatch};

/// Default rounding tolerance for Verlinde numbers.
pub const INTEGER_TOLERANCE: f64 = 1e-6;

/// Unitary symmetric `S`, diagonal `T = diag(t)`, vacuum at index 0.
#[derive(Debug, Clone, PartialEq)]
pub struct ModularData<T: Real> {
    pub name: String,
    pub labels: Vec<String>,
    pub s: DMatrix<C<T>>,
    pub t: Vec<C<T>>,
    pub lambda: T,
    pub provenance: Map<String, Value>,
    pub tolerance: f64,
    /// Report recorded by the loader.
    pub load_report: Option<ValidationReport>,
}

impl<T: Real> ModularData<T> {
    /// Record with `λ = 1/S₀₀` and default labels `z0, z1, ..`.
    pub fn new(name: impl Into<String>, s: DMatrix<C<T>>, t: Vec<C<T>>) -> Self {
        let lambda = if s.nrows() > 0 {
            T::one() / s[(0, 0)].re
        } else {
            T::zero()
        };
        let labels = (0..t.len()).map(|i| format!("z{i}")).collect();
        Self {
            name: name.into(),
            labels,
            s,
            t,
            lambda,
            provenance: Map::new(),
            tolerance: 1e-9,
            load_report: None,
        }
    }

    pub fn rank(&self) -> usize {
        self.t.len()
    }

    pub fn trivial() -> Self {
        Self::new("trivial", DMatrix::from_element(1, 1, one()), vec![one()])
    }

    /// `d_i = λ S_{0i}`.
    pub fn dims(&self) -> Vec<T> {
        (0..self.rank())
            .map(|i| self.lambda * self.s[(0, i)].re)
            .collect()
    }

    /// Charge conjugation read off `S²`.
    pub fn charge_conjugation(&self) -> Vec<usize> {
        let s2 = &self.s * &self.s;
        (0..self.rank())
            .map(|i| {
                (0..self.rank())
                    .max_by(|&a, &b| {
                        abs(s2[(i, a)])
                            .partial_cmp(&abs(s2[(i, b)]))
                            .expect("finite")
                    })
                    .unwrap_or(0)
            })
            .collect()
    }

    /// Relabels so that new label `a` is old label `perm[a]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let r = self.rank();
        let mut out = self.clone();
        out.s = DMatrix::from_fn(r, r, |i, j| self.s[(perm[i], perm[j])]);
        out.t = perm.iter().map(|&p| self.t[p]).collect();
        out.labels = perm.iter().map(|&p| self.labels[p].clone()).collect();
        out
    }
}

/// Entrywise complex conjugate of `S` and `t`.
pub fn conjugate<T: Real>(md: &ModularData<T>) -> ModularData<T> {
    let mut out = md.clone();
    out.s = md.s.map(|z| z.conj());
    out.t = md.t.iter().map(|z| z.conj()).collect();
    out.name = if let Some(base) = md.name.strip_suffix(" (conjugated)") {
        base.to_string()
    } else {
        format!("{} (conjugated)", md.name)
    };
    out.load_report = None;
    out
}

/// Deligne product: `S = S_a ⊗ S_b`, `t = t_a ⊗ t_b`, label `(i, j)` at
/// index `i·rank(b) + j`.
pub fn product<T: Real>(a: &ModularData<T>, b: &ModularData<T>) -> ModularData<T> {
    let (ra, rb) = (a.rank(), b.rank());
    let n = ra * rb;
    let s = DMatrix::from_fn(n, n, |x, y| a.s[(x / rb, y / rb)] * b.s[(x % rb, y % rb)]);
    let t = (0..n).map(|x| a.t[x / rb] * b.t[x % rb]).collect();
    let mut out = ModularData::new(format!("{} ⊠ {}", a.name, b.name), s, t);
    out.labels = (0..n)
        .map(|x| format!("({},{})", a.labels[x / rb], b.labels[x % rb]))
        .collect();
    out.lambda = a.lambda * b.lambda;
    out
}

/// Raw Verlinde numbers `N_{ij}^k = Σ_l S_{il} S_{jl} conj(S_{lk}) / S_{0l}`.
pub fn verlinde_numbers<T: Real>(md: &ModularData<T>) -> Vec<C<T>> {
    let r = md.rank();
    let s = &md.s;
    let mut out = vec![zero(); r * r * r];
    for l in 0..r {
        let w = one::<T>() / s[(0, l)];
        for i in 0..r {
            let a = s[(i, l)] * w;
            for j in 0..r {
                let b = a * s[(j, l)];
                for k in 0..r {
                    out[(i * r + j) * r + k] += b * s[(l, k)].conj();
                }
            }
        }
    }
    out
}

/// Verlinde fusion rules rounded to integers, with the largest rounding error.
pub fn fusion_rules<T: Real>(md: &ModularData<T>, int_tol: f64) -> Result<(FusionRing, f64)> {
    let r = md.rank();
    let raw = verlinde_numbers(md);
    let mut ints = vec![0u32; r * r * r];
    let mut worst = 0.0f64;
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let z = raw[(i * r + j) * r + k];
                let (x, y) = (z.re.as_f64(), z.im.as_f64());
                let rounded = x.round();
                let dev = (x - rounded).abs().max(y.abs());
                worst = worst.max(dev);
                if dev > int_tol || rounded < 0.0 {
                    return Err(Error::NonIntegral { i, j, k, value: x });
                }
                ints[(i * r + j) * r + k] = rounded as u32;
            }
        }
    }
    let conj = md.charge_conjugation();
    let labels = md.labels.iter().cloned().zip(conj).collect();
    Ok((
        FusionRing::from_fn(labels, |i, j, k| ints[(i * r + j) * r + k]),
        worst,
    ))
}

/// Checks the Verlinde-basis axioms. Tags: `iia` (S unitary, symmetric),
/// `iib` (S² an involutive permutation fixing 0), `iic1` (S_{i0} real,
/// nonzero), `iic2` (integral Verlinde numbers), `T-diag` (|t_i| = 1),
/// `t0` (warning when t₀ ≠ 1), `lambda` (λ = 1/S₀₀).
pub fn validate_verlinde_axioms<T: Real>(
    md: &ModularData<T>,
    tol: f64,
    int_tol: f64,
) -> ValidationReport {
    let mut report = ValidationReport::new(format!("modular data {}", md.name));
    let r = md.rank();
    if r == 0 || md.s.nrows() != r || md.s.ncols() != r || md.labels.len() != r {
        report.violation(
            "shape",
            format!(
                "S is {}×{}, t has {} entries",
                md.s.nrows(),
                md.s.ncols(),
                r
            ),
        );
        return report;
    }
    let tol_t = T::lit(tol);
    let s = &md.s;

    let unit_dev = (s.adjoint() * s - DMatrix::identity(r, r))
        .iter()
        .fold(T::zero(), |a, z| a.max(abs(*z)));
    let sym_dev = (s - s.transpose())
        .iter()
        .fold(T::zero(), |a, z| a.max(abs(*z)));
    report.residual(unit_dev.as_f64().max(sym_dev.as_f64()));
    if unit_dev > tol_t {
        report.violation(
            "iia",
            format!("S is not unitary (deviation {:.3e})", unit_dev.as_f64()),
        );
    }
    if sym_dev > tol_t {
        report.violation(
            "iia",
            format!("S is not symmetric (deviation {:.3e})", sym_dev.as_f64()),
        );
    }

    let s2 = s * s;
    let conj = md.charge_conjugation();
    let mut perm_dev = T::zero();
    for i in 0..r {
        for j in 0..r {
            let want = if conj[i] == j { one() } else { zero() };
            perm_dev = perm_dev.max(abs(s2[(i, j)] - want));
        }
    }
    report.residual(perm_dev.as_f64());
    if perm_dev > tol_t {
        report.violation(
            "iib",
            format!(
                "S² is not a permutation matrix (deviation {:.3e})",
                perm_dev.as_f64()
            ),
        );
    } else {
        if conj[0] != 0 {
            report.violation("iib", "charge conjugation moves the vacuum");
        }
        if (0..r).any(|i| conj[conj[i]] != i) {
            report.violation("iib", "charge conjugation is not an involution");
        }
        for i in 0..r {
            if abs(md.t[conj[i]] - md.t[i]) > tol_t {
                report.warning(
                    "C-t",
                    format!("t differs on {} and its conjugate", md.labels[i]),
                );
            }
        }
    }

    for i in 0..r {
        let z = s[(i, 0)];
        if z.im.magnitude() > tol_t {
            report.violation("iic1", format!("S[{i}][0] = {z} is not real"));
        }
        if abs(z) <= tol_t {
            report.violation("iic1", format!("S[{i}][0] vanishes"));
        }
    }

    for (i, z) in md.t.iter().enumerate() {
        let dev = (abs(*z) - T::one()).magnitude();
        if dev > tol_t {
            report.violation(
                "T-diag",
                format!("|t[{i}]| = {} is not 1", abs(*z).as_f64()),
            );
        }
    }
    if abs(md.t[0] - one()) > tol_t {
        report.warning("t0", format!("t[0] = {} is not 1", md.t[0]));
    }

    let lam = T::one() / s[(0, 0)].re;
    if (lam - md.lambda).magnitude() > T::lit(1e-6) * md.lambda.magnitude().max(T::one()) {
        report.violation(
            "lambda",
            format!("λ = {} but 1/S₀₀ = {}", md.lambda.as_f64(), lam.as_f64()),
        );
    }

    if report.violations.iter().all(|v| v.tag != "iic1") {
        match fusion_rules(md, int_tol) {
            Ok((_, dev)) => report.note(format!(
                "Verlinde numbers integral (max rounding {dev:.3e})"
            )),
            Err(Error::NonIntegral { i, j, k, value }) => report.violation(
                "iic2",
                format!("N[{i}][{j}][{k}] = {value:.9} is not a non-negative integer"),
            ),
            Err(e) => report.violation("iic2", e.to_string()),
        }
    }

    let st = s * DMatrix::from_diagonal(&nalgebra::DVector::from_vec(md.t.clone()));
    let lhs = &st * &st * &st;
    let dev = (lhs - &s2).iter().fold(T::zero(), |a, z| a.max(abs(*z)));
    if dev > T::lit(1e-8) {
        report.warning(
            "SL2Z",
            format!("(ST)³ differs from S² by {:.3e}", dev.as_f64()),
        );
    }
    report.note("axiom (iv) is not modeled and was skipped");
    report
}
