use std::cmp::Ordering;

use nalgebra::{DMatrix, DVector};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::modular::{validate_verlinde_axioms, ModularData, INTEGER_TOLERANCE};
use crate::report::ValidationReport;
use crate::scalar::{abs, one, re, zero, Real, C};
use crate::tube::algebra::TubeAlgebra;
use crate::tube::center::{projection_coordinates, CenterData};

/// `S′(p_i) = Σ_l M[l][i] p_l` on the minimal projections.
pub fn s_prime_action<T: Real>(t: &TubeAlgebra<T>, c: &CenterData<T>) -> Result<DMatrix<C<T>>> {
    let r = c.rank;
    let mut m = DMatrix::from_element(r, r, zero());
    for (i, p) in c.projections.iter().enumerate() {
        let image = t.s_prime(p)?;
        let (coords, res) = projection_coordinates(&c.projections, &image);
        if res > T::lit(1e-7) {
            return Err(Error::DimensionMismatch(format!(
                "S′ image of a projection leaves the center by {:.3e}",
                res.as_f64()
            )));
        }
        m.set_column(i, &coords);
    }
    Ok(m)
}

/// Matrix of `T′` on the minimal projections; it must be diagonal.
pub fn t_prime_action<T: Real>(t: &TubeAlgebra<T>, c: &CenterData<T>) -> Result<DMatrix<C<T>>> {
    let r = c.rank;
    let mut m = DMatrix::from_element(r, r, zero());
    let mut off = T::zero();
    for (i, p) in c.projections.iter().enumerate() {
        let (coords, res) = projection_coordinates(&c.projections, &t.t_prime(p));
        off = off.max(res);
        for (l, z) in coords.iter().enumerate() {
            if l != i {
                off = off.max(abs(*z));
            }
        }
        m.set_column(i, &coords);
    }
    if off > T::lit(1e-7) {
        return Err(Error::NotDiagonal(off.as_f64()));
    }
    Ok(m)
}

/// Largest deviation of `T′⁻¹ T′` from the identity on the projections.
pub fn t_prime_inverse_residual<T: Real>(t: &TubeAlgebra<T>, c: &CenterData<T>) -> Result<T> {
    let mut worst = T::zero();
    for p in &c.projections {
        let back = t.t_prime_inverse(&t.t_prime(p))?;
        worst = worst.max(
            back.iter()
                .zip(p.iter())
                .fold(T::zero(), |a, (x, y)| a.max(abs(*x - *y))),
        );
    }
    Ok(worst)
}

/// Modular data together with the projection each label came from.
#[derive(Debug, Clone)]
pub struct Extraction<T: Real> {
    pub md: ModularData<T>,
    /// `order[a]` is the index in `CenterData::projections` of label `a`.
    pub order: Vec<usize>,
    /// Largest deviation of `T′⁻¹ T′` from the identity.
    pub t_inverse_residual: f64,
}

fn phase_angle<T: Real>(z: C<T>) -> f64 {
    let a = z.im.as_f64().atan2(z.re.as_f64());
    let a = if a < -1e-9 {
        a + std::f64::consts::TAU
    } else {
        a.max(0.0)
    };
    // quantize so that ties between equal phases are exact
    (a * 1e6).round() / 1e6
}

/// Reads `(S, t)` off the SL(2,Z) action on the center.
///
/// In the basis of minimal projections the raw matrix is
/// `M[l][i] = (d_i / d_l) conj(S_{il})`: the vacuum column is constant `1/λ`
/// and `M[0][i] = d_i²/λ`. The TQFT data is the complex conjugate of the
/// rescaled action, so `S_{li} = conj(M[l][i]) d_l / d_i` and `t_i = conj(θ_i)`.
pub fn extract<T: Real>(tube: &TubeAlgebra<T>, c: &CenterData<T>) -> Result<Extraction<T>> {
    let r = c.rank;
    let m = s_prime_action(tube, c)?;
    let theta = t_prime_action(tube, c)?;
    let tol = T::lit(1e-6);

    let vac: Vec<usize> = (0..r)
        .filter(|&i| {
            abs(theta[(i, i)] - one()) < tol
                && (0..r).all(|l| m[(l, i)].im.magnitude() < tol && m[(l, i)].re > tol)
        })
        .collect();
    if vac.len() != 1 {
        return Err(Error::VacuumNotUnique(vac.len()));
    }
    let v = vac[0];
    let inv_lambda = (0..r).fold(T::zero(), |a, l| a + m[(l, v)].re) / T::from_int(r as i64);
    let lambda = T::one() / inv_lambda;
    let mut d = Vec::with_capacity(r);
    for i in 0..r {
        let z = m[(v, i)] * re(lambda);
        if z.im.magnitude() > tol || z.re < T::one() - tol {
            return Err(Error::AxiomFailure {
                axiom: "iic1".into(),
                detail: format!("projection {i} has dimension² {z}"),
            });
        }
        d.push(z.re.sqrt());
    }
    let s_raw = DMatrix::from_fn(r, r, |l, i| m[(l, i)].conj() * re(d[l] / d[i]));
    let t_raw: Vec<C<T>> = (0..r).map(|i| theta[(i, i)].conj()).collect();

    // vacuum first, then by dimension, twist phase and S column
    let mut rest: Vec<usize> = (0..r).filter(|&i| i != v).collect();
    let fp = |i: usize| -> Vec<(f64, f64)> {
        let mut col: Vec<(f64, f64)> = (0..r)
            .map(|k| {
                (
                    (s_raw[(k, i)].re.as_f64() * 1e6).round(),
                    (s_raw[(k, i)].im.as_f64() * 1e6).round(),
                )
            })
            .collect();
        col.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
        col
    };
    rest.sort_by(|&a, &b| {
        let da = (d[a].as_f64() * 1e6).round();
        let db = (d[b].as_f64() * 1e6).round();
        da.partial_cmp(&db)
            .unwrap_or(Ordering::Equal)
            .then(
                phase_angle(t_raw[a])
                    .partial_cmp(&phase_angle(t_raw[b]))
                    .unwrap_or(Ordering::Equal),
            )
            .then(fp(a).partial_cmp(&fp(b)).unwrap_or(Ordering::Equal))
    });
    let mut order = vec![v];
    order.extend(rest);

    let s = DMatrix::from_fn(r, r, |a, b| s_raw[(order[a], order[b])]);
    let tv: Vec<C<T>> = order.iter().map(|&i| t_raw[i]).collect();
    let mut md = ModularData::new(format!("center of {}", tube.system), s, tv);
    md.lambda = lambda;
    md.provenance
        .insert("derived_from".into(), Value::from(tube.system.clone()));
    md.provenance
        .insert("method".into(), Value::from("tube algebra center"));

    let t_inverse_residual = t_prime_inverse_residual(tube, c)?.as_f64();
    Ok(Extraction {
        md,
        order,
        t_inverse_residual,
    })
}

/// Extracted modular data; fails when the Verlinde-basis axioms do not hold.
pub fn modular_data_from_tube<T: Real>(
    tube: &TubeAlgebra<T>,
    c: &CenterData<T>,
) -> Result<ModularData<T>> {
    let ext = extract(tube, c)?;
    let report = validate_verlinde_axioms(&ext.md, 1e-8, INTEGER_TOLERANCE);
    if let Some(v) = report.violations.first() {
        return Err(Error::AxiomFailure {
            axiom: v.tag.clone(),
            detail: v.message.clone(),
        });
    }
    Ok(ext.md)
}

/// Orthonormality of `(√λ/d_i) p_i` under the tube inner product.
pub fn tube_inner_orthonormality_check<T: Real>(
    tube: &TubeAlgebra<T>,
    c: &CenterData<T>,
    ext: &Extraction<T>,
    tol: f64,
) -> ValidationReport {
    let mut report = ValidationReport::new("tube inner product");
    let d = ext.md.dims();
    let lam = tube.lambda.sqrt();
    let scaled: Vec<DVector<C<T>>> = ext
        .order
        .iter()
        .zip(&d)
        .map(|(&k, &di)| &c.projections[k] * re(lam / di))
        .collect();
    let mut worst = T::zero();
    for (a, x) in scaled.iter().enumerate() {
        for (b, y) in scaled.iter().enumerate() {
            let want = if a == b { one() } else { zero() };
            worst = worst.max(abs(tube.inner(x, y) - want));
        }
    }
    report.residual(worst.as_f64());
    if worst.as_f64() > tol {
        report.violation(
            "orthonormal",
            format!(
                "scaled projections deviate from orthonormal by {:.3e}",
                worst.as_f64()
            ),
        );
    }
    report
}
