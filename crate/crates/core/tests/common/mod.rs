//! Independent reference data shared by the integration tests.
#![allow(dead_code)]

use nalgebra::DMatrix;
use tvo::modular::ModularData;
use tvo::scalar::C;

pub fn c(re: f64, im: f64) -> C<f64> {
    C::new(re, im)
}

pub fn cis(turns: f64) -> C<f64> {
    C::from_polar(1.0, std::f64::consts::TAU * turns)
}

/// Single-layer Fibonacci data: `S = [[1, φ], [φ, -1]] / sqrt(2 + φ)`, `t_τ = e^{4πi/5}`.
pub fn fibonacci_layer() -> ModularData<f64> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let n = 1.0 / (2.0 + phi).sqrt();
    let s = DMatrix::from_row_slice(
        2,
        2,
        &[c(n, 0.0), c(n * phi, 0.0), c(n * phi, 0.0), c(-n, 0.0)],
    );
    ModularData::new("fibonacci layer", s, vec![c(1.0, 0.0), cis(0.4)])
}

/// Single-layer Ising data with `t = (1, -1, e^{iπ/8})`.
pub fn ising_layer() -> ModularData<f64> {
    let r = 2f64.sqrt();
    let s = DMatrix::from_row_slice(
        3,
        3,
        &[
            c(0.5, 0.0),
            c(0.5, 0.0),
            c(r / 2.0, 0.0),
            c(0.5, 0.0),
            c(0.5, 0.0),
            c(-r / 2.0, 0.0),
            c(r / 2.0, 0.0),
            c(-r / 2.0, 0.0),
            c(0.0, 0.0),
        ],
    );
    ModularData::new(
        "ising layer",
        s,
        vec![c(1.0, 0.0), c(-1.0, 0.0), cis(1.0 / 16.0)],
    )
}

/// Direct multi-index sum of a chain, written out without matrix products.
pub fn chain_by_enumeration(md: &ModularData<f64>, a: &[i64]) -> C<f64> {
    let m = md.rank();
    let n = a.len();
    let mut idx = vec![0usize; n];
    let mut total = c(0.0, 0.0);
    loop {
        let mut term = md.s[(idx[0], 0)];
        for k in 0..n {
            term *= md.t[idx[k]].powi(a[k] as i32);
            let next = if k + 1 < n { idx[k + 1] } else { 0 };
            term *= md.s[(idx[k], next)];
        }
        total += term;
        let Some(pos) = idx.iter().position(|&i| i + 1 < m) else {
            break;
        };
        idx[pos] += 1;
        idx[..pos].iter_mut().for_each(|i| *i = 0);
    }
    total
}

/// `|Hom(Z/p, Z/n)| / n`.
pub fn counting_oracle(p: i64, n: i64) -> f64 {
    num_integer::gcd(p, n) as f64 / n as f64
}
