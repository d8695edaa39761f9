//! Small systems with closed-form F-symbols.

use crate::error::{Error, Result};
use crate::fusion::fsymbols::{FKey, FSymbols};
use crate::fusion::ring::FusionRing;
use crate::fusion::FusionSystem;
use crate::scalar::{one, re, root_of_unity, Real, C};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// `Vec_{Z/n}` twisted by the cocycle `ω(a,b,c) = exp(2πi k a (b+c−[b+c]) / n²)`.
pub fn vec_omega_cyclic<T: Real>(n: usize, k: i64) -> FusionSystem<T> {
    assert!(n >= 1, "n must be positive");
    let labels = (0..n).map(|a| (a.to_string(), (n - a) % n)).collect();
    let ring = FusionRing::from_fn(labels, |a, b, c| u32::from((a + b) % n == c));
    let nn = n as i64;
    let f = FSymbols::from_fn(&ring, |key| {
        let (a, b, c) = (key.i as i64, key.j as i64, key.k as i64);
        // b + c − [b + c] is 0 or n, so the angle is k·a/n or 0
        if b + c >= nn {
            root_of_unity(k.rem_euclid(nn) * a, nn)
        } else {
            one()
        }
    });
    let name = format!("vec_omega_cyclic({n},{})", k.rem_euclid(nn));
    FusionSystem::new(name, ring, f, DEFAULT_TOLERANCE)
        .expect("pointed cyclic system is well formed")
}

fn fib_ring() -> FusionRing {
    FusionRing::from_sparse(
        vec![("1".into(), 0), ("tau".into(), 1)],
        &[
            (0, 0, 0, 1),
            (0, 1, 1, 1),
            (1, 0, 1, 1),
            (1, 1, 0, 1),
            (1, 1, 1, 1),
        ],
    )
}

pub fn fibonacci<T: Real>() -> FusionSystem<T> {
    let ring = fib_ring();
    let phi = (T::one() + T::lit(5.0).sqrt()) / T::lit(2.0);
    let a = T::one() / phi;
    let b = a.sqrt();
    let f = FSymbols::from_fn(&ring, |key| {
        if (key.i, key.j, key.k, key.l) == (1, 1, 1, 1) {
            match (key.m, key.n) {
                (0, 0) => re(a),
                (1, 1) => re(-a),
                _ => re(b),
            }
        } else {
            one()
        }
    });
    FusionSystem::new("fibonacci", ring, f, DEFAULT_TOLERANCE)
        .expect("fibonacci data is well formed")
}

pub fn ising<T: Real>() -> FusionSystem<T> {
    let (psi, sigma) = (1, 2);
    let ring = FusionRing::from_fn(
        vec![("1".into(), 0), ("psi".into(), 1), ("sigma".into(), 2)],
        |i, j, k| {
            let n = match (i, j) {
                (0, x) | (x, 0) => x == k,
                (1, 1) => k == 0,
                (1, 2) | (2, 1) => k == 2,
                _ => k == 0 || k == 1,
            };
            u32::from(n)
        },
    );
    let h = T::one() / T::lit(2.0).sqrt();
    let f = FSymbols::from_fn(&ring, |key| match (key.i, key.j, key.k, key.l) {
        (2, 2, 2, 2) => {
            if key.m == psi && key.n == psi {
                re(-h)
            } else {
                re(h)
            }
        }
        (s1, p, s2, p2) if (s1, p, s2, p2) == (sigma, psi, sigma, psi) => -one::<T>(),
        (p1, s, p2, s2) if (p1, s, p2, s2) == (psi, sigma, psi, sigma) => -one::<T>(),
        _ => one(),
    });
    FusionSystem::new("ising", ring, f, DEFAULT_TOLERANCE).expect("ising data is well formed")
}

/// Tambara-Yamagami system for `Z/n` with bicharacter `χ(a,b) = exp(2πi u a b / n)`
/// and Frobenius-Schur sign `sign` of the non-invertible object `σ`.
pub fn tambara_yamagami<T: Real>(n: usize, u: i64, sign: i32) -> Result<FusionSystem<T>> {
    if n == 0 || num_integer::gcd(u.rem_euclid(n as i64) as usize, n) != 1 {
        return Err(Error::BadInput(format!(
            "χ(a,b) = exp(2πi·{u}ab/{n}) is degenerate"
        )));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::BadInput(format!("sign must be ±1, got {sign}")));
    }
    let s = n;
    let mut labels: Vec<(String, usize)> = (0..n).map(|a| (a.to_string(), (n - a) % n)).collect();
    labels.push(("sigma".into(), s));
    let ring = FusionRing::from_fn(labels, |i, j, k| {
        let v = match (i == s, j == s) {
            (false, false) => k == (i + j) % n,
            (true, true) => k != s,
            _ => k == s,
        };
        u32::from(v)
    });
    let nn = n as i64;
    let chi = |a: usize, b: usize| -> C<T> { root_of_unity(u * (a * b) as i64, nn) };
    let scale = re(T::from_int(sign as i64) / T::from_int(nn).sqrt());
    let f = FSymbols::from_fn(&ring, |key: &FKey| {
        let (i, j, k) = (key.i, key.j, key.k);
        match (i == s, j == s, k == s) {
            (false, true, false) => chi(i, k),
            (true, false, true) => chi(j, key.l),
            (true, true, true) => scale * chi(key.m, key.n).conj(),
            _ => one(),
        }
    });
    let name = format!(
        "tambara_yamagami({n},{},{})",
        u.rem_euclid(nn),
        if sign > 0 { "+" } else { "-" }
    );
    FusionSystem::new(name, ring, f, DEFAULT_TOLERANCE)
}

pub fn trivial<T: Real>() -> FusionSystem<T> {
    vec_omega_cyclic(1, 0)
}

/// Resolves names such as `fibonacci`, `ising`, `trivial`, `vec_omega_3_1`
/// and `ty_3_1_plus`.
pub fn by_name<T: Real>(name: &str) -> Result<FusionSystem<T>> {
    let bad = || Error::BadInput(format!("unknown built-in system '{name}'"));
    let parts: Vec<&str> = name.split('_').collect();
    match parts.as_slice() {
        ["trivial"] => Ok(trivial()),
        ["fibonacci"] => Ok(fibonacci()),
        ["ising"] => Ok(ising()),
        ["vec", "omega", n, k] => {
            let n: usize = n.parse().map_err(|_| bad())?;
            let k: i64 = k.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            Ok(vec_omega_cyclic(n, k))
        }
        ["ty", n, u, sign] => {
            let n: usize = n.parse().map_err(|_| bad())?;
            let u: i64 = u.parse().map_err(|_| bad())?;
            let sign = match *sign {
                "plus" => 1,
                "minus" => -1,
                _ => return Err(bad()),
            };
            tambara_yamagami(n, u, sign)
        }
        _ => Err(bad()),
    }
}

/// Names of the built-ins exercised by the test suites.
pub fn standard_names() -> Vec<String> {
    let mut out = vec!["trivial".to_string(), "fibonacci".into(), "ising".into()];
    for n in 2..=5 {
        for k in 0..n {
            out.push(format!("vec_omega_{n}_{k}"));
        }
    }
    for u in 1..=2 {
        out.push(format!("ty_3_{u}_plus"));
        out.push(format!("ty_3_{u}_minus"));
    }
    out
}
