use crate::error::{Error, Result};
use crate::fusion::ring::FusionRing;
use crate::scalar::Real;

/// Statistical dimensions `d[i]` and the global index `λ = Σ d[i]²`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumDims<T> {
    pub d: Vec<T>,
    pub lambda: T,
}

impl<T: Real> QuantumDims<T> {
    /// Largest violation of `d_i d_j = Σ_k N_{ij}^k d_k`.
    pub fn residual(&self, ring: &FusionRing) -> T {
        let r = ring.rank();
        let mut worst = T::zero();
        for i in 0..r {
            for j in 0..r {
                let rhs = (0..r).fold(T::zero(), |acc, k| {
                    acc + T::from_int(ring.n(i, j, k) as i64) * self.d[k]
                });
                worst = worst.max((self.d[i] * self.d[j] - rhs).magnitude());
            }
        }
        worst
    }
}

/// Perron-Frobenius dimensions of a fusion ring.
///
/// Power iteration on `I + Σ_i N_i`, whose Perron eigenvector is the
/// dimension vector; normalized so that `d[0] = 1`.
pub fn quantum_dims<T: Real>(ring: &FusionRing) -> Result<QuantumDims<T>> {
    let r = ring.rank();
    let mut a = vec![vec![T::zero(); r]; r];
    for (k, row) in a.iter_mut().enumerate() {
        row[k] += T::one();
        for (j, cell) in row.iter_mut().enumerate() {
            let total: usize = (0..r).map(|i| ring.n(i, j, k)).sum();
            *cell += T::from_int(total as i64);
        }
    }
    let mut d = vec![T::one(); r];
    let eps = T::default_epsilon() * T::lit(16.0);
    let mut converged = false;
    for _ in 0..20_000 {
        let mut next = vec![T::zero(); r];
        for (k, row) in a.iter().enumerate() {
            next[k] = row
                .iter()
                .zip(&d)
                .fold(T::zero(), |acc, (&x, &y)| acc + x * y);
        }
        let norm = next[0];
        if norm <= T::zero() {
            return Err(Error::NoPositiveSolution("unit component vanished".into()));
        }
        for v in next.iter_mut() {
            *v /= norm;
        }
        let delta = next.iter().zip(&d).fold(T::zero(), |acc, (&x, &y)| {
            acc.max((x - y).magnitude() / x.magnitude().max(T::one()))
        });
        d = next;
        if delta <= eps {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoPositiveSolution(
            "power iteration did not converge".into(),
        ));
    }
    if d.iter().any(|&x| x < T::one() - T::lit(1e-9)) {
        return Err(Error::NoPositiveSolution("a dimension is below 1".into()));
    }
    let lambda = d.iter().fold(T::zero(), |acc, &x| acc + x * x);
    let dims = QuantumDims { d, lambda };
    let res = dims.residual(ring);
    if res > T::lit(1e-8) * lambda.max(T::one()) {
        return Err(Error::NoPositiveSolution(format!(
            "dimension equations fail with residual {:.3e}",
            res.as_f64()
        )));
    }
    Ok(dims)
}
