use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::{abs, c, zero, Real, C};
use crate::tube::algebra::{max_abs, TubeAlgebra};

pub const DEFAULT_RETRIES: usize = 8;

#[derive(Debug, Clone)]
pub struct CenterData<T: Real> {
    /// Orthonormal (in coefficient space) basis of the center.
    pub center_basis: Vec<DVector<C<T>>>,
    /// Minimal central projections.
    pub projections: Vec<DVector<C<T>>>,
    pub rank: usize,
}

/// Null space of `m` via SVD, with singular values below `cut` counted as zero.
pub(crate) fn null_space<T: Real>(m: &DMatrix<C<T>>, cut: T) -> Vec<DVector<C<T>>> {
    let ncols = m.ncols();
    if ncols == 0 {
        return Vec::new();
    }
    // pad to at least square so that SVD returns a full set of right vectors
    let padded = if m.nrows() < ncols {
        let mut p = DMatrix::from_element(ncols, ncols, zero());
        p.view_mut((0, 0), (m.nrows(), ncols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V^*");
    let mut out = Vec::new();
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if s <= cut {
            out.push(v_t.row(i).adjoint());
        }
    }
    out
}

/// Columns as vectors.
fn as_matrix<T: Real>(vs: &[DVector<C<T>>], n: usize) -> DMatrix<C<T>> {
    let mut m = DMatrix::from_element(n, vs.len(), zero());
    for (j, v) in vs.iter().enumerate() {
        m.set_column(j, v);
    }
    m
}

/// Center of the tube algebra and its minimal projections, split with a
/// seeded random self-adjoint central element.
pub fn center<T: Real>(t: &TubeAlgebra<T>, seed: u64, tol: f64) -> Result<CenterData<T>> {
    center_with_retries(t, seed, tol, DEFAULT_RETRIES)
}

pub fn center_with_retries<T: Real>(
    t: &TubeAlgebra<T>,
    seed: u64,
    tol: f64,
    retries: usize,
) -> Result<CenterData<T>> {
    let n = t.dim();
    let tol_t = T::lit(tol);
    // commutators [x, b_j] stacked over j
    let mut m = DMatrix::from_element(n * n, n, zero());
    for j in 0..n {
        let bj = t.basis_vector(j);
        for k in 0..n {
            let bk = t.basis_vector(k);
            let comm = t.mul(&bk, &bj) - t.mul(&bj, &bk);
            for (row, z) in comm.iter().enumerate() {
                m[(j * n + row, k)] = *z;
            }
        }
    }
    let scale = m.iter().fold(T::one(), |a, z| a.max(abs(*z)));
    let center_basis = null_space(&m, T::lit(1e-8) * scale);
    let rank = center_basis.len();
    let b = as_matrix(&center_basis, n);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..retries.max(1) {
        let mut z = t.zero();
        for v in &center_basis {
            let w = c(
                T::lit(rng.gen_range(-1.0..1.0)),
                T::lit(rng.gen_range(-1.0..1.0)),
            );
            z += v * w;
        }
        let h = &z + t.star(&z);
        if let Some(projections) = split(t, &b, &h, tol_t) {
            return Ok(CenterData {
                center_basis,
                projections,
                rank,
            });
        }
    }
    Err(Error::DegenerateSplit { retries })
}

/// Spectral projections of `h` on the center; `None` when eigenvalues are not
/// separated or the projections fail verification.
fn split<T: Real>(
    t: &TubeAlgebra<T>,
    b: &DMatrix<C<T>>,
    h: &DVector<C<T>>,
    tol: T,
) -> Option<Vec<DVector<C<T>>>> {
    let r = b.ncols();
    let mut l = DMatrix::from_element(r, r, zero::<T>());
    for k in 0..r {
        let hk = t.mul(h, &b.column(k).into_owned());
        l.set_column(k, &(b.adjoint() * hk));
    }
    let eig = l.clone().schur().eigenvalues()?;
    let mut lams: Vec<T> = eig.iter().map(|z| z.re).collect();
    if eig.iter().any(|z| z.im.magnitude() > T::lit(1e-6)) {
        return None;
    }
    lams.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let spread = lams
        .iter()
        .fold(T::zero(), |a, &x| a.max(x.magnitude()))
        .max(T::one());
    if lams.windows(2).any(|w| w[1] - w[0] < T::lit(1e-5) * spread) {
        return None;
    }
    let mut projections = Vec::with_capacity(r);
    for &lam in &lams {
        let shifted = &l - DMatrix::identity(r, r) * c(lam, T::zero());
        let ns = null_space(&shifted, T::lit(1e-7) * spread);
        if ns.len() != 1 {
            return None;
        }
        let q = b * &ns[0];
        let q2 = t.mul(&q, &q);
        // q = s·p with p idempotent, so q² = s·q
        let s = q.dotc(&q2) / q.dotc(&q);
        if abs(s) < T::lit(1e-12) {
            return None;
        }
        projections.push(q / s);
    }
    verify(t, &projections, tol).then_some(projections)
}

/// `p² = p`, `p* = p`, `p q = 0` for `p ≠ q`, and `Σ p = 1`.
pub fn projection_residual<T: Real>(t: &TubeAlgebra<T>, ps: &[DVector<C<T>>]) -> T {
    let mut worst = T::zero();
    let mut total = t.zero();
    for (i, p) in ps.iter().enumerate() {
        worst = worst.max(max_abs(&(t.mul(p, p) - p)));
        worst = worst.max(max_abs(&(t.star(p) - p)));
        for q in &ps[i + 1..] {
            worst = worst.max(max_abs(&t.mul(p, q)));
        }
        total += p;
    }
    worst.max(max_abs(&(total - &t.unit)))
}

fn verify<T: Real>(t: &TubeAlgebra<T>, ps: &[DVector<C<T>>], tol: T) -> bool {
    projection_residual(t, ps) < tol * T::lit(100.0)
}

/// Coordinates of a central element in the projection basis, with the
/// residual of the least-squares fit.
pub fn projection_coordinates<T: Real>(
    ps: &[DVector<C<T>>],
    v: &DVector<C<T>>,
) -> (DVector<C<T>>, T) {
    let n = v.len();
    let p = as_matrix(ps, n);
    let gram = p.adjoint() * &p;
    let rhs = p.adjoint() * v;
    let coords = gram
        .lu()
        .solve(&rhs)
        .unwrap_or_else(|| DVector::from_element(ps.len(), zero()));
    let res = max_abs(&(&p * &coords - v));
    (coords, res)
}
