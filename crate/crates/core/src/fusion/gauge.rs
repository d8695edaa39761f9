use std::collections::HashMap;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::fusion::FusionSystem;
use crate::scalar::{c, zero, Real, C};

/// Random unitary of size `n` from the QR factor of a random complex matrix.
pub fn random_unitary<T: Real>(rng: &mut impl Rng, n: usize) -> DMatrix<C<T>> {
    let m = DMatrix::from_fn(n, n, |_, _| {
        c(
            T::lit(rng.gen_range(-1.0..1.0)),
            T::lit(rng.gen_range(-1.0..1.0)),
        )
    });
    let qr = m.qr();
    let (q, r) = (qr.q(), qr.r());
    // fix the phases so the result does not depend on QR conventions
    let mut q = q;
    for j in 0..n {
        let d = r[(j, j)];
        let mag = d.norm_sqr().sqrt();
        if mag > T::zero() {
            let ph = d / c(mag, T::zero());
            for i in 0..n {
                q[(i, j)] *= ph;
            }
        }
    }
    q
}

/// Applies a seeded random unitary change of basis to every multiplicity space
/// `Hom(c, a⊗b)` with `a, b ≠ 0`. The F-symbols transform as `U_L* F U_R`.
pub fn random_gauge<T: Real>(fs: &FusionSystem<T>, seed: u64) -> Result<FusionSystem<T>> {
    let ring = fs.ring();
    let r = ring.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut us: HashMap<(usize, usize, usize), DMatrix<C<T>>> = HashMap::new();
    for a in 0..r {
        for b in 0..r {
            for cc in 0..r {
                let n = ring.n(a, b, cc);
                if n == 0 {
                    continue;
                }
                let u = if a == 0 || b == 0 {
                    DMatrix::identity(n, n)
                } else {
                    random_unitary(&mut rng, n)
                };
                us.insert((a, b, cc), u);
            }
        }
    }
    let mut f = fs.fsymbols().clone();
    for (q, block) in f.blocks_mut() {
        let [i, j, k, l] = *q;
        let dim = block.dim();
        let mut ul = DMatrix::from_element(dim, dim, zero::<T>());
        let mut ur = DMatrix::from_element(dim, dim, zero::<T>());
        let lefts = block.left_labels();
        let rights = block.right_labels();
        for (x, &(m, al, be)) in lefts.iter().enumerate() {
            for (y, &(m2, al2, be2)) in lefts.iter().enumerate() {
                if m == m2 {
                    ul[(x, y)] = us[&(i, j, m)][(al, al2)] * us[&(m, k, l)][(be, be2)];
                }
            }
        }
        for (x, &(n, ga, de)) in rights.iter().enumerate() {
            for (y, &(n2, ga2, de2)) in rights.iter().enumerate() {
                if n == n2 {
                    ur[(x, y)] = us[&(j, k, n)][(ga, ga2)] * us[&(i, n, l)][(de, de2)];
                }
            }
        }
        block.matrix = ul.adjoint() * &block.matrix * ur;
    }
    FusionSystem::new(
        format!("{} (gauge {seed})", fs.name()),
        ring.clone(),
        f,
        fs.tolerance(),
    )
}
