//! Surgery invariants computed from modular data: chain links (lens spaces)
//! and star links (Seifert manifolds, Brieskorn spheres).

pub mod record;

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::modular::ModularData;
use crate::scalar::{one, powi, zero, Real, C};

pub use record::{InvariantValue, Presentation};

/// Descending continued fraction `p/q = a₁ − 1/(a₂ − 1/(… − 1/a_n))`
/// with every `a_i ≥ 2`.
pub fn continued_fraction(p: i64, q: i64) -> Result<Vec<i64>> {
    if q < 1 || q >= p {
        return Err(Error::BadInput(format!(
            "need 1 ≤ q < p, got p = {p}, q = {q}"
        )));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::BadInput(format!(
            "p = {p} and q = {q} are not coprime"
        )));
    }
    let (mut num, mut den) = (p, q);
    let mut out = Vec::new();
    while den != 0 {
        // ceiling division keeps the remainder non-positive
        let a = Integer::div_ceil(&num, &den);
        out.push(a);
        let r = a * den - num;
        num = den;
        den = r;
    }
    debug_assert_eq!(recompose(&out), Some(Ratio::new(p, q)));
    Ok(out)
}

/// Exact value of a descending continued fraction, `None` on a zero denominator.
pub fn recompose(a: &[i64]) -> Option<Ratio<i64>> {
    let (&last, rest) = a.split_last()?;
    let mut acc = Ratio::from_integer(last);
    for &x in rest.iter().rev() {
        if acc == Ratio::from_integer(0) {
            return None;
        }
        acc = Ratio::from_integer(x) - acc.recip();
    }
    Some(acc)
}

fn t_pow<T: Real>(md: &ModularData<T>, i: usize, a: i64) -> C<T> {
    powi(md.t[i], a)
}

/// `Σ S_{i₁0} t_{i₁}^{a₁} S_{i₁i₂} ⋯ t_{i_n}^{a_n} S_{i_n0}` by iterated
/// matrix-vector products. Coefficients may be any integers.
pub fn chain_invariant<T: Real>(md: &ModularData<T>, coefficients: &[i64]) -> Result<C<T>> {
    let (&first, rest) = coefficients.split_first().ok_or(Error::EmptyChain)?;
    let r = md.rank();
    let s = &md.s;
    let mut v: Vec<C<T>> = (0..r).map(|i| s[(i, 0)] * t_pow(md, i, first)).collect();
    for &a in rest {
        v = (0..r)
            .map(|k| {
                let sum = (0..r).fold(zero::<T>(), |acc, i| acc + v[i] * s[(i, k)]);
                sum * t_pow(md, k, a)
            })
            .collect();
    }
    Ok((0..r).fold(zero(), |acc, i| acc + v[i] * s[(i, 0)]))
}

/// `Z(L(p,q))`. Besides `1 ≤ q < p`, accepts the named degenerate cases
/// `L(1,0) = S³` and `L(0,1) = S²×S¹`.
pub fn lens_invariant<T: Real>(md: &ModularData<T>, p: i64, q: i64) -> Result<C<T>> {
    match (p, q) {
        (1, 0) => s3_invariant(md),
        (0, 1) => s2xs1_invariant(md),
        _ => chain_invariant(md, &continued_fraction(p, q)?),
    }
}

/// `Z(L(p,1)) = Σ t_i^p S_{i0}²`, valid for every integer `p`.
pub fn lens_closed_form_p1<T: Real>(md: &ModularData<T>, p: i64) -> C<T> {
    (0..md.rank()).fold(zero(), |acc, i| {
        acc + t_pow(md, i, p) * md.s[(i, 0)] * md.s[(i, 0)]
    })
}

/// `Z(L(p,2)) = Σ t_i^{(p+1)/2} t_j² S_{i0} S_{j0} S_{ij}` for odd `p`.
pub fn lens_closed_form_p2<T: Real>(md: &ModularData<T>, p: i64) -> Result<C<T>> {
    if p.rem_euclid(2) != 1 {
        return Err(Error::BadCongruence(format!("L(p,2) needs odd p, got {p}")));
    }
    let r = md.rank();
    let s = &md.s;
    let a = (p + 1) / 2;
    let mut total = zero();
    for i in 0..r {
        for j in 0..r {
            total += t_pow(md, i, a) * t_pow(md, j, 2) * s[(i, 0)] * s[(j, 0)] * s[(i, j)];
        }
    }
    Ok(total)
}

/// `Z(L(p,3))` for `p ≢ 0 (mod 3)`.
///
/// For `p ≡ 1` this is the chain `[(p+2)/3, 2, 2]`,
/// `Σ S_{i0} t_i^{(p+2)/3} S_{ij} t_j² S_{jk} t_k² S_{k0}`; for `p ≡ 2` it is
/// `Σ t_i^{(p+1)/3} t_j³ S_{i0} S_{j0} S_{ij}`.
pub fn lens_closed_form_p3<T: Real>(md: &ModularData<T>, p: i64) -> Result<C<T>> {
    let r = md.rank();
    let s = &md.s;
    let mut total = zero();
    match p.rem_euclid(3) {
        1 => {
            let a = (p + 2) / 3;
            for i in 0..r {
                for j in 0..r {
                    for k in 0..r {
                        total += s[(i, 0)]
                            * t_pow(md, i, a)
                            * s[(i, j)]
                            * t_pow(md, j, 2)
                            * s[(j, k)]
                            * t_pow(md, k, 2)
                            * s[(k, 0)];
                    }
                }
            }
        }
        2 => {
            let a = (p + 1) / 3;
            for i in 0..r {
                for j in 0..r {
                    total += t_pow(md, i, a) * t_pow(md, j, 3) * s[(i, 0)] * s[(j, 0)] * s[(i, j)];
                }
            }
        }
        _ => {
            return Err(Error::BadCongruence(format!(
                "L(p,3) needs p not divisible by 3, got {p}"
            )))
        }
    }
    Ok(total)
}

/// Star link with a `q`-framed hub and legs framed `p₁ … p_r`:
/// `Σ_j t_j^q / S_{j0}^{r−2} · Π_legs (Σ_i t_i^p S_{i0} S_{ij})`.
pub fn star_invariant<T: Real>(md: &ModularData<T>, q: i64, legs: &[i64]) -> Result<C<T>> {
    if legs.is_empty() {
        return Err(Error::BadInput("a star link needs at least one leg".into()));
    }
    let r = md.rank();
    let s = &md.s;
    let exponent = legs.len() as i64 - 2;
    let mut total = zero();
    for j in 0..r {
        let mut term = t_pow(md, j, q) * powi_signed(s[(j, 0)], -exponent);
        for &p in legs {
            term *= (0..r).fold(zero::<T>(), |acc, i| {
                acc + t_pow(md, i, p) * s[(i, 0)] * s[(i, j)]
            });
        }
        total += term;
    }
    Ok(total)
}

/// Integer power of an arbitrary complex number; negative exponents invert.
fn powi_signed<T: Real>(z: C<T>, n: i64) -> C<T> {
    if n < 0 {
        one::<T>() / powi(z, -n)
    } else {
        powi(z, n)
    }
}

/// `Σ t_i^p t_j^q t_k^r t_l S_{i0}S_{j0}S_{k0}S_{il}S_{jl}S_{kl} / S_{l0}`,
/// summed directly as an independent check on [`star_invariant`].
pub fn brieskorn_invariant<T: Real>(md: &ModularData<T>, p: i64, q: i64, r: i64) -> Result<C<T>> {
    if p < 2 || q < 2 || r < 2 {
        return Err(Error::BadInput(format!(
            "Σ(p,q,r) needs p, q, r ≥ 2, got ({p},{q},{r})"
        )));
    }
    let m = md.rank();
    let s = &md.s;
    let mut total = zero();
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                for l in 0..m {
                    total += t_pow(md, i, p)
                        * t_pow(md, j, q)
                        * t_pow(md, k, r)
                        * md.t[l]
                        * s[(i, 0)]
                        * s[(j, 0)]
                        * s[(k, 0)]
                        * s[(i, l)]
                        * s[(j, l)]
                        * s[(k, l)]
                        / s[(l, 0)];
                }
            }
        }
    }
    Ok(total)
}

/// Colored invariant of the 0-framed star link,
/// `J = S_{i₁j} ⋯ S_{i_rj} / S_{j0}^{r−1}`.
pub fn j_star<T: Real>(md: &ModularData<T>, hub: usize, legs: &[usize]) -> C<T> {
    let num = legs.iter().fold(one::<T>(), |acc, &i| acc * md.s[(i, hub)]);
    num * powi_signed(md.s[(hub, 0)], 1 - legs.len() as i64)
}

/// `Z(S³)`, fixed by convention as the `+1`-framed unknot.
pub fn s3_invariant<T: Real>(md: &ModularData<T>) -> Result<C<T>> {
    chain_invariant(md, &[1])
}

/// `Z(S²×S¹)`, the 0-framed unknot.
pub fn s2xs1_invariant<T: Real>(md: &ModularData<T>) -> Result<C<T>> {
    chain_invariant(md, &[0])
}

#[cfg(test)]
mod tests {
    use nalgebra::DMatrix;
    use proptest::prelude::*;

    use super::*;
    use crate::modular::{conjugate, product};
    use crate::scalar::{abs, c, root_of_unity};

    fn toric_code() -> ModularData<f64> {
        let h = c(0.5, 0.0);
        let s = DMatrix::from_row_slice(
            4,
            4,
            &[h, h, h, h, h, h, -h, -h, h, -h, h, -h, h, -h, -h, h],
        );
        ModularData::new(
            "toric",
            s,
            vec![c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)],
        )
    }

    fn fibonacci_double() -> ModularData<f64> {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let n = 1.0 / (2.0 + phi).sqrt();
        let s = DMatrix::from_row_slice(
            2,
            2,
            &[c(n, 0.0), c(n * phi, 0.0), c(n * phi, 0.0), c(-n, 0.0)],
        );
        let fib = ModularData::new("fib", s, vec![c(1.0, 0.0), root_of_unity(2, 5)]);
        product(&fib, &conjugate(&fib))
    }

    fn close(a: C<f64>, b: C<f64>, tol: f64) -> bool {
        abs(a - b) < tol
    }

    #[test]
    fn continued_fraction_examples() {
        assert_eq!(continued_fraction(9, 1).unwrap(), vec![9]);
        assert_eq!(continued_fraction(7, 2).unwrap(), vec![4, 2]);
        assert_eq!(continued_fraction(5, 3).unwrap(), vec![2, 3]);
        assert!(matches!(continued_fraction(6, 4), Err(Error::BadInput(_))));
        assert!(matches!(continued_fraction(3, 3), Err(Error::BadInput(_))));
        assert!(matches!(continued_fraction(3, 0), Err(Error::BadInput(_))));
    }

    proptest! {
        #[test]
        fn continued_fraction_recomposes(p in 2i64..400, q in 1i64..400) {
            prop_assume!(q < p && p.gcd(&q) == 1);
            let a = continued_fraction(p, q).unwrap();
            prop_assert!(a.iter().all(|&x| x >= 2));
            prop_assert_eq!(recompose(&a), Some(Ratio::new(p, q)));
        }

        #[test]
        fn lens_spaces_are_homeomorphism_invariant(p in 2i64..30, q in 1i64..30) {
            prop_assume!(q < p && p.gcd(&q) == 1);
            let md = fibonacci_double();
            let z = lens_invariant(&md, p, q).unwrap();
            // L(p,q) ≅ L(p,q') when q q' ≡ ±1, and L(p,p−q) is the mirror image
            let inv = (1..p).find(|&x| (x * q) % p == 1).unwrap();
            prop_assert!(close(z, lens_invariant(&md, p, inv).unwrap(), 1e-12));
            if q != p - q {
                prop_assert!(close(z.conj(), lens_invariant(&md, p, p - q).unwrap(), 1e-12));
            }
        }
    }

    #[test]
    fn toric_code_counts_homomorphisms() {
        let md = toric_code();
        for p in 2..=12 {
            for q in 1..p {
                if p.gcd(&q) != 1 {
                    continue;
                }
                let want = if p % 2 == 0 { 1.0 } else { 0.5 };
                assert!(
                    close(lens_invariant(&md, p, q).unwrap(), c(want, 0.0), 1e-12),
                    "L({p},{q})"
                );
            }
        }
        assert!(close(
            brieskorn_invariant(&md, 2, 3, 5).unwrap(),
            c(0.5, 0.0),
            1e-12
        ));
    }

    #[test]
    fn degenerate_chains() {
        let md = fibonacci_double();
        assert!(close(
            chain_invariant(&md, &[0]).unwrap(),
            c(1.0, 0.0),
            1e-12
        ));
        assert!(close(s2xs1_invariant(&md).unwrap(), c(1.0, 0.0), 1e-12));
        let s00 = md.s[(0, 0)];
        assert!(close(s3_invariant(&md).unwrap(), s00, 1e-12));
        assert!(close(chain_invariant(&md, &[-1]).unwrap(), s00, 1e-12));
        assert!(close(lens_invariant(&md, 1, 0).unwrap(), s00, 1e-12));
        assert!(close(
            lens_invariant(&md, 0, 1).unwrap(),
            c(1.0, 0.0),
            1e-12
        ));
        assert!(matches!(chain_invariant(&md, &[]), Err(Error::EmptyChain)));
    }

    #[test]
    fn closed_forms_match_chains() {
        let md = fibonacci_double();
        for p in 0..=20 {
            assert!(close(
                lens_closed_form_p1(&md, p),
                chain_invariant(&md, &[p]).unwrap(),
                1e-12
            ));
        }
        for p in (3..=21).step_by(2) {
            assert!(close(
                lens_closed_form_p2(&md, p).unwrap(),
                lens_invariant(&md, p, 2).unwrap(),
                1e-12
            ));
        }
        for p in 4..=22 {
            if p % 3 != 0 {
                assert!(close(
                    lens_closed_form_p3(&md, p).unwrap(),
                    lens_invariant(&md, p, 3).unwrap(),
                    1e-12
                ));
            }
        }
        assert!(matches!(
            lens_closed_form_p2(&md, 4),
            Err(Error::BadCongruence(_))
        ));
        assert!(matches!(
            lens_closed_form_p3(&md, 6),
            Err(Error::BadCongruence(_))
        ));
    }

    #[test]
    fn hub_weighted_l_p3_sum_is_not_the_chain() {
        // Σ t_i^a t_j² t_k² S_{i0}S_{j0}S_{k0}S_{ij}S_{kj} carries one S_{j0}
        // too many compared with the chain [a, 2, 2]
        let md = toric_code();
        let (r, s) = (md.rank(), &md.s);
        let p = 4;
        let a = (p + 2) / 3;
        let mut hub_weighted = c(0.0, 0.0);
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    hub_weighted += powi(md.t[i], a)
                        * powi(md.t[j], 2)
                        * powi(md.t[k], 2)
                        * s[(i, 0)]
                        * s[(j, 0)]
                        * s[(k, 0)]
                        * s[(i, j)]
                        * s[(k, j)];
                }
            }
        }
        let chain = lens_invariant(&md, p, 3).unwrap();
        assert!(close(chain, c(1.0, 0.0), 1e-12));
        assert!(!close(hub_weighted, chain, 1e-3));
    }

    #[test]
    fn star_matches_brieskorn_and_j_assembly() {
        let md = fibonacci_double();
        for (p, q, r) in [(2, 3, 5), (2, 3, 7), (3, 4, 5), (2, 2, 2)] {
            let a = star_invariant(&md, 1, &[p, q, r]).unwrap();
            let b = brieskorn_invariant(&md, p, q, r).unwrap();
            assert!(close(a, b, 1e-12), "Σ({p},{q},{r})");
        }
        let m = md.rank();
        for legs in [vec![3i64], vec![2, -1], vec![2, 3, 5]] {
            for hub in [-2i64, 0, 1] {
                let direct = star_invariant(&md, hub, &legs).unwrap();
                let mut assembled = c(0.0, 0.0);
                let mut idx = vec![0usize; legs.len()];
                loop {
                    for j in 0..m {
                        let mut w = md.s[(j, 0)] * powi(md.t[j], hub) * j_star(&md, j, &idx);
                        for (leg, &i) in legs.iter().zip(&idx) {
                            w *= md.s[(i, 0)] * powi(md.t[i], *leg);
                        }
                        assembled += w;
                    }
                    let Some(pos) = idx.iter().position(|&i| i + 1 < m) else {
                        break;
                    };
                    idx[pos] += 1;
                    idx[..pos].iter_mut().for_each(|i| *i = 0);
                }
                assert!(close(direct, assembled, 1e-10), "hub {hub} legs {legs:?}");
            }
        }
    }

    #[test]
    fn rank_one_data_gives_one() {
        let md = ModularData::<f64>::trivial();
        assert!(close(
            star_invariant(&md, 0, &[0]).unwrap(),
            c(1.0, 0.0),
            1e-15
        ));
        assert!(close(j_star(&md, 0, &[0, 0, 0]), c(1.0, 0.0), 1e-15));
        assert!(close(
            lens_invariant(&md, 7, 3).unwrap(),
            c(1.0, 0.0),
            1e-15
        ));
        assert!(close(
            brieskorn_invariant(&md, 2, 3, 5).unwrap(),
            c(1.0, 0.0),
            1e-15
        ));
    }

    #[test]
    fn single_leg_j_is_an_s_entry() {
        let md = fibonacci_double();
        assert!(close(j_star(&md, 2, &[1]), md.s[(1, 2)], 1e-15));
    }

    #[test]
    fn conjugate_data_conjugates_values() {
        let md = fibonacci_double();
        let bar = conjugate(&md);
        for a in [vec![3], vec![4, 2], vec![2, -3, 5]] {
            let z = chain_invariant(&md, &a).unwrap();
            assert!(close(chain_invariant(&bar, &a).unwrap(), z.conj(), 1e-12));
        }
    }

    #[test]
    fn result_record_is_canonical() {
        let v = InvariantValue::<f64> {
            manifold: "L(7,2)".into(),
            presentation: Presentation::Chain(vec![4, 2]),
            value: c(1.0, 0.0),
            data: "toric".into(),
            conjugated: false,
        };
        assert_eq!(
            v.to_json(),
            "{\"manifold\": \"L(7,2)\", \"presentation\": {\"chain\": [4, 2]}, \"value\": \
             [1.0000000000000000e0, 0.0000000000000000e0], \"data\": \"toric\", \"convention\": \"as-is\"}"
        );
    }
}
