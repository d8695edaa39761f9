use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion::{FusionSystem, TreeVector};
use crate::scalar::{abs, one, re, zero, Real, C};

/// `(ξζ|X|ζη)` with `X = v_{ζη}^{p,β} (v_{ξζ}^{p,α})*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TubeBasisElement {
    pub xi: usize,
    pub zeta: usize,
    pub eta: usize,
    pub p: usize,
    /// Multiplicity index in `Hom(p, ξ⊗ζ)`.
    pub b1: usize,
    /// Multiplicity index in `Hom(p, ζ⊗η)`.
    pub b2: usize,
}

pub type Sparse<T> = Vec<(usize, C<T>)>;

/// Structure constants of the tube algebra together with the images of the
/// basis under the maps used on its center.
#[derive(Debug, Clone)]
pub struct TubeAlgebra<T: Real> {
    pub basis: Vec<TubeBasisElement>,
    index: HashMap<(usize, usize, usize), usize>,
    /// `mult[x * n + y]` is the product `b_x · b_y`.
    mult: Vec<Sparse<T>>,
    /// `star[x]` is `b_x*`; the star is extended conjugate-linearly.
    star: Vec<Sparse<T>>,
    /// `gram[(x, y)] = ⟨b_x, b_y⟩`.
    pub gram: DMatrix<C<T>>,
    pub unit: DVector<C<T>>,
    /// `S′(b_x)` for basis elements with `ξ = η`, otherwise empty.
    s_prime: Vec<Sparse<T>>,
    /// `T′⁻¹(b_x)` for basis elements with `ξ = η`, otherwise empty.
    t_prime_inv: Vec<Sparse<T>>,
    /// `Σ_ζ d(ζ)(ζζ̄|R_ζ R̄_ζ*|ζ̄ζ)`; `T′` is multiplication by it.
    pub twist: DVector<C<T>>,
    pub dims: Vec<T>,
    pub lambda: T,
    pub labels: Vec<String>,
    pub system: String,
}

fn to_sparse<T: Real>(v: &DVector<C<T>>) -> Sparse<T> {
    v.iter()
        .enumerate()
        .filter(|(_, z)| **z != zero())
        .map(|(i, z)| (i, *z))
        .collect()
}

impl<T: Real> TubeAlgebra<T> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn zero(&self) -> DVector<C<T>> {
        DVector::from_element(self.dim(), zero())
    }

    pub fn basis_vector(&self, x: usize) -> DVector<C<T>> {
        let mut v = self.zero();
        v[x] = one();
        v
    }

    /// First basis index of the `(ξ, ζ, η)` sector, if it is nonzero.
    pub fn sector_start(&self, xi: usize, zeta: usize, eta: usize) -> Option<usize> {
        self.index.get(&(xi, zeta, eta)).copied()
    }

    pub fn structure_constants(&self, x: usize, y: usize) -> &Sparse<T> {
        &self.mult[x * self.dim() + y]
    }

    pub fn mul(&self, a: &DVector<C<T>>, b: &DVector<C<T>>) -> DVector<C<T>> {
        let n = self.dim();
        let mut out = self.zero();
        for (x, &ax) in a.iter().enumerate() {
            if ax == zero() {
                continue;
            }
            for (y, &by) in b.iter().enumerate() {
                if by == zero() {
                    continue;
                }
                let s = ax * by;
                for &(z, c) in &self.mult[x * n + y] {
                    out[z] += s * c;
                }
            }
        }
        out
    }

    pub fn star(&self, a: &DVector<C<T>>) -> DVector<C<T>> {
        let mut out = self.zero();
        for (x, &ax) in a.iter().enumerate() {
            if ax == zero() {
                continue;
            }
            for &(z, c) in &self.star[x] {
                out[z] += ax.conj() * c;
            }
        }
        out
    }

    /// `⟨a, b⟩`, linear in `a` and conjugate-linear in `b`.
    pub fn inner(&self, a: &DVector<C<T>>, b: &DVector<C<T>>) -> C<T> {
        let bc = b.map(|z| z.conj());
        (a.transpose() * &self.gram * bc)[(0, 0)]
    }

    fn apply(&self, images: &[Sparse<T>], a: &DVector<C<T>>) -> Result<DVector<C<T>>> {
        let mut out = self.zero();
        for (x, &ax) in a.iter().enumerate() {
            if ax == zero() {
                continue;
            }
            let b = &self.basis[x];
            if b.xi != b.eta {
                if abs(ax) > T::lit(1e-9) {
                    return Err(Error::DimensionMismatch(format!(
                        "element has weight {:.3e} outside the ξ = η sectors",
                        abs(ax).as_f64()
                    )));
                }
                continue;
            }
            for &(z, c) in &images[x] {
                out[z] += ax * c;
            }
        }
        Ok(out)
    }

    /// `S′`, defined on the span of the `(ξη|X|ηξ)`.
    pub fn s_prime(&self, a: &DVector<C<T>>) -> Result<DVector<C<T>>> {
        self.apply(&self.s_prime, a)
    }

    pub fn t_prime(&self, a: &DVector<C<T>>) -> DVector<C<T>> {
        self.mul(&self.twist, a)
    }

    pub fn t_prime_inverse(&self, a: &DVector<C<T>>) -> Result<DVector<C<T>>> {
        self.apply(&self.t_prime_inv, a)
    }

    /// Largest deviation of `(xy)z` from `x(yz)` over all basis triples.
    pub fn associativity_residual(&self) -> T {
        let n = self.dim();
        (0..n)
            .into_par_iter()
            .map(|x| {
                let bx = self.basis_vector(x);
                let mut worst = T::zero();
                for y in 0..n {
                    let by = self.basis_vector(y);
                    let xy = self.mul(&bx, &by);
                    for z in 0..n {
                        let bz = self.basis_vector(z);
                        let lhs = self.mul(&xy, &bz);
                        let rhs = self.mul(&bx, &self.mul(&by, &bz));
                        worst = worst.max(max_abs(&(lhs - rhs)));
                    }
                }
                worst
            })
            .reduce(T::zero, |a, b| a.max(b))
    }

    /// Largest deviation from `x** = x` and `(xy)* = y*x*` over basis elements.
    pub fn star_residual(&self) -> T {
        let n = self.dim();
        let mut worst = T::zero();
        for x in 0..n {
            let bx = self.basis_vector(x);
            worst = worst.max(max_abs(&(self.star(&self.star(&bx)) - &bx)));
            for y in 0..n {
                let by = self.basis_vector(y);
                let lhs = self.star(&self.mul(&bx, &by));
                let rhs = self.mul(&self.star(&by), &self.star(&bx));
                worst = worst.max(max_abs(&(lhs - rhs)));
            }
        }
        worst
    }

    /// Largest deviation of the unit from being a two-sided unit.
    pub fn unit_residual(&self) -> T {
        let mut worst = T::zero();
        for x in 0..self.dim() {
            let bx = self.basis_vector(x);
            worst = worst.max(max_abs(&(self.mul(&self.unit, &bx) - &bx)));
            worst = worst.max(max_abs(&(self.mul(&bx, &self.unit) - &bx)));
        }
        worst
    }

    /// Hermiticity defect and smallest eigenvalue of the Gram matrix.
    pub fn gram_check(&self) -> (T, T) {
        let herm = max_abs_mat(&(&self.gram - self.gram.adjoint()));
        let sym = (&self.gram + self.gram.adjoint()) * re(T::lit(0.5));
        let eig = sym.symmetric_eigenvalues();
        let min = eig
            .iter()
            .fold(T::max_value().unwrap_or_else(T::one), |a, &b| a.min(b));
        (herm, min)
    }
}

pub(crate) fn max_abs<T: Real>(v: &DVector<C<T>>) -> T {
    v.iter().fold(T::zero(), |a, z| a.max(abs(*z)))
}

pub(crate) fn max_abs_mat<T: Real>(m: &DMatrix<C<T>>) -> T {
    m.iter().fold(T::zero(), |a, z| a.max(abs(*z)))
}

struct Builder<'a, T: Real> {
    fs: &'a FusionSystem<T>,
    basis: Vec<TubeBasisElement>,
    index: HashMap<(usize, usize, usize), usize>,
}

impl<T: Real> Builder<'_, T> {
    fn element(&self, b: &TubeBasisElement) -> TreeVector<T> {
        let mut v = self.fs.zeros(&[b.xi, b.zeta], &[b.zeta, b.eta]);
        v.blocks[b.p][(b.b2, b.b1)] = one();
        v
    }

    /// Coordinates of a morphism `ξ⊗ζ → ζ⊗η` in the tube basis.
    fn decompose(&self, v: &TreeVector<T>, out: &mut DVector<C<T>>) -> Result<()> {
        let (xi, zeta, eta) = match (v.src.as_slice(), v.dst.as_slice()) {
            ([xi, z1], [z2, eta]) if z1 == z2 => (*xi, *z1, *eta),
            _ => {
                return Err(Error::DimensionMismatch(format!(
                    "{:?} → {:?} is not a tube Hom space",
                    v.src, v.dst
                )))
            }
        };
        let Some(&start) = self.index.get(&(xi, zeta, eta)) else {
            return Ok(());
        };
        let ring = self.fs.ring();
        let mut k = start;
        for p in 0..ring.rank() {
            let (n1, n2) = (ring.n(xi, zeta, p), ring.n(zeta, eta, p));
            for b1 in 0..n1 {
                for b2 in 0..n2 {
                    out[k] += v.blocks[p][(b2, b1)];
                    k += 1;
                }
            }
        }
        Ok(())
    }

    fn product(&self, x: &TubeBasisElement, y: &TubeBasisElement) -> Result<DVector<C<T>>> {
        let n = self.basis.len();
        let mut out = DVector::from_element(n, zero());
        if x.eta != y.xi {
            return Ok(out);
        }
        let fs = self.fs;
        let (xi, zeta, zeta2, eta2) = (x.xi, x.zeta, y.zeta, y.eta);
        let xv = self.element(x);
        let yv = self.element(y);
        // ζ(Y) ∘ (X ⊗ 1_ζ′) : ξζζ′ → ζζ′η′
        let middle = fs
            .tensor_left(zeta, &yv)?
            .compose(&fs.tensor_right(&xv, zeta2))?;
        for (nu, mult) in fs.ring().fuse(zeta, zeta2) {
            for mu in 0..mult {
                let a = fs.vertex(zeta, zeta2, nu, mu)?;
                let top = fs.tensor_right(&a.adjoint(), eta2);
                let bottom = fs.tensor_left(xi, &a)?;
                let term = top.compose(&middle)?.compose(&bottom)?;
                self.decompose(&term, &mut out)?;
            }
        }
        Ok(out)
    }

    /// `d(ζ)(ηζ̄|ζ̄(ξ(R̄_ζ*) X*) R_ζ|ζ̄ξ)`.
    fn star(&self, x: &TubeBasisElement) -> Result<DVector<C<T>>> {
        let fs = self.fs;
        let (xi, zeta, eta) = (x.xi, x.zeta, x.eta);
        let zb = fs.dual(zeta);
        let xv = self.element(x);
        let inner = fs
            .tensor_left(xi, &fs.cup_bar(zeta).adjoint())?
            .compose(&fs.tensor_right(&xv.adjoint(), zb))?;
        let cup = fs.tensor_right_word(fs.cup(zeta), &[eta, zb]);
        let v = fs
            .tensor_left(zb, &inner)?
            .compose(&cup)?
            .scale(re(fs.d(zeta)));
        let mut out = DVector::from_element(self.basis.len(), zero());
        self.decompose(&v, &mut out)?;
        Ok(out)
    }

    /// `δ_{ξξ′}δ_{ζζ′} d(ξ)² R_ζ* ζ̄(XY*) R_ζ`.
    fn gram(&self, x: &TubeBasisElement, y: &TubeBasisElement) -> Result<C<T>> {
        if x.xi != y.xi || x.zeta != y.zeta || x.eta != y.eta {
            return Ok(zero());
        }
        let fs = self.fs;
        let (xi, zeta, eta) = (x.xi, x.zeta, x.eta);
        let zb = fs.dual(zeta);
        let xy = self.element(x).compose(&self.element(y).adjoint())?;
        let cup = fs.tensor_right(fs.cup(zeta), eta);
        let s = cup
            .adjoint()
            .compose(&fs.tensor_left(zb, &xy)?)?
            .compose(&cup)?
            .scalar()?;
        Ok(s * re(fs.d(xi) * fs.d(xi)))
    }

    /// `d(ξ)(η̄ξ|R_η* η̄(X ξ(R̄_η))|ξη̄)` for `x = (ξη|X|ηξ)`.
    fn s_prime(&self, x: &TubeBasisElement) -> Result<DVector<C<T>>> {
        let fs = self.fs;
        let (xi, eta) = (x.xi, x.zeta);
        let eb = fs.dual(eta);
        let xv = self.element(x);
        let inner = fs
            .tensor_right(&xv, eb)
            .compose(&fs.tensor_left(xi, fs.cup_bar(eta))?)?;
        let cap = fs.tensor_right_word(&fs.cup(eta).adjoint(), &[xi, eb]);
        let v = cap
            .compose(&fs.tensor_left(eb, &inner)?)?
            .scale(re(fs.d(xi)));
        let mut out = DVector::from_element(self.basis.len(), zero());
        self.decompose(&v, &mut out)?;
        Ok(out)
    }

    /// `(ξp|X₁* ξ(X₂)|pξ)` for `x = (ξη|X₂X₁*|ηξ)`.
    fn t_prime_inverse(&self, x: &TubeBasisElement) -> Result<DVector<C<T>>> {
        let fs = self.fs;
        let (xi, eta, p) = (x.xi, x.zeta, x.p);
        let x1 = fs.vertex(xi, eta, p, x.b1)?;
        let x2 = fs.vertex(eta, xi, p, x.b2)?;
        let v = fs
            .tensor_right(&x1.adjoint(), xi)
            .compose(&fs.tensor_left(xi, &x2)?)?;
        let mut out = DVector::from_element(self.basis.len(), zero());
        self.decompose(&v, &mut out)?;
        Ok(out)
    }

    fn twist(&self) -> Result<DVector<C<T>>> {
        let fs = self.fs;
        let mut out = DVector::from_element(self.basis.len(), zero());
        for zeta in 0..fs.rank() {
            let v = fs
                .cup(zeta)
                .compose(&fs.cup_bar(zeta).adjoint())?
                .scale(re(fs.d(zeta)));
            self.decompose(&v, &mut out)?;
        }
        Ok(out)
    }
}

/// Basis of the tube algebra ordered by `(ξ, ζ, η, p, b1, b2)`.
pub fn tube_basis(ring: &crate::fusion::FusionRing) -> Vec<TubeBasisElement> {
    let r = ring.rank();
    let mut basis = Vec::new();
    for xi in 0..r {
        for zeta in 0..r {
            for eta in 0..r {
                for p in 0..r {
                    for b1 in 0..ring.n(xi, zeta, p) {
                        for b2 in 0..ring.n(zeta, eta, p) {
                            basis.push(TubeBasisElement {
                                xi,
                                zeta,
                                eta,
                                p,
                                b1,
                                b2,
                            });
                        }
                    }
                }
            }
        }
    }
    basis
}

/// Builds the tube algebra of a fusion system. Structure constants are filled
/// in parallel, one row per left factor.
pub fn build_tube<T: Real>(fs: &FusionSystem<T>) -> Result<TubeAlgebra<T>> {
    let basis = tube_basis(fs.ring());
    let mut index = HashMap::new();
    for (k, b) in basis.iter().enumerate() {
        index.entry((b.xi, b.zeta, b.eta)).or_insert(k);
    }
    let builder = Builder { fs, basis, index };
    let n = builder.basis.len();

    let rows: Vec<Vec<Sparse<T>>> = builder
        .basis
        .par_iter()
        .map(|x| {
            builder
                .basis
                .iter()
                .map(|y| builder.product(x, y).map(|v| to_sparse(&v)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mult = rows.into_iter().flatten().collect();

    let star = builder
        .basis
        .par_iter()
        .map(|x| builder.star(x).map(|v| to_sparse(&v)))
        .collect::<Result<Vec<_>>>()?;

    let mut gram = DMatrix::from_element(n, n, zero());
    for (i, x) in builder.basis.iter().enumerate() {
        for (j, y) in builder.basis.iter().enumerate() {
            gram[(i, j)] = builder.gram(x, y)?;
        }
    }

    let mut unit = DVector::from_element(n, zero());
    for xi in 0..fs.rank() {
        let id = fs
            .vertex(0, xi, xi, 0)?
            .compose(&fs.vertex(xi, 0, xi, 0)?.adjoint())?;
        builder.decompose(&id, &mut unit)?;
    }

    let diag = |f: &dyn Fn(&TubeBasisElement) -> Result<DVector<C<T>>>| -> Result<Vec<Sparse<T>>> {
        builder
            .basis
            .iter()
            .map(|x| {
                if x.xi == x.eta {
                    f(x).map(|v| to_sparse(&v))
                } else {
                    Ok(Vec::new())
                }
            })
            .collect()
    };
    let s_prime = diag(&|x| builder.s_prime(x))?;
    let t_prime_inv = diag(&|x| builder.t_prime_inverse(x))?;
    let twist = builder.twist()?;

    Ok(TubeAlgebra {
        basis: builder.basis,
        index: builder.index,
        mult,
        star,
        gram,
        unit,
        s_prime,
        t_prime_inv,
        twist,
        dims: fs.dims().d.clone(),
        lambda: fs.lambda(),
        labels: fs.ring().labels().iter().map(|l| l.name.clone()).collect(),
        system: fs.name().to_string(),
    })
}
