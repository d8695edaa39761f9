//! Morphisms between words of labels in the left-comb tree basis.
//!
//! A word `w = [w1, .., wn]` stands for `w1 ⊗ .. ⊗ wn`; the empty word is the
//! unit. The orthonormal trees from `y` into `w` are built from the unit:
//! the empty word has a single tree into `0`, and a tree into `w·b` is a
//! triple `(x, T, μ)` with `T` a tree of `w` at `x` and `μ < N[x][b][y]`,
//! meaning `(T ⊗ 1_b) ∘ v_{xb}^{y,μ}`. Triples are ordered by `x`, then `T`,
//! then `μ`. A morphism `w → v` is a block matrix indexed by the top label
//! `y`, with rows over trees of `v` and columns over trees of `w`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::fusion::fsymbols::FSymbols;
use crate::fusion::ring::FusionRing;
use crate::scalar::{abs, one, zero, Real, C};

pub type Word = Vec<usize>;

/// Tree counts for every prefix of `word`: `out[k][y]` counts trees of the
/// first `k` letters at top label `y`.
pub fn prefix_dims(ring: &FusionRing, word: &[usize]) -> Vec<Vec<usize>> {
    let r = ring.rank();
    let mut out = Vec::with_capacity(word.len() + 1);
    let mut cur = vec![0; r];
    cur[0] = 1;
    out.push(cur.clone());
    for &b in word {
        let mut next = vec![0; r];
        for (x, &cx) in cur.iter().enumerate() {
            if cx == 0 {
                continue;
            }
            for (y, m) in ring.fuse(x, b) {
                next[y] += cx * m;
            }
        }
        out.push(next.clone());
        cur = next;
    }
    out
}

/// Number of trees of `word` at each top label.
pub fn tree_dims(ring: &FusionRing, word: &[usize]) -> Vec<usize> {
    prefix_dims(ring, word)
        .pop()
        .expect("at least the empty prefix")
}

/// Start of the `(x, ·, ·)` range among trees of `prev·b` at `y`, given the
/// tree counts `prev` of the shorter word.
#[inline]
pub(crate) fn comb_offset(
    ring: &FusionRing,
    prev: &[usize],
    b: usize,
    y: usize,
    x: usize,
) -> usize {
    (0..x).map(|x2| prev[x2] * ring.n(x2, b, y)).sum()
}

/// Start of the `(x, ·, ·)` range in the alternative basis of `c·w` at `y`
/// whose elements are `(1_c ⊗ T) ∘ v_{cx}^{y,μ}`.
#[inline]
pub(crate) fn insertion_offset(
    ring: &FusionRing,
    dims: &[usize],
    c: usize,
    y: usize,
    x: usize,
) -> usize {
    (0..x).map(|x2| dims[x2] * ring.n(c, x2, y)).sum()
}

/// Change of basis from the alternative basis of `c·w` to the standard one,
/// one unitary per top label, given the matrices for the word without its
/// last letter.
pub(crate) fn insertion_step<T: Real>(
    ring: &FusionRing,
    f: &FSymbols<T>,
    c: usize,
    prefix: &[usize],
    b: usize,
    prev: &[DMatrix<C<T>>],
) -> Result<Vec<DMatrix<C<T>>>> {
    let r = ring.rank();
    let dims_w1 = tree_dims(ring, prefix);
    let mut cw1 = Vec::with_capacity(prefix.len() + 1);
    cw1.push(c);
    cw1.extend_from_slice(prefix);
    let dims_cw1 = tree_dims(ring, &cw1);
    let mut w = prefix.to_vec();
    w.push(b);
    let dims_w = tree_dims(ring, &w);
    let mut cw = cw1.clone();
    cw.push(b);
    let dims_cw = tree_dims(ring, &cw);

    let mut out = Vec::with_capacity(r);
    for y in 0..r {
        let n = dims_cw[y];
        let mut u = DMatrix::from_element(n, n, zero::<T>());
        if n > 0 {
            // columns: (x, (x', T', κ), μ); rows: (z, L, β)
            for x in 0..r {
                let nmu = ring.n(c, x, y);
                if nmu == 0 || dims_w[x] == 0 {
                    continue;
                }
                let col_x = insertion_offset(ring, &dims_w, c, y, x);
                for x1 in 0..r {
                    let nk = ring.n(x1, b, x);
                    if nk == 0 || dims_w1[x1] == 0 {
                        continue;
                    }
                    let t_off = comb_offset(ring, &dims_w1, b, x, x1);
                    let block = f
                        .block(c, x1, b, y)
                        .ok_or(Error::MissingFBlock([c, x1, b, y]))?;
                    for z in 0..r {
                        let (na, nb) = (ring.n(c, x1, z), ring.n(z, b, y));
                        if na * nb == 0 || dims_cw1[z] == 0 {
                            continue;
                        }
                        let row_z = comb_offset(ring, &dims_cw1, b, y, z);
                        let alt_z = insertion_offset(ring, &dims_w1, c, z, x1);
                        let uz = &prev[z];
                        for t1 in 0..dims_w1[x1] {
                            for kappa in 0..nk {
                                let t = t_off + t1 * nk + kappa;
                                for mu in 0..nmu {
                                    let col = col_x + t * nmu + mu;
                                    for l in 0..dims_cw1[z] {
                                        for beta in 0..nb {
                                            let row = row_z + l * nb + beta;
                                            let mut acc = zero::<T>();
                                            for alpha in 0..na {
                                                acc += block.get(z, alpha, beta, x, kappa, mu)
                                                    * uz[(l, alt_z + t1 * na + alpha)];
                                            }
                                            u[(row, col)] += acc;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out.push(u);
    }
    Ok(out)
}

/// Insertion matrices for the empty word: the identity at `y = c`.
pub(crate) fn insertion_base<T: Real>(ring: &FusionRing, c: usize) -> Vec<DMatrix<C<T>>> {
    (0..ring.rank())
        .map(|y| {
            if y == c {
                DMatrix::from_element(1, 1, one())
            } else {
                DMatrix::from_element(0, 0, zero())
            }
        })
        .collect()
}

/// A morphism `src → dst` in the tree basis.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeVector<T: Real> {
    pub src: Word,
    pub dst: Word,
    /// `blocks[y]` has shape `(trees of dst at y) × (trees of src at y)`.
    pub blocks: Vec<DMatrix<C<T>>>,
}

impl<T: Real> TreeVector<T> {
    pub fn zeros(ring: &FusionRing, src: &[usize], dst: &[usize]) -> Self {
        let ds = tree_dims(ring, src);
        let dd = tree_dims(ring, dst);
        let blocks = (0..ring.rank())
            .map(|y| DMatrix::from_element(dd[y], ds[y], zero()))
            .collect();
        Self {
            src: src.to_vec(),
            dst: dst.to_vec(),
            blocks,
        }
    }

    pub fn identity(ring: &FusionRing, word: &[usize]) -> Self {
        let d = tree_dims(ring, word);
        let blocks = (0..ring.rank())
            .map(|y| DMatrix::identity(d[y], d[y]))
            .collect();
        Self {
            src: word.to_vec(),
            dst: word.to_vec(),
            blocks,
        }
    }

    /// The trivalent vertex `v_{ab}^{c,μ} : c → a⊗b`.
    pub fn vertex(ring: &FusionRing, a: usize, b: usize, c: usize, mu: usize) -> Result<Self> {
        if mu >= ring.n(a, b, c) {
            return Err(Error::TypeMismatch(format!(
                "no vertex {a}⊗{b} → {c} with multiplicity {mu}"
            )));
        }
        let mut v = Self::zeros(ring, &[c], &[a, b]);
        v.blocks[c][(mu, 0)] = one();
        Ok(v)
    }

    /// The Hom-space dimension.
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    /// Flattened coefficients, block by block in column-major order.
    pub fn coefficients(&self) -> Vec<C<T>> {
        self.blocks.iter().flat_map(|b| b.iter().copied()).collect()
    }

    pub fn set_coefficients(&mut self, coeffs: &[C<T>]) -> Result<()> {
        if coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coefficients, got {}",
                self.dim(),
                coeffs.len()
            )));
        }
        let mut it = coeffs.iter();
        for b in self.blocks.iter_mut() {
            for z in b.iter_mut() {
                *z = *it.next().expect("length checked");
            }
        }
        Ok(())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.src != other.dst {
            return Err(Error::TypeMismatch(format!(
                "cannot compose {:?} → {:?} after {:?} → {:?}",
                self.src, self.dst, other.src, other.dst
            )));
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a * b)
            .collect();
        Ok(Self {
            src: other.src.clone(),
            dst: self.dst.clone(),
            blocks,
        })
    }

    pub fn adjoint(&self) -> Self {
        Self {
            src: self.dst.clone(),
            dst: self.src.clone(),
            blocks: self.blocks.iter().map(|b| b.adjoint()).collect(),
        }
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self {
            src: self.src.clone(),
            dst: self.dst.clone(),
            blocks: self.blocks.iter().map(|b| b * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_type(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            src: self.src.clone(),
            dst: self.dst.clone(),
            blocks,
        })
    }

    pub fn add_assign_scaled(&mut self, other: &Self, s: C<T>) -> Result<()> {
        self.same_type(other)?;
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a += b * s;
        }
        Ok(())
    }

    fn same_type(&self, other: &Self) -> Result<()> {
        if self.src != other.src || self.dst != other.dst {
            return Err(Error::TypeMismatch(format!(
                "{:?} → {:?} and {:?} → {:?} are different Hom spaces",
                self.src, self.dst, other.src, other.dst
            )));
        }
        Ok(())
    }

    /// Coefficient inner product `Σ conj(w)·v`. For a source made of one simple
    /// label this is the scalar `W* V`.
    pub fn inner(&self, other: &Self) -> Result<C<T>> {
        self.same_type(other)?;
        let mut acc = zero();
        for (a, b) in self.blocks.iter().zip(&other.blocks) {
            for (x, y) in a.iter().zip(b.iter()) {
                acc += x * y.conj();
            }
        }
        Ok(acc)
    }

    pub fn norm(&self) -> T {
        self.blocks
            .iter()
            .flat_map(|b| b.iter())
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        self.same_type(other)?;
        Ok(self
            .blocks
            .iter()
            .zip(&other.blocks)
            .flat_map(|(a, b)| a.iter().zip(b.iter()))
            .fold(T::zero(), |acc, (x, y)| acc.max(abs(*x - *y))))
    }

    /// The scalar of an endomorphism of the unit or of a single simple label.
    pub fn scalar(&self) -> Result<C<T>> {
        match (self.src.as_slice(), self.dst.as_slice()) {
            ([], []) => Ok(self.blocks[0][(0, 0)]),
            ([a], [b]) if a == b => Ok(self.blocks[*a][(0, 0)]),
            _ => Err(Error::TypeMismatch(format!(
                "{:?} → {:?} is not an endomorphism of a simple object",
                self.src, self.dst
            ))),
        }
    }

    /// `self ⊗ 1_b`: a re-indexing of blocks.
    pub fn tensor_right(&self, ring: &FusionRing, b: usize) -> Self {
        let r = ring.rank();
        let ds = tree_dims(ring, &self.src);
        let dd = tree_dims(ring, &self.dst);
        let mut src = self.src.clone();
        src.push(b);
        let mut dst = self.dst.clone();
        dst.push(b);
        let mut out = Self::zeros(ring, &src, &dst);
        for y in 0..r {
            for x in 0..r {
                let nm = ring.n(x, b, y);
                if nm == 0 || ds[x] == 0 || dd[x] == 0 {
                    continue;
                }
                let so = comb_offset(ring, &ds, b, y, x);
                let do_ = comb_offset(ring, &dd, b, y, x);
                let blk = &self.blocks[x];
                let target = &mut out.blocks[y];
                for s in 0..dd[x] {
                    for t in 0..ds[x] {
                        let v = blk[(s, t)];
                        if v == zero() {
                            continue;
                        }
                        for mu in 0..nm {
                            target[(do_ + s * nm + mu, so + t * nm + mu)] = v;
                        }
                    }
                }
            }
        }
        out
    }

    /// `1_c ⊗ self`, given the insertion unitaries of `c` into the source and
    /// target words.
    pub(crate) fn tensor_left_with(
        &self,
        ring: &FusionRing,
        c: usize,
        u_src: &[DMatrix<C<T>>],
        u_dst: &[DMatrix<C<T>>],
    ) -> Self {
        let r = ring.rank();
        let ds = tree_dims(ring, &self.src);
        let dd = tree_dims(ring, &self.dst);
        let mut src = vec![c];
        src.extend_from_slice(&self.src);
        let mut dst = vec![c];
        dst.extend_from_slice(&self.dst);
        let mut out = Self::zeros(ring, &src, &dst);
        for y in 0..r {
            let (rows, cols) = out.blocks[y].shape();
            if rows == 0 || cols == 0 {
                continue;
            }
            let mut mid = DMatrix::from_element(rows, cols, zero::<T>());
            for x in 0..r {
                let nm = ring.n(c, x, y);
                if nm == 0 || ds[x] == 0 || dd[x] == 0 {
                    continue;
                }
                let so = insertion_offset(ring, &ds, c, y, x);
                let do_ = insertion_offset(ring, &dd, c, y, x);
                let blk = &self.blocks[x];
                for s in 0..dd[x] {
                    for t in 0..ds[x] {
                        let v = blk[(s, t)];
                        for mu in 0..nm {
                            mid[(do_ + s * nm + mu, so + t * nm + mu)] = v;
                        }
                    }
                }
            }
            out.blocks[y] = &u_dst[y] * mid * u_src[y].adjoint();
        }
        out
    }
}
