use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::fusion::ring::FusionRing;
use crate::report::ValidationReport;
use crate::scalar::{abs, one, zero, Real, C};

/// Index of one F-symbol entry.
///
/// The entry is the inner product `⟨L, R⟩` of two isometric trees in
/// `Hom(l, i⊗j⊗k)`: the left tree `(v_{ij}^{m,α} ⊗ 1) v_{mk}^{l,β}` and the
/// right tree `(1 ⊗ v_{jk}^{n,γ}) v_{in}^{l,δ}`. Hence each right tree expands
/// as `R = Σ F[L,R] L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FKey {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub m: usize,
    pub alpha: usize,
    pub beta: usize,
    pub n: usize,
    pub gamma: usize,
    pub delta: usize,
}

/// Dense unitary block `F^{ijk}_l` over the left and right tree bases.
#[derive(Debug, Clone, PartialEq)]
pub struct FBlock<T: Real> {
    left_off: Vec<usize>,
    right_off: Vec<usize>,
    left_stride: Vec<usize>,
    right_stride: Vec<usize>,
    pub matrix: DMatrix<C<T>>,
}

impl<T: Real> FBlock<T> {
    fn shape(
        ring: &FusionRing,
        q: [usize; 4],
    ) -> (Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>, usize) {
        let [i, j, k, l] = q;
        let r = ring.rank();
        let mut left_off = Vec::with_capacity(r + 1);
        let mut left_stride = Vec::with_capacity(r);
        let mut right_off = Vec::with_capacity(r + 1);
        let mut right_stride = Vec::with_capacity(r);
        let (mut lo, mut ro) = (0, 0);
        for x in 0..r {
            left_off.push(lo);
            left_stride.push(ring.n(x, k, l));
            lo += ring.n(i, j, x) * ring.n(x, k, l);
            right_off.push(ro);
            right_stride.push(ring.n(i, x, l));
            ro += ring.n(j, k, x) * ring.n(i, x, l);
        }
        left_off.push(lo);
        right_off.push(ro);
        debug_assert_eq!(lo, ro);
        (left_off, right_off, left_stride, right_stride, lo)
    }

    pub fn zeros(ring: &FusionRing, q: [usize; 4]) -> Self {
        let (left_off, right_off, left_stride, right_stride, dim) = Self::shape(ring, q);
        Self {
            left_off,
            right_off,
            left_stride,
            right_stride,
            matrix: DMatrix::from_element(dim, dim, zero()),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    #[inline]
    pub fn left_index(&self, m: usize, alpha: usize, beta: usize) -> usize {
        self.left_off[m] + alpha * self.left_stride[m] + beta
    }

    #[inline]
    pub fn right_index(&self, n: usize, gamma: usize, delta: usize) -> usize {
        self.right_off[n] + gamma * self.right_stride[n] + delta
    }

    #[inline]
    pub fn get(
        &self,
        m: usize,
        alpha: usize,
        beta: usize,
        n: usize,
        gamma: usize,
        delta: usize,
    ) -> C<T> {
        self.matrix[(
            self.left_index(m, alpha, beta),
            self.right_index(n, gamma, delta),
        )]
    }

    /// Left labels `(m, α, β)` in index order.
    pub fn left_labels(&self) -> Vec<(usize, usize, usize)> {
        labels_of(&self.left_off, &self.left_stride)
    }

    pub fn right_labels(&self) -> Vec<(usize, usize, usize)> {
        labels_of(&self.right_off, &self.right_stride)
    }
}

fn labels_of(off: &[usize], stride: &[usize]) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for x in 0..stride.len() {
        let len = off[x + 1] - off[x];
        for idx in 0..len {
            out.push((x, idx / stride[x], idx % stride[x]));
        }
    }
    out
}

/// Sparse store of F-symbol blocks keyed by admissible `(i, j, k, l)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FSymbols<T: Real> {
    blocks: BTreeMap<[usize; 4], FBlock<T>>,
}

impl<T: Real> FSymbols<T> {
    /// Assembles blocks from sparse entries. Entries inside a provided block
    /// that are not listed are zero; blocks with a unit among `i, j, k` are
    /// filled with the canonical identity when absent.
    pub fn from_entries(
        ring: &FusionRing,
        entries: impl IntoIterator<Item = (FKey, C<T>)>,
    ) -> Result<Self> {
        let mut blocks: BTreeMap<[usize; 4], FBlock<T>> = BTreeMap::new();
        let r = ring.rank();
        for (key, value) in entries {
            let q = [key.i, key.j, key.k, key.l];
            if q.iter().any(|&x| x >= r) || key.m >= r || key.n >= r {
                return Err(Error::Schema(format!(
                    "F-symbol label out of range: {key:?}"
                )));
            }
            let ok = key.alpha < ring.n(key.i, key.j, key.m)
                && key.beta < ring.n(key.m, key.k, key.l)
                && key.gamma < ring.n(key.j, key.k, key.n)
                && key.delta < ring.n(key.i, key.n, key.l);
            if !ok {
                return Err(Error::Schema(format!(
                    "F-symbol entry is not admissible: {key:?}"
                )));
            }
            let block = blocks.entry(q).or_insert_with(|| FBlock::zeros(ring, q));
            let (a, b) = (
                block.left_index(key.m, key.alpha, key.beta),
                block.right_index(key.n, key.gamma, key.delta),
            );
            block.matrix[(a, b)] = value;
        }
        for q in admissible_quadruples(ring) {
            if (q[0] == 0 || q[1] == 0 || q[2] == 0) && !blocks.contains_key(&q) {
                blocks.insert(q, unit_block(ring, q));
            }
        }
        Ok(Self { blocks })
    }

    /// Builds the store from a closure evaluated on every admissible entry.
    pub fn from_fn(ring: &FusionRing, mut f: impl FnMut(&FKey) -> C<T>) -> Self {
        let mut blocks = BTreeMap::new();
        for q in admissible_quadruples(ring) {
            let mut block = FBlock::zeros(ring, q);
            let lefts = block.left_labels();
            let rights = block.right_labels();
            for (a, &(m, alpha, beta)) in lefts.iter().enumerate() {
                for (b, &(n, gamma, delta)) in rights.iter().enumerate() {
                    let key = FKey {
                        i: q[0],
                        j: q[1],
                        k: q[2],
                        l: q[3],
                        m,
                        alpha,
                        beta,
                        n,
                        gamma,
                        delta,
                    };
                    block.matrix[(a, b)] = f(&key);
                }
            }
            blocks.insert(q, block);
        }
        Self { blocks }
    }

    #[inline]
    pub fn block(&self, i: usize, j: usize, k: usize, l: usize) -> Option<&FBlock<T>> {
        self.blocks.get(&[i, j, k, l])
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&[usize; 4], &FBlock<T>)> {
        self.blocks.iter()
    }

    pub fn blocks_mut(&mut self) -> impl Iterator<Item = (&[usize; 4], &mut FBlock<T>)> {
        self.blocks.iter_mut()
    }

    /// Every stored entry as a sparse `(key, value)` list, zero entries skipped.
    pub fn entries(&self) -> Vec<(FKey, C<T>)> {
        let mut out = Vec::new();
        for (q, block) in &self.blocks {
            let lefts = block.left_labels();
            let rights = block.right_labels();
            for (a, &(m, alpha, beta)) in lefts.iter().enumerate() {
                for (b, &(n, gamma, delta)) in rights.iter().enumerate() {
                    let v = block.matrix[(a, b)];
                    if v != zero() {
                        out.push((
                            FKey {
                                i: q[0],
                                j: q[1],
                                k: q[2],
                                l: q[3],
                                m,
                                alpha,
                                beta,
                                n,
                                gamma,
                                delta,
                            },
                            v,
                        ));
                    }
                }
            }
        }
        out
    }

    /// Fails with `MissingEntry` on the first admissible block that is absent.
    pub fn check_complete(&self, ring: &FusionRing) -> Result<()> {
        for q in admissible_quadruples(ring) {
            if !self.blocks.contains_key(&q) {
                return Err(Error::MissingEntry(q));
            }
        }
        Ok(())
    }
}

/// All `(i, j, k, l)` with `Hom(l, i⊗j⊗k) ≠ 0`.
pub fn admissible_quadruples(ring: &FusionRing) -> Vec<[usize; 4]> {
    let r = ring.rank();
    let mut out = Vec::new();
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                for l in 0..r {
                    if ring.triple_dim(i, j, k, l) > 0 {
                        out.push([i, j, k, l]);
                    }
                }
            }
        }
    }
    out
}

/// Identity block for a quadruple containing the unit: the left and right
/// trees coincide once the unit vertices are dropped.
fn unit_block<T: Real>(ring: &FusionRing, q: [usize; 4]) -> FBlock<T> {
    let [i, j, k, l] = q;
    let mut block = FBlock::zeros(ring, q);
    if i == 0 {
        // left (0⊗j→j, j⊗k→l); right (j⊗k→n, 0⊗n→l): n = l, γ = β
        for beta in 0..ring.n(j, k, l) {
            let (a, b) = (block.left_index(j, 0, beta), block.right_index(l, beta, 0));
            block.matrix[(a, b)] = one();
        }
    } else if j == 0 {
        // left (i⊗0→i, i⊗k→l); right (0⊗k→k, i⊗k→l)
        for beta in 0..ring.n(i, k, l) {
            let (a, b) = (block.left_index(i, 0, beta), block.right_index(k, 0, beta));
            block.matrix[(a, b)] = one();
        }
    } else {
        // k == 0: left (i⊗j→m, m⊗0→l): m = l; right (j⊗0→j, i⊗j→l)
        for alpha in 0..ring.n(i, j, l) {
            let (a, b) = (
                block.left_index(l, alpha, 0),
                block.right_index(j, 0, alpha),
            );
            block.matrix[(a, b)] = one();
        }
    }
    block
}

/// Unitarity of each block and the unit normalization of blocks containing `0`.
pub fn validate_fsymbols<T: Real>(ring: &FusionRing, f: &FSymbols<T>, tol: T) -> ValidationReport {
    let mut report = ValidationReport::new("F-symbols");
    let mut worst = T::zero();
    for (q, block) in f.blocks() {
        let dim = block.dim();
        let prod = block.matrix.adjoint() * &block.matrix;
        let dev = (0..dim)
            .flat_map(|a| (0..dim).map(move |b| (a, b)))
            .map(|(a, b)| {
                let want = if a == b { one() } else { zero() };
                abs(prod[(a, b)] - want)
            })
            .fold(T::zero(), |acc, x| acc.max(x));
        worst = worst.max(dev);
        if dev > tol {
            report.violation(
                "unitary",
                format!("block {q:?} deviates from unitary by {:.3e}", dev.as_f64()),
            );
        }
        if q[0] == 0 || q[1] == 0 || q[2] == 0 {
            let canon = unit_block::<T>(ring, *q);
            let dev = (&block.matrix - &canon.matrix)
                .iter()
                .fold(T::zero(), |acc, &z| acc.max(abs(z)));
            if dev > tol {
                report.violation(
                    "unit-normalization",
                    format!("block {q:?} is not the canonical identity"),
                );
            }
        }
    }
    report.residual(worst.as_f64());
    report
}

/// Largest residual of the pentagon equations over all labels and multiplicities.
///
/// Both sides express the fully right-bracketed tree of `Hom(y, a⊗b⊗c⊗d)` in
/// the fully left-bracketed basis: once through two moves and once through three.
pub fn pentagon_residual<T: Real>(ring: &FusionRing, f: &FSymbols<T>) -> Result<T> {
    let r = ring.rank();
    let get = |i: usize, j: usize, k: usize, l: usize| {
        f.block(i, j, k, l).ok_or(Error::MissingEntry([i, j, k, l]))
    };
    let mut worst = T::zero();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for d in 0..r {
                    for y in 0..r {
                        let mut any = false;
                        for e in 0..r {
                            if ring.n(e, d, y) > 0 {
                                any = true;
                                break;
                            }
                        }
                        if !any {
                            continue;
                        }
                        worst = worst.max(pentagon_at(ring, &get, [a, b, c, d, y])?);
                    }
                }
            }
        }
    }
    Ok(worst)
}

fn pentagon_at<'a, T: Real>(
    ring: &FusionRing,
    get: &impl Fn(usize, usize, usize, usize) -> Result<&'a FBlock<T>>,
    q: [usize; 5],
) -> Result<T> {
    let [a, b, c, d, y] = q;
    let r = ring.rank();
    let mut worst = T::zero();
    // right-comb tree labels (h, ν1) (g, ν2) ν3
    for h in 0..r {
        for g in 0..r {
            let (nh, ng, ny) = (ring.n(c, d, h), ring.n(b, h, g), ring.n(a, g, y));
            if nh * ng * ny == 0 {
                continue;
            }
            for nu1 in 0..nh {
                for nu2 in 0..ng {
                    for nu3 in 0..ny {
                        // left-comb tree labels (f, μ1) (e, μ2) μ3
                        for fl in 0..r {
                            for e in 0..r {
                                let (mf, me, my) =
                                    (ring.n(a, b, fl), ring.n(fl, c, e), ring.n(e, d, y));
                                if mf * me * my == 0 {
                                    continue;
                                }
                                for mu1 in 0..mf {
                                    for mu2 in 0..me {
                                        for mu3 in 0..my {
                                            let mut lhs = zero::<T>();
                                            if ring.n(fl, h, y) > 0 {
                                                let f1 = get(a, b, h, y)?;
                                                let f2 = get(fl, c, d, y)?;
                                                for beta in 0..ring.n(fl, h, y) {
                                                    lhs += f1.get(fl, mu1, beta, g, nu2, nu3)
                                                        * f2.get(e, mu2, mu3, h, nu1, beta);
                                                }
                                            }
                                            let mut rhs = zero::<T>();
                                            for k in 0..r {
                                                let (nk1, nk2) = (ring.n(b, c, k), ring.n(k, d, g));
                                                let ne = ring.n(a, k, e);
                                                if nk1 * nk2 * ne == 0 {
                                                    continue;
                                                }
                                                let f3 = get(b, c, d, g)?;
                                                let f4 = get(a, k, d, y)?;
                                                let f5 = get(a, b, c, e)?;
                                                for k1 in 0..nk1 {
                                                    for k2 in 0..nk2 {
                                                        for e1 in 0..ne {
                                                            rhs += f3.get(k, k1, k2, h, nu1, nu2)
                                                                * f4.get(e, e1, mu3, g, k2, nu3)
                                                                * f5.get(fl, mu1, mu2, k, k1, e1);
                                                        }
                                                    }
                                                }
                                            }
                                            worst = worst.max(abs(lhs - rhs));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(worst)
}

/// Pentagon check with a verdict at tolerance `tol`.
pub fn validate_pentagon<T: Real>(
    ring: &FusionRing,
    f: &FSymbols<T>,
    tol: T,
) -> Result<ValidationReport> {
    f.check_complete(ring)?;
    let mut report = ValidationReport::new("pentagon");
    let res = pentagon_residual(ring, f)?;
    report.residual(res.as_f64());
    if res >= tol {
        report.violation(
            "pentagon",
            format!("max pentagon residual {:.3e}", res.as_f64()),
        );
    }
    Ok(report)
}
