//! Finite fusion systems: fusion rules, dimensions, F-symbols, duality and
//! an evaluator for morphisms built from them.

pub mod builtins;
pub mod dims;
pub mod duality;
pub mod expr;
pub mod fsymbols;
pub mod gauge;
pub mod io;
pub mod ring;
pub mod tree;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::report::ValidationReport;
use crate::scalar::{Real, C};

pub use dims::{quantum_dims, QuantumDims};
pub use duality::{frobenius_hat, frobenius_tilde, DualityData};
pub use expr::Expr;
pub use fsymbols::{validate_pentagon, FBlock, FKey, FSymbols};
pub use ring::{validate_fusion_ring, FusionRing, Label};
pub use tree::{tree_dims, TreeVector, Word};

type InsertionCache<T> = RwLock<HashMap<(usize, Word), Arc<Vec<DMatrix<C<T>>>>>>;

/// A unitary fusion system: fusion ring, dimensions, F-symbols and the
/// duality morphisms derived from them.
pub struct FusionSystem<T: Real> {
    name: String,
    ring: FusionRing,
    dims: QuantumDims<T>,
    f: FSymbols<T>,
    duality: DualityData<T>,
    tolerance: f64,
    insertions: InsertionCache<T>,
}

impl<T: Real> Clone for FusionSystem<T> {
    fn clone(&self) -> Self {
        Self {
            name: self.name.clone(),
            ring: self.ring.clone(),
            dims: self.dims.clone(),
            f: self.f.clone(),
            duality: self.duality.clone(),
            tolerance: self.tolerance,
            insertions: RwLock::new(HashMap::new()),
        }
    }
}

impl<T: Real> std::fmt::Debug for FusionSystem<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FusionSystem")
            .field("name", &self.name)
            .field("rank", &self.ring.rank())
            .field("lambda", &self.dims.lambda)
            .finish_non_exhaustive()
    }
}

impl<T: Real> FusionSystem<T> {
    /// Assembles a system. The ring must be valid and every admissible F block
    /// present; pentagon and zig-zag identities are checked by [`Self::validate`].
    pub fn new(
        name: impl Into<String>,
        ring: FusionRing,
        f: FSymbols<T>,
        tolerance: f64,
    ) -> Result<Self> {
        let report = validate_fusion_ring(&ring);
        if !report.is_valid() {
            return Err(Error::InvalidRing(report));
        }
        f.check_complete(&ring)?;
        let dims = quantum_dims(&ring)?;
        let mut fs = Self {
            name: name.into(),
            ring,
            dims,
            f,
            duality: DualityData::empty(),
            tolerance,
            insertions: RwLock::new(HashMap::new()),
        };
        fs.duality = DualityData::compute(&fs)?;
        Ok(fs)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    pub fn fsymbols(&self) -> &FSymbols<T> {
        &self.f
    }

    pub fn dims(&self) -> &QuantumDims<T> {
        &self.dims
    }

    #[inline]
    pub fn d(&self, i: usize) -> T {
        self.dims.d[i]
    }

    pub fn lambda(&self) -> T {
        self.dims.lambda
    }

    #[inline]
    pub fn dual(&self, i: usize) -> usize {
        self.ring.dual(i)
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn duality(&self) -> &DualityData<T> {
        &self.duality
    }

    /// `R_ρ : 1 → ρ̄⊗ρ`.
    pub fn cup(&self, rho: usize) -> &TreeVector<T> {
        &self.duality.r[rho]
    }

    /// `R̄_ρ : 1 → ρ⊗ρ̄`.
    pub fn cup_bar(&self, rho: usize) -> &TreeVector<T> {
        &self.duality.rbar[rho]
    }

    pub fn vertex(&self, a: usize, b: usize, c: usize, mu: usize) -> Result<TreeVector<T>> {
        TreeVector::vertex(&self.ring, a, b, c, mu)
    }

    pub fn identity(&self, word: &[usize]) -> TreeVector<T> {
        TreeVector::identity(&self.ring, word)
    }

    pub fn zeros(&self, src: &[usize], dst: &[usize]) -> TreeVector<T> {
        TreeVector::zeros(&self.ring, src, dst)
    }

    /// Unitaries relating `(1_c ⊗ T) ∘ v_{cx}^{y,μ}` to the left-comb trees of `c·w`.
    fn insertion(&self, c: usize, w: &[usize]) -> Result<Arc<Vec<DMatrix<C<T>>>>> {
        let key = (c, w.to_vec());
        if let Some(hit) = self.insertions.read().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let value = match w.split_last() {
            None => tree::insertion_base(&self.ring, c),
            Some((&b, prefix)) => {
                let prev = self.insertion(c, prefix)?;
                tree::insertion_step(&self.ring, &self.f, c, prefix, b, &prev)?
            }
        };
        let value = Arc::new(value);
        self.insertions
            .write()
            .expect("cache lock")
            .entry(key)
            .or_insert_with(|| value.clone());
        Ok(value)
    }

    /// `ρ(X) = 1_ρ ⊗ X`.
    pub fn tensor_left(&self, rho: usize, x: &TreeVector<T>) -> Result<TreeVector<T>> {
        let u_src = self.insertion(rho, &x.src)?;
        let u_dst = self.insertion(rho, &x.dst)?;
        Ok(x.tensor_left_with(&self.ring, rho, &u_src, &u_dst))
    }

    /// `X ⊗ 1_ρ`.
    pub fn tensor_right(&self, x: &TreeVector<T>, rho: usize) -> TreeVector<T> {
        x.tensor_right(&self.ring, rho)
    }

    /// `1_w ⊗ X` for a word `w`.
    pub fn tensor_left_word(&self, w: &[usize], x: &TreeVector<T>) -> Result<TreeVector<T>> {
        let mut out = x.clone();
        for &c in w.iter().rev() {
            out = self.tensor_left(c, &out)?;
        }
        Ok(out)
    }

    /// `X ⊗ 1_w` for a word `w`.
    pub fn tensor_right_word(&self, x: &TreeVector<T>, w: &[usize]) -> TreeVector<T> {
        let mut out = x.clone();
        for &c in w {
            out = self.tensor_right(&out, c);
        }
        out
    }

    /// `X ⊗ Y = (X ⊗ 1) ∘ (1 ⊗ Y)`.
    pub fn tensor(&self, x: &TreeVector<T>, y: &TreeVector<T>) -> Result<TreeVector<T>> {
        let left = self.tensor_right_word(x, &y.dst);
        let right = self.tensor_left_word(&x.src, y)?;
        left.compose(&right)
    }

    /// Ring axioms, F-symbol unitarity and normalization, pentagon, and both
    /// zig-zag identities.
    pub fn validate(&self) -> Result<ValidationReport> {
        let tol = T::lit(self.tolerance);
        let mut report = ValidationReport::new(format!("fusion system {}", self.name));
        report.merge(validate_fusion_ring(&self.ring));
        let res = self.dims.residual(&self.ring);
        report.residual(res.as_f64());
        if res > tol {
            report.violation(
                "dims",
                format!("dimension equations fail by {:.3e}", res.as_f64()),
            );
        }
        report.merge(fsymbols::validate_fsymbols(&self.ring, &self.f, tol));
        report.merge(validate_pentagon(&self.ring, &self.f, tol)?);
        report.merge(self.duality.validate(self, tol)?);
        Ok(report)
    }
}
