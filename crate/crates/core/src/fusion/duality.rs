use crate::error::{Error, Result};
use crate::fusion::tree::TreeVector;
use crate::fusion::FusionSystem;
use crate::report::ValidationReport;
use crate::scalar::{abs, one, re, Real, C};

/// Cups `R_ρ : 1 → ρ̄⊗ρ` and `R̄_ρ : 1 → ρ⊗ρ̄` for every label.
#[derive(Debug, Clone, PartialEq)]
pub struct DualityData<T: Real> {
    pub r: Vec<TreeVector<T>>,
    pub rbar: Vec<TreeVector<T>>,
}

impl<T: Real> DualityData<T> {
    pub(crate) fn empty() -> Self {
        Self {
            r: Vec::new(),
            rbar: Vec::new(),
        }
    }

    /// `R_ρ` is the unit tree of `ρ̄⊗ρ`; `R̄_ρ` is the unit tree of `ρ⊗ρ̄`
    /// rescaled by the phase that makes `R̄_ρ* ρ(R_ρ) = 1/d(ρ)`. For a dual
    /// pair `ρ < ρ̄` the roles are swapped on `ρ̄`.
    pub(crate) fn compute(fs: &FusionSystem<T>) -> Result<Self> {
        let ring = fs.ring();
        let r = ring.rank();
        let mut cups: Vec<Option<TreeVector<T>>> = vec![None; r];
        let mut bars: Vec<Option<TreeVector<T>>> = vec![None; r];
        for rho in 0..r {
            let bar = ring.dual(rho);
            if bar < rho {
                cups[rho] = bars[bar].clone();
                bars[rho] = cups[bar].clone();
                continue;
            }
            let cup = unit_cup(fs, bar, rho);
            let raw_bar = unit_cup(fs, rho, bar);
            let z = raw_bar
                .adjoint()
                .tensor_right(ring, rho)
                .compose(&fs.tensor_left(rho, &cup)?)?
                .scalar()?;
            if abs(z) <= T::lit(1e-12) {
                return Err(Error::AxiomFailure {
                    axiom: "duality".into(),
                    detail: format!("zig-zag of {} vanishes", ring.name(rho)),
                });
            }
            let phase = (one::<T>() / (z * re(fs.d(rho)))).conj();
            cups[rho] = Some(cup);
            bars[rho] = Some(raw_bar.scale(phase));
        }
        Ok(Self {
            r: cups.into_iter().map(|x| x.expect("filled")).collect(),
            rbar: bars.into_iter().map(|x| x.expect("filled")).collect(),
        })
    }

    /// Isometry and both zig-zag identities for every label.
    pub fn validate(&self, fs: &FusionSystem<T>, tol: T) -> Result<ValidationReport> {
        let mut report = ValidationReport::new("duality");
        let ring = fs.ring();
        for rho in 0..ring.rank() {
            let bar = ring.dual(rho);
            let (r, rb) = (&self.r[rho], &self.rbar[rho]);
            let inv_d = re(T::one() / fs.d(rho));
            let checks = [
                ("isometry", r.adjoint().compose(r)?.scalar()?, one::<T>()),
                ("isometry", rb.adjoint().compose(rb)?.scalar()?, one::<T>()),
                (
                    "zig-zag",
                    rb.adjoint()
                        .tensor_right(ring, rho)
                        .compose(&fs.tensor_left(rho, r)?)?
                        .scalar()?,
                    inv_d,
                ),
                (
                    "zig-zag",
                    r.adjoint()
                        .tensor_right(ring, bar)
                        .compose(&fs.tensor_left(bar, rb)?)?
                        .scalar()?,
                    inv_d,
                ),
            ];
            for (tag, got, want) in checks {
                let dev = abs(got - want);
                report.residual(dev.as_f64());
                if dev > tol {
                    report.violation(
                        tag,
                        format!("label {}: {:?} instead of {:?}", ring.name(rho), got, want),
                    );
                }
            }
        }
        Ok(report)
    }
}

fn unit_cup<T: Real>(fs: &FusionSystem<T>, a: usize, b: usize) -> TreeVector<T> {
    let mut v = fs.zeros(&[], &[a, b]);
    v.blocks[0][(0, 0)] = one();
    v
}

fn split_type<T: Real>(a: &TreeVector<T>) -> Result<(usize, usize, usize)> {
    match (a.src.as_slice(), a.dst.as_slice()) {
        ([zeta], [rho, eta]) => Ok((*rho, *eta, *zeta)),
        _ => Err(Error::TypeMismatch(format!(
            "expected a splitting morphism ζ → ρ⊗η, got {:?} → {:?}",
            a.src, a.dst
        ))),
    }
}

fn frobenius_scale<T: Real>(fs: &FusionSystem<T>, rho: usize, eta: usize, zeta: usize) -> C<T> {
    re((fs.d(rho) * fs.d(eta) / fs.d(zeta)).sqrt())
}

/// `Ã = √(d(ρ)d(η)/d(ζ)) ρ̄(A*) R_ρ`, mapping `ζ → ρ⊗η` to `η → ρ̄⊗ζ`.
pub fn frobenius_tilde<T: Real>(fs: &FusionSystem<T>, a: &TreeVector<T>) -> Result<TreeVector<T>> {
    let (rho, eta, zeta) = split_type(a)?;
    let bar = fs.dual(rho);
    let lhs = fs.tensor_left(bar, &a.adjoint())?;
    let rhs = fs.tensor_right(fs.cup(rho), eta);
    Ok(lhs
        .compose(&rhs)?
        .scale(frobenius_scale(fs, rho, eta, zeta)))
}

/// `Â = √(d(ρ)d(η)/d(ζ)) A* ρ(R̄_η)`, mapping `ζ → ρ⊗η` to `ρ → ζ⊗η̄`.
pub fn frobenius_hat<T: Real>(fs: &FusionSystem<T>, a: &TreeVector<T>) -> Result<TreeVector<T>> {
    let (rho, eta, zeta) = split_type(a)?;
    let bar = fs.dual(eta);
    let lhs = fs.tensor_right(&a.adjoint(), bar);
    let rhs = fs.tensor_left(rho, fs.cup_bar(eta))?;
    Ok(lhs
        .compose(&rhs)?
        .scale(frobenius_scale(fs, rho, eta, zeta)))
}
