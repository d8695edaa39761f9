//! The tube algebra of a fusion system, its center, and the modular data
//! carried by the SL(2,Z) action on the center.

pub mod algebra;
pub mod center;
pub mod modular;

use serde_json::json;

use crate::error::Result;
use crate::fusion::FusionSystem;
use crate::modular::ModularData;
use crate::scalar::Real;

pub use algebra::{build_tube, tube_basis, TubeAlgebra, TubeBasisElement};
pub use center::{center, projection_residual, CenterData};
pub use modular::{
    extract, modular_data_from_tube, s_prime_action, t_prime_action,
    tube_inner_orthonormality_check, Extraction,
};

/// Fusion system to modular data in one call.
pub fn derive_modular<T: Real>(fs: &FusionSystem<T>, seed: u64) -> Result<ModularData<T>> {
    let tube = build_tube(fs)?;
    let c = center(&tube, seed, fs.tolerance())?;
    modular_data_from_tube(&tube, &c)
}

/// Diagnostic listing of the basis and the sparsity of the structure constants.
pub fn dump_json<T: Real>(t: &TubeAlgebra<T>) -> String {
    let n = t.dim();
    let basis: Vec<_> = t
        .basis
        .iter()
        .map(|b| {
            json!({
                "xi": t.labels[b.xi], "zeta": t.labels[b.zeta], "eta": t.labels[b.eta],
                "p": t.labels[b.p], "b1": b.b1, "b2": b.b2,
            })
        })
        .collect();
    let mut nonzero = Vec::new();
    let mut total = 0usize;
    for x in 0..n {
        for y in 0..n {
            let k = t.structure_constants(x, y).len();
            if k > 0 {
                nonzero.push(json!([x, y, k]));
                total += k;
            }
        }
    }
    let doc = json!({
        "system": t.system,
        "dimension": n,
        "basis": basis,
        "product_support": nonzero,
        "structure_constant_count": total,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("json");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::{builtins, gauge::random_gauge};
    use crate::modular::match_labels;
    use crate::scalar::{abs, root_of_unity};

    fn sector_count(fs: &FusionSystem<f64>) -> usize {
        let ring = fs.ring();
        let r = ring.rank();
        let mut n = 0;
        for xi in 0..r {
            for zeta in 0..r {
                for eta in 0..r {
                    for p in 0..r {
                        n += ring.n(xi, zeta, p) * ring.n(zeta, eta, p);
                    }
                }
            }
        }
        n
    }

    #[test]
    fn dimension_matches_multiplicity_count() {
        for (name, want) in [
            ("fibonacci", 7),
            ("ising", 12),
            ("ty_3_1_plus", 24),
            ("vec_omega_2_0", 4),
            ("vec_omega_3_1", 9),
            ("vec_omega_5_2", 25),
        ] {
            let fs = builtins::by_name::<f64>(name).unwrap();
            let t = build_tube(&fs).unwrap();
            assert_eq!(t.dim(), want, "{name}");
            assert_eq!(sector_count(&fs), want, "{name}");
        }
    }

    #[test]
    fn algebra_axioms_hold() {
        for name in ["fibonacci", "ising", "vec_omega_3_1"] {
            let t = build_tube(&builtins::by_name::<f64>(name).unwrap()).unwrap();
            assert!(t.associativity_residual() < 1e-12, "{name}");
            assert!(t.star_residual() < 1e-12, "{name}");
            assert!(t.unit_residual() < 1e-12, "{name}");
            let (_, min_eig) = t.gram_check();
            assert!(min_eig > 0.1, "{name}: Gram form not positive ({min_eig})");
        }
    }

    #[test]
    fn center_ranks() {
        for (name, want) in [
            ("vec_omega_2_0", 4),
            ("vec_omega_3_0", 9),
            ("fibonacci", 4),
            ("ising", 9),
        ] {
            let t = build_tube(&builtins::by_name::<f64>(name).unwrap()).unwrap();
            let c = center(&t, 7, 1e-9).unwrap();
            assert_eq!(c.rank, want, "{name}");
            assert!(projection_residual(&t, &c.projections) < 1e-10, "{name}");
        }
    }

    #[test]
    fn fibonacci_double_twists() {
        let md = derive_modular(&builtins::fibonacci::<f64>(), 1).unwrap();
        let mut phases: Vec<_> = md.t.clone();
        let want = [
            root_of_unity::<f64>(0, 1),
            root_of_unity(0, 1),
            root_of_unity(2, 5),
            root_of_unity(-2, 5),
        ];
        for w in want {
            let k = phases
                .iter()
                .position(|z| abs(*z - w) < 1e-9)
                .expect("missing twist");
            phases.remove(k);
        }
        assert!((md.lambda - (5.0 + 5f64.sqrt()) / 2.0).abs() < 1e-9);
    }

    #[test]
    fn extraction_is_seed_and_gauge_independent() {
        let fs = builtins::ising::<f64>();
        let a = derive_modular(&fs, 1).unwrap();
        let b = derive_modular(&fs, 99).unwrap();
        let c = derive_modular(&random_gauge(&fs, 5).unwrap(), 3).unwrap();
        for other in [&b, &c] {
            let m = match_labels(&a, other, 1e-8).expect("no relabeling found");
            assert!(m.max_deviation < 1e-8);
        }
    }

    #[test]
    fn dump_lists_every_basis_element() {
        let t = build_tube(&builtins::fibonacci::<f64>()).unwrap();
        let doc: serde_json::Value = serde_json::from_str(&dump_json(&t)).unwrap();
        assert_eq!(doc["dimension"], 7);
        assert_eq!(doc["basis"].as_array().unwrap().len(), 7);
    }
}
