//! End-to-end properties of fusion system → tube algebra → modular data →
//! surgery invariants.

mod common;

use proptest::prelude::*;

use common::{c, chain_by_enumeration, fibonacci_layer, ising_layer};
use tvo::fusion::builtins::{by_name, standard_names};
use tvo::modular::io::{from_json, to_canonical_json};
use tvo::modular::{conjugate, fusion_rules, match_labels, product, INTEGER_TOLERANCE};
use tvo::scalar::abs;
use tvo::surgery::{chain_invariant, lens_invariant, star_invariant};
use tvo::tube::derive_modular;
use tvo::ModularDataF64;

fn derived(name: &str) -> ModularDataF64 {
    derive_modular(&by_name::<f64>(name).unwrap(), 1).unwrap()
}

#[test]
fn dimensions_are_at_least_one_and_sum_to_global_dimension() {
    for name in standard_names() {
        let md = derived(&name);
        let d = md.dims();
        assert!(d.iter().all(|&x| x > 1.0 - 1e-9), "{name}: {d:?}");
        let total: f64 = d.iter().map(|x| x * x).sum();
        assert!(
            (total - md.lambda * md.lambda).abs() < 1e-8 * total,
            "{name}"
        );
        let fs = by_name::<f64>(&name).unwrap();
        assert!((md.lambda - fs.lambda()).abs() < 1e-8 * md.lambda, "{name}");
    }
}

#[test]
fn conjugate_data_has_charge_conjugated_fusion_rules() {
    for name in ["vec_omega_3_1", "ty_3_1_plus", "fibonacci"] {
        let md = derived(name);
        let (n, _) = fusion_rules(&md, INTEGER_TOLERANCE).unwrap();
        let (nc, _) = fusion_rules(&conjugate(&md), INTEGER_TOLERANCE).unwrap();
        let bar = md.charge_conjugation();
        let r = md.rank();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    assert_eq!(
                        nc.n(i, j, k),
                        n.n(bar[i], bar[j], bar[k]),
                        "{name} N_{i}{j}^{k}"
                    );
                }
            }
        }
    }
}

#[test]
fn twisted_double_is_chiral() {
    let md = derived("vec_omega_3_1");
    let a = lens_invariant(&md, 3, 1).unwrap();
    let b = lens_invariant(&md, 3, 2).unwrap();
    assert!(abs(a - b) > 0.5, "{a} vs {b}");
    assert!((a.norm() - b.norm()).abs() < 1e-12);
    assert!(abs(a - b.conj()) < 1e-12);
    assert!(match_labels(&md, &conjugate(&md), 1e-8).is_none());
}

#[test]
fn fibonacci_double_is_achiral() {
    let md = derived("fibonacci");
    assert!(match_labels(&md, &conjugate(&md), 1e-8).is_some());
    for p in 2..10 {
        for q in 1..p {
            if num_integer::gcd(p, q) == 1 {
                assert!(
                    lens_invariant(&md, p, q).unwrap().im.abs() < 1e-12,
                    "L({p},{q})"
                );
            }
        }
    }
}

#[test]
fn derivation_is_deterministic_and_round_trips() {
    for name in ["ising", "ty_3_1_plus", "vec_omega_2_1"] {
        let fs = by_name::<f64>(name).unwrap();
        let a = to_canonical_json(&derive_modular(&fs, 7).unwrap());
        let b = to_canonical_json(&derive_modular(&fs, 7).unwrap());
        assert_eq!(a, b, "{name}");
        let back = from_json::<f64>(&a, true).unwrap();
        let report = back.load_report.as_ref().unwrap();
        assert!(
            report.violations.is_empty() && report.warnings.is_empty(),
            "{name}: {report}"
        );
        assert_eq!(to_canonical_json(&back), a, "{name}");
    }
}

#[test]
fn doubles_factor_as_layer_times_mirror() {
    for (name, layer) in [("fibonacci", fibonacci_layer()), ("ising", ising_layer())] {
        let md = derived(name);
        let square = product(&layer, &conjugate(&layer));
        let m = match_labels(&md, &square, 1e-8)
            .or_else(|| match_labels(&md, &conjugate(&square), 1e-8));
        assert!(m.is_some(), "{name}");
        // star-shaped presentations factor too
        let one = star_invariant(&layer, 1, &[2, 3, 5]).unwrap();
        let two = star_invariant(&md, 1, &[2, 3, 5]).unwrap();
        assert!(
            abs(two - c(one.norm_sqr(), 0.0)) < 1e-9,
            "{name}: {two} vs |{one}|²"
        );
    }
}

#[test]
fn ising_double_sphere_value() {
    let md = derived("ising");
    assert!(abs(chain_invariant(&md, &[1]).unwrap() - c(0.25, 0.0)) < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chain_matches_enumeration(a in prop::collection::vec(-4i64..=4, 1..5)) {
        let md = derived("fibonacci");
        let fast = chain_invariant(&md, &a).unwrap();
        let slow = chain_by_enumeration(&md, &a);
        prop_assert!(abs(fast - slow) < 1e-10, "{:?}: {} vs {}", a, fast, slow);
    }
}
