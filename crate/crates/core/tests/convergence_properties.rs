mod common;

use common::*;
use proptest::prelude::*;
use voltlin::compose::{follow_with_filter, precede_with_filter};
use voltlin::convergence::{
    check_convergence, eta, lipschitz_constant, psi, radius_of_convergence, root_test_radius,
    weight_w, weight_w_tilde,
};
use voltlin::solver::richardson_step;
use voltlin::FirFilter;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psi_grows_with_bound(seed in any::<u64>(), b in 0.0f64..3.0, db in 0.0f64..1.0) {
        let mut r = rng(seed);
        let h = system(&mut r, 5, 3, false, true);
        for n in [0i64, 3, 9] {
            prop_assert!(psi(&h, b, n).unwrap() <= psi(&h, b + db, n).unwrap());
        }
    }

    #[test]
    fn pure_gain_post_and_pre_agree(seed in any::<u64>(), k in 0.5f64..80.0, b in 0.1f64..2.0) {
        let mut r = rng(seed);
        let h = system(&mut r, 5, 3, false, true);
        let q = FirFilter::pure_gain_inverse(k).unwrap();
        let post = check_convergence(&precede_with_filter(&h, &q).unwrap(), k * b, 0..12).unwrap();
        let pre = check_convergence(&follow_with_filter(&h, &q).unwrap(), b, 0..12).unwrap();
        for (a, c) in post.trace.iter().zip(&pre.trace) {
            prop_assert!((a - c).abs() <= 1e-12 * c.abs().max(1.0), "{a} vs {c}");
        }
    }

    #[test]
    fn eta_dominated_by_psi(seed in any::<u64>(), bx in 0.0f64..2.0, fr in 0.0f64..1.0, fe in 0.0f64..1.0) {
        let mut r = rng(seed);
        let h = system(&mut r, 5, 3, false, true);
        for n in 0..6 {
            let e = eta(&h, bx, fr * bx, fe * bx, n).unwrap();
            prop_assert!(e <= psi(&h, bx, n).unwrap() * (1.0 + 1e-12) + 1e-15);
        }
    }

    #[test]
    fn eta_grows_with_error(seed in any::<u64>(), bx in 0.0f64..2.0, bxr in 0.0f64..2.0, e in 0.0f64..2.0, de in 0.0f64..1.0) {
        let mut r = rng(seed);
        let h = system(&mut r, 5, 3, false, true);
        prop_assert!(eta(&h, bx, bxr, e, 2).unwrap() <= eta(&h, bx, bxr, e + de, 2).unwrap());
    }

    #[test]
    fn observed_contraction_within_eta(seed in any::<u64>(), len in 4usize..20) {
        let mut r = rng(seed);
        let x = signal(&mut r, len, 1.0);
        let h = contractive_system(&mut r, x.sup_norm(), len, false);
        let y = h.evaluate(&x).unwrap();
        let mut xr = y.clone();
        for _ in 0..6 {
            let e = x.distance(&xr).unwrap();
            if e <= 1e-12 {
                break;
            }
            let sup_eta = (0..len as i64)
                .map(|n| eta(&h, x.sup_norm(), xr.sup_norm(), e, n).unwrap())
                .fold(0.0, f64::max);
            let next = richardson_step(&h, &y, &xr).unwrap();
            let e_next = x.distance(&next).unwrap();
            prop_assert!(e_next <= e * sup_eta * (1.0 + 1e-10) + 1e-14, "{e_next} > {e}·{sup_eta}");
            xr = next;
        }
    }

    #[test]
    fn lipschitz_constant_bounds_output_difference(seed in any::<u64>(), len in 1usize..20) {
        let mut r = rng(seed);
        let h = system(&mut r, 5, 3, false, true);
        let a = signal(&mut r, len, 1.0);
        let b = signal(&mut r, len, 1.0);
        let d = a.distance(&b).unwrap();
        let l = lipschitz_constant(&h, a.sup_norm(), d, 0..len as i64).unwrap();
        let out = h.evaluate(&a).unwrap().distance(&h.evaluate(&b).unwrap()).unwrap();
        prop_assert!(out <= l * d * (1.0 + 1e-12) + 1e-12);
    }
}

#[test]
fn weights_at_zero_error_and_unit_bound() {
    for p in 1..=8 {
        // w̃ with e = 0 keeps only the l = 1 tail term.
        let expected = 1.0 + (p as f64 - 1.0);
        assert!((weight_w_tilde(p, 1.0, 1.0, 0.0) - expected).abs() < 1e-12);
        assert_eq!(weight_w(p, 1.0), 2f64.powi(p as i32) - 1.0);
    }
}

#[test]
fn polynomial_systems_have_infinite_radius() {
    let mut r = rng(1);
    let h = system(&mut r, 5, 3, false, true);
    assert_eq!(radius_of_convergence(&h, 0..10).unwrap(), f64::INFINITY);
    assert!(radius_of_convergence(&h, 3..3).is_err());
    // Geometric norms 2^p give radius 1/2.
    let norms: Vec<f64> = (1..=40).map(|p| 2f64.powi(p)).collect();
    assert!((root_test_radius(&norms) - 0.5).abs() < 1e-12);
    assert_eq!(root_test_radius(&[0.0, 0.0]), f64::INFINITY);
}

#[test]
fn report_json_has_expected_keys() {
    let h = voltlin::VolterraSystem::identity();
    let report = check_convergence(&h, 1.0, 0..3).unwrap();
    let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    let mut keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    keys.sort();
    assert_eq!(keys, ["argmax_n", "satisfied", "sup_psi", "trace"]);
    assert!(check_convergence(&h, -1.0, 0..3).is_err());
    assert!(check_convergence(&h, f64::NAN, 0..3).is_err());
}
