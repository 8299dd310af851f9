mod common;

use common::{bump, c, random_in_disc, rng, small_compact, small_truncated};
use num_complex::Complex64;
use trisect::forward::*;
use trisect::raygeom::{Z2, Z3};
use trisect::volterra::{JostOptions, SampledPotential};
use trisect::Error;

fn opts() -> JostOptions {
    JostOptions::default()
}

#[test]
fn zero_potential_coefficients_match_closed_forms() {
    let q = SampledPotential::zero(4.0, 200);
    let bd = BoundaryData::default();
    for lam in [c(0.7, 0.2), c(-1.1, 0.5), c(0.3, -0.9), c(2.0, 0.0)] {
        let b = expansion_coefficients(&q, lam, &bd, &opts()).unwrap();
        assert!((b[0] - (-Complex64::i() / (3.0 * lam))).norm() < 1e-12);
        let s = scattering_coefficients(&q, lam, &bd, &opts()).unwrap();
        assert!((s.coeffs.s2 - Z3).norm() < 1e-12);
        assert!((s.coeffs.s3 - Z2).norm() < 1e-12);
        assert!((s.coeffs.c1 - 3.0 * Complex64::i() * lam).norm() < 1e-11);
        let sc = scattering_coefficients(&q, lam.conj(), &bd, &opts()).unwrap();
        assert!(unitarity_residual(&s.coeffs, &sc.coeffs, lam).unwrap() < 1e-11);
    }
}

#[test]
fn lambda_zero_is_rejected() {
    let q = small_truncated(100);
    let bd = BoundaryData::default();
    assert!(matches!(expansion_coefficients(&q, c(0.0, 0.0), &bd, &opts()), Err(Error::InvalidParameter(_))));
}

#[test]
fn boundary_data_requires_unimodular_theta() {
    assert!(BoundaryData::new(1.0, 0.0, c(0.5, 0.0)).is_err());
    let bd = BoundaryData::with_theta_arg(2.0, 0.5, 0.7).unwrap();
    assert!((bd.theta * bd.c - 2.0).norm() < 1e-14);
}

#[test]
fn expansion_reproduces_cauchy_solution() {
    let q = small_compact(400);
    for (alpha, beta) in [(1.0, 0.0), (0.6, -1.3)] {
        let bd = BoundaryData::new(alpha, beta, c(1.0, 0.0)).unwrap();
        for lam in [c(0.8, 0.3), c(-0.5, -0.6), c(1.4, 0.1)] {
            let r = expansion_residual(&q, lam, &bd, &opts()).unwrap();
            assert!(r < 1e-7, "λ = {lam}: residual {r}");
        }
    }
}

#[test]
fn expansion_coefficients_rotate_cyclically() {
    let q = bump(400);
    let bd = BoundaryData::new(1.0, 0.4, c(1.0, 0.0)).unwrap();
    let lam = c(0.9, 0.25);
    let b = expansion_coefficients(&q, lam, &bd, &opts()).unwrap();
    let br = expansion_coefficients(&q, lam * Z2, &bd, &opts()).unwrap();
    for p in 0..3 {
        assert!((br[p] - b[(p + 1) % 3]).norm() < 1e-8 * b[p].norm().max(1.0));
    }
}

#[test]
fn scattering_identities_hold_on_random_points() {
    let q = small_truncated(400);
    let bd = BoundaryData::with_theta_arg(1.0, 0.3, 0.4).unwrap();
    let mut g = rng(31);
    for _ in 0..20 {
        let lam = random_in_disc(&mut g, 1.2);
        let s = |l: Complex64| scattering_coefficients(&q, l, &bd, &opts()).unwrap();
        let (a, a2, a3, ac) = (s(lam), s(lam * Z2), s(lam * Z3), s(lam.conj()));
        assert!((a.coeffs.s2 * a2.coeffs.s2 * a3.coeffs.s2 - 1.0).norm() < 1e-8);
        assert!((a3.coeffs.s2 * a.coeffs.s3 - 1.0).norm() < 1e-8);
        assert!(unitarity_residual(&a.coeffs, &ac.coeffs, lam).unwrap() < 1e-6);
        assert!(a.representation_gap() < 1e-6, "gap {}", a.representation_gap());
        for r in a.wronskian_system_residuals() {
            assert!(r < 1e-6, "row residual {r}");
        }
    }
}

#[test]
fn unitarity_residual_is_rotation_invariant() {
    let q = bump(400);
    let bd = BoundaryData::default();
    let lam = c(0.7, -0.4);
    let res = |l: Complex64| {
        let a = coefficients_at(&q, l, &bd, &opts()).unwrap();
        let b = coefficients_at(&q, l.conj(), &bd, &opts()).unwrap();
        unitarity_residual(&a, &b, l).unwrap()
    };
    assert!((res(lam) - res(lam * Z2)).abs() < 1e-8);
}

#[test]
fn no_bound_states_for_zero_or_small_potential() {
    let bd = BoundaryData::default();
    let zero = SampledPotential::zero(4.0, 200);
    let set = find_bound_states(&zero, &bd, 1.0, &opts(), &BoundStateOptions { scan_points: 50, ..Default::default() }).unwrap();
    assert!(set.kappas.is_empty() && set.anomalies.is_empty());
    let q = small_truncated(200);
    let set = find_bound_states(&q, &bd, 1.2, &opts(), &BoundStateOptions { scan_points: 60, ..Default::default() }).unwrap();
    assert!(set.kappas.is_empty());
}

#[test]
fn data_round_trips_through_json_and_validates() {
    let q = small_compact(200);
    let bd = BoundaryData::default();
    let data = scattering_data(&q, &bd, 6.0, 24, &BoundStateSet::default(), &opts()).unwrap();
    let back = ScatteringData::from_json(&data.to_json().unwrap()).unwrap();
    assert_eq!(data, back);
    let report = validate(&data, &ValidationOptions::default()).unwrap();
    assert!(report.unitarity_residual < 1e-6, "{report:?}");
}

#[test]
fn validator_names_violated_condition() {
    let q = small_compact(200);
    let bd = BoundaryData::default();
    let mut data = scattering_data(&q, &bd, 3.0, 10, &BoundStateSet::default(), &opts()).unwrap();
    let good = data.clone();
    data.kappas = vec![0.5];
    data.b = vec![[0.0, 0.0]];
    data.b_tilde = vec![[1.0, 0.0]];
    match validate(&data, &ValidationOptions::default()) {
        Err(Error::Validation { condition, .. }) => assert_eq!(condition, CONDITION_NORMING),
        other => panic!("{other:?}"),
    }
    let mut data = good.clone();
    let r = &mut data.rays[0][5];
    r.c1_re *= 1.01;
    match validate(&data, &ValidationOptions::default()) {
        Err(Error::Validation { condition, .. }) => assert_eq!(condition, CONDITION_UNITARITY),
        other => panic!("{other:?}"),
    }
}
