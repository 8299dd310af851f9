mod common;

use common::*;
use num_complex::Complex64;
use proptest::prelude::*;
use trisect::forward::{scattering_data, BoundStateSet, BoundaryData, ScatteringData};
use trisect::riemann::*;
use trisect::volterra::{JostOptions, SampledPotential};

fn data_for(q: &SampledPotential, t_max: f64, m: usize) -> ScatteringData {
    scattering_data(q, &BoundaryData::default(), t_max, m, &BoundStateSet::default(), &JostOptions::default()).unwrap()
}

/// Closed form of `∫₀^T (a + bτ)/(τ − z) dτ`.
fn linear_cauchy(a: Complex64, b: Complex64, t: f64, z: Complex64) -> Complex64 {
    b * t + (a + b * z) * ((t - z) / (-z)).ln()
}

#[test]
fn product_weights_are_exact_for_linear_densities() {
    let grid = CauchyGrid::new(5.0, 60).unwrap();
    let (a, b) = (c(0.3, -0.2), c(0.7, 0.1));
    let phi: Vec<Complex64> = grid.tau.iter().map(|&t| a + b * t).collect();
    for z in [c(1.3, 0.4), c(-2.0, 1.0), c(2.5, -0.01), c(0.0, -3.0)] {
        let got = grid.integral(&phi, z);
        let want = linear_cauchy(a, b, 5.0, z);
        assert!((got - want).norm() < 1e-10, "z = {z}: {got} vs {want}");
    }
}

#[test]
fn principal_value_matches_closed_form() {
    // PV ∫₀^T τ²/(τ − s) dτ = T²/2 + sT + s² ln((T − s)/s).
    let t_max = 3.0;
    let grid = CauchyGrid::new(t_max, 300).unwrap();
    let phi: Vec<f64> = grid.tau.iter().map(|t| t * t).collect();
    let pv = grid.pv_matrix();
    let mut worst = 0.0_f64;
    for (i, &s) in grid.tau.iter().enumerate() {
        if s < 0.2 || s > t_max - 0.2 {
            continue;
        }
        let got: f64 = (0..grid.len()).map(|j| pv[(i, j)] * phi[j]).sum();
        let want = t_max * t_max / 2.0 + s * t_max + s * s * ((t_max - s) / s).ln();
        worst = worst.max((got - want).abs());
    }
    assert!(worst < 1e-3, "worst PV error {worst}");
}

#[test]
fn principal_value_is_the_mean_of_the_boundary_values() {
    let grid = CauchyGrid::new(4.0, 400).unwrap();
    let phi: Vec<Complex64> = grid.tau.iter().map(|&t| c((0.7 * t).sin(), (-t).exp())).collect();
    let pv = grid.pv_matrix();
    let i = 150;
    let s = grid.tau[i];
    let eps = 1e-7;
    let up = grid.integral(&phi, c(s, eps));
    let down = grid.integral(&phi, c(s, -eps));
    let mean = (up + down) * 0.5;
    let pvi: Complex64 = (0..grid.len()).map(|j| phi[j] * pv[(i, j)]).sum();
    assert!((mean - pvi).norm() < 5e-3, "{mean} vs {pvi}");
    // Plemelj: the jump is 2πi φ(s).
    let jump = up - down;
    let want = Complex64::i() * std::f64::consts::TAU * phi[i];
    assert!((jump - want).norm() < 1e-4, "{jump} vs {want}");
}

#[test]
fn reduced_canonical_function_is_trivial_for_zero_data() {
    let data = data_for(&SampledPotential::zero(4.0, 200), 8.0, 80);
    for x in [0.0, 0.7] {
        let chi = CanonicalSolution::new(&data, x, ChiMode::Reduced).unwrap();
        assert_eq!(chi.winding, 0);
        for l in [c(1.0, 1.0), c(-2.0, 0.5), c(0.3, -4.0)] {
            assert!((chi.eval(l).unwrap() - 1.0).norm() < 1e-10);
        }
    }
}

#[test]
fn canonical_function_jump_matches_its_log_density() {
    let data = data_for(&small_compact(200), 8.0, 160);
    let chi = CanonicalSolution::new(&data, 0.3, ChiMode::Reduced).unwrap();
    let k = 60;
    let (left, right) = chi.side_values(chi.tau[k], 1e-7).unwrap();
    let ratio = left / right;
    let want = chi.log[k].exp();
    let err = (ratio - want).norm().min((ratio - 1.0 / want).norm());
    assert!(err < 1e-3, "jump {ratio} vs e^log {want}");
}

#[test]
fn canonical_function_tends_to_one_far_away() {
    let data = data_for(&small_compact(200), 8.0, 80);
    let chi = CanonicalSolution::new(&data, 0.2, ChiMode::Reduced).unwrap();
    let near = (chi.eval(c(0.0, 50.0)).unwrap() - 1.0).norm();
    let far = (chi.eval(c(0.0, 5000.0)).unwrap() - 1.0).norm();
    assert!(far < near && far < 1e-3, "near {near}, far {far}");
}

#[test]
fn canonical_function_rejects_points_on_the_contour() {
    let data = data_for(&small_compact(200), 8.0, 40);
    let chi = CanonicalSolution::new(&data, 0.0, ChiMode::Reduced).unwrap();
    assert!(chi.eval(c(0.0, -2.0)).is_err());
}

#[test]
fn jump_coefficients_are_reciprocal() {
    let data = data_for(&small_compact(200), 8.0, 80);
    for mode in [ChiMode::Reduced, ChiMode::Printed] {
        let j = jump_data(&data, 0.4, mode).unwrap();
        assert!(j.q_product_residual() < 1e-10, "{mode:?}: {}", j.q_product_residual());
    }
}

#[test]
fn jump_relations_hold_for_the_small_potential() {
    let q = small_compact(400);
    for index in [0, 40, 120] {
        let ev = JumpEvaluator::new(&q, BoundaryData::default(), JostOptions::default(), index);
        let report = jump_residuals(&ev, &[0.5, 1.5, 3.0]).unwrap();
        assert!(report.max() < 1e-5, "{report:?}");
    }
}

fn with_synthetic_bound_state(mut data: ScatteringData) -> ScatteringData {
    data.kappas = vec![1.3];
    data.b = vec![[0.2, -0.1]];
    data.b_tilde = vec![[-0.15, 0.05]];
    data
}

#[test]
fn elimination_agrees_with_monolithic_solve() {
    let data = with_synthetic_bound_state(data_for(&small_compact(200), 6.0, 60));
    let sys = assemble_system(&data, 0.3, ChiMode::Reduced).unwrap();
    assert_eq!(sys.n(), 1);
    let mono = solve_system(&sys, &SolveOptions { path: SolvePath::Monolithic, ..Default::default() }).unwrap();
    let elim = solve_system(&sys, &SolveOptions { path: SolvePath::Elimination, ..Default::default() }).unwrap();
    let diff = mono
        .phi2
        .iter()
        .chain(&mono.phi3)
        .chain(&mono.r)
        .chain(&mono.r_tilde)
        .zip(elim.phi2.iter().chain(&elim.phi3).chain(&elim.r).chain(&elim.r_tilde))
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    assert!(diff < 1e-8, "paths differ by {diff}");
    assert!(mono.residual < 1e-8 && elim.residual < 1e-8);
}

#[test]
fn reconstruction_requires_a_point_in_the_upper_sector() {
    let data = data_for(&small_compact(200), 6.0, 40);
    let sys = assemble_system(&data, 0.1, ChiMode::Reduced).unwrap();
    let sol = solve_system(&sys, &SolveOptions::default()).unwrap();
    assert!(reconstruct_psi1(&sys, &sol, c(0.0, 5.0)).is_ok());
    assert!(reconstruct_psi1(&sys, &sol, c(0.0, -5.0)).is_err());
}

#[test]
fn unit_density_leaves_a_residual_growing_with_the_cutoff() {
    // For q ≡ 0 the constant ψ ≡ 1 should solve the closed system; the two
    // Cauchy terms grow like ζ₃ ln T and −ζ₂ ln T and do not cancel.
    let q = SampledPotential::zero(4.0, 200);
    let mut prev = 0.0;
    for (t, m) in [(5.0, 50), (20.0, 200), (80.0, 800)] {
        let sys = assemble_system(&data_for(&q, t, m), 0.0, ChiMode::Reduced).unwrap();
        let ones = nalgebra::DVector::from_element(sys.matrix.ncols(), c(1.0, 0.0));
        let r = (&sys.matrix * ones - &sys.rhs).camax();
        assert!(r > prev, "residual {r} at T = {t}");
        prev = r;
    }
    assert!(prev > 0.5);
}

#[test]
fn extrapolation_is_exact_for_polynomials_in_the_reciprocal() {
    let ls: Vec<Complex64> = [4.0, 6.0, 8.0, 10.0].iter().map(|r| c(0.0, *r)).collect();
    let vals: Vec<Complex64> = ls.iter().map(|l| c(0.5, 0.2) + c(1.0, -1.0) / l + c(0.0, 3.0) / (l * l * l)).collect();
    assert!((extrapolate(&ls, &vals) - c(0.5, 0.2)).norm() < 1e-12);
}

#[test]
fn smoothed_derivative_of_a_quadratic_is_exact() {
    let h = 0.01;
    let f: Vec<f64> = (0..100).map(|i| {
        let x = i as f64 * h;
        1.0 - 2.0 * x + 0.5 * x * x
    }).collect();
    let d = smoothed_derivative(&f, h);
    for (i, v) in d.iter().enumerate() {
        assert!((v - (-2.0 + i as f64 * h)).abs() < 1e-9, "{i}: {v}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cauchy_weights_reproduce_linear_densities(re in -3.0..3.0_f64, im in prop_oneof![-3.0..-0.05_f64, 0.05..3.0_f64]) {
        let grid = CauchyGrid::new(4.0, 40).unwrap();
        let phi: Vec<Complex64> = grid.tau.iter().map(|&t| c(1.0 - 0.2 * t, 0.1 * t)).collect();
        let z = c(re, im);
        let want = linear_cauchy(c(1.0, 0.0), c(-0.2, 0.1), 4.0, z);
        prop_assert!((grid.integral(&phi, z) - want).norm() < 1e-9);
    }
}
