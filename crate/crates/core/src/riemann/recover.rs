//! `ψ₁(λ,x)` from the solved system and the potential from its large-`λ`
//! behaviour.

use num_complex::Complex64;
use rayon::prelude::*;

use super::chi::ChiMode;
use super::system::{assemble_system, solve_system, InverseSolution, SingularSystem, SolveOptions};
use crate::error::{Error, Result};
use crate::forward::ScatteringData;
use crate::raygeom::{I, Z2, Z3};

const TWO_PI_I: Complex64 = Complex64::new(0.0, std::f64::consts::TAU);

/// `ψ₁(λ,x) = χ(λ)[1 + b(λ) + (ζ₂/2πi)∫φ₃(τ)/(τ−iζ₃λ)dτ
/// − (ζ₃/2πi)∫φ₂(τ)/(τ−iζ₂λ)dτ]` for `λ` inside `Ω₂`.
pub fn reconstruct_psi1(sys: &SingularSystem, sol: &InverseSolution, lambda: Complex64) -> Result<Complex64> {
    if !crate::raygeom::Sector::omega(2)?.contains(lambda) {
        return Err(Error::InvalidParameter(format!("λ = {lambda} is not inside Ω₂")));
    }
    let grid = &sys.jumps.grid;
    let b = sys.rational.b(&sol.r, &sol.r_tilde, lambda);
    let a = grid.integral(&sol.phi3, I * Z3 * lambda);
    let c = grid.integral(&sol.phi2, I * Z2 * lambda);
    Ok(sys.jumps.chi.eval(lambda)? * (1.0 + b + Z2 / TWO_PI_I * a - Z3 / TWO_PI_I * c))
}

/// `3λ²(ψ₁ − 1)/i`.
pub fn potential_estimate(psi1: Complex64, lambda: Complex64) -> Complex64 {
    3.0 * lambda * lambda * (psi1 - 1.0) / I
}

/// Value at `1/λ = 0` of the polynomial in `1/λ` of degree `k − 1` through
/// `k` samples.
pub fn extrapolate(lambdas: &[Complex64], values: &[Complex64]) -> Complex64 {
    let u: Vec<Complex64> = lambdas.iter().map(|l| 1.0 / l).collect();
    (0..u.len())
        .map(|i| {
            let w: Complex64 = (0..u.len()).filter(|&j| j != i).map(|j| u[j] / (u[j] - u[i])).product();
            w * values[i]
        })
        .sum()
}

/// Settings for [`recover_potential`].
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryOptions {
    pub chi_mode: ChiMode,
    pub solve: SolveOptions,
    /// Probe points inside `Ω₂`; at least four.
    pub probes: Vec<Complex64>,
    /// Relative disagreement allowed between the two extrapolations.
    pub extrapolation_tol: f64,
    /// Reject the recovery when the disagreement exceeds the tolerance.
    pub check_extrapolation: bool,
}

impl Default for RecoveryOptions {
    fn default() -> Self {
        Self {
            chi_mode: ChiMode::Reduced,
            solve: SolveOptions::default(),
            probes: [4.0, 6.0, 8.0, 10.0].iter().map(|r| I * *r).collect(),
            extrapolation_tol: 0.5,
            check_extrapolation: true,
        }
    }
}

/// Per-`x` diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct PointDiagnostics {
    pub x: f64,
    pub residual: f64,
    pub pivot_ratio: f64,
    pub q_product_residual: f64,
    pub winding: i64,
    /// `3λ²(ψ₁−1)/i` at each probe.
    pub probe_values: Vec<Complex64>,
    /// Difference of the extrapolations from the first and last probe sets.
    pub spread: f64,
}

/// Recovered `P(x) = ∫_x^∞ q` and `q = −P′`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveredPotential {
    pub x: Vec<f64>,
    /// Complex `P`; the imaginary part measures inconsistency.
    pub p: Vec<Complex64>,
    pub q: Vec<f64>,
    pub q_imag: Vec<f64>,
    pub diagnostics: Vec<PointDiagnostics>,
}

/// Solves the system at one `x` and extrapolates `P(x)`.
pub fn recover_at(data: &ScatteringData, x: f64, opts: &RecoveryOptions) -> Result<(Complex64, PointDiagnostics)> {
    if opts.probes.len() < 4 {
        return Err(Error::InvalidParameter("at least four probe points are needed".into()));
    }
    let sys = assemble_system(data, x, opts.chi_mode)?;
    let sol = solve_system(&sys, &opts.solve)?;
    let vals: Vec<Complex64> = opts
        .probes
        .iter()
        .map(|&l| reconstruct_psi1(&sys, &sol, l).map(|p| potential_estimate(p, l)))
        .collect::<Result<_>>()?;
    let k = vals.len();
    let first = extrapolate(&opts.probes[..k - 1], &vals[..k - 1]);
    let last = extrapolate(&opts.probes[1..], &vals[1..]);
    let spread = (first - last).norm();
    let diag = PointDiagnostics {
        x,
        residual: sol.residual,
        pivot_ratio: sol.pivot_ratio,
        q_product_residual: sys.jumps.q_product_residual(),
        winding: sys.jumps.chi.winding,
        probe_values: vals,
        spread,
    };
    Ok((last, diag))
}

/// `f′` at every node from local least-squares quadratics on five points.
pub fn smoothed_derivative(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    if n < 5 {
        return (0..n)
            .map(|i| {
                let (a, b) = if i == 0 { (0, 1.min(n - 1)) } else if i == n - 1 { (i - 1, i) } else { (i - 1, i + 1) };
                if a == b { 0.0 } else { (f[b] - f[a]) / (h * (b - a) as f64) }
            })
            .collect();
    }
    (0..n)
        .map(|i| {
            let start = i.saturating_sub(2).min(n - 5);
            // Fit c0 + c1 s + c2 s² with s the offset from node i, return c1.
            let s: Vec<f64> = (start..start + 5).map(|j| j as f64 - i as f64).collect();
            let mut m = [[0.0; 3]; 3];
            let mut r = [0.0; 3];
            for (k, &sk) in s.iter().enumerate() {
                let p = [1.0, sk, sk * sk];
                for a in 0..3 {
                    r[a] += p[a] * f[start + k];
                    for b in 0..3 {
                        m[a][b] += p[a] * p[b];
                    }
                }
            }
            let mat = nalgebra::Matrix3::from_fn(|a, b| m[a][b]);
            let sol = mat.lu().solve(&nalgebra::Vector3::from(r)).unwrap_or_default();
            sol[1] / h
        })
        .collect()
}

/// Recovers `P` at every `x` in parallel and differentiates it.
pub fn recover_potential(data: &ScatteringData, x: &[f64], opts: &RecoveryOptions) -> Result<RecoveredPotential> {
    if x.len() < 2 {
        return Err(Error::InvalidParameter("need at least two x nodes".into()));
    }
    let h = x[1] - x[0];
    if x.windows(2).any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h.abs().max(1.0)) || !(h > 0.0) {
        return Err(Error::GridMismatch("x grid must be uniform and ascending".into()));
    }
    let results: Vec<(Complex64, PointDiagnostics)> = x.par_iter().map(|&xi| recover_at(data, xi, opts)).collect::<Result<_>>()?;
    let p: Vec<Complex64> = results.iter().map(|r| r.0).collect();
    let diagnostics: Vec<PointDiagnostics> = results.into_iter().map(|r| r.1).collect();
    let scale = p.iter().fold(0.0_f64, |a, v| a.max(v.norm())).max(1e-12);
    if let Some(d) = diagnostics.iter().find(|d| opts.check_extrapolation && d.spread > opts.extrapolation_tol * scale) {
        return Err(Error::ExtrapolationUnstable { spread: d.spread, tol: opts.extrapolation_tol * scale });
    }
    let re: Vec<f64> = p.iter().map(|v| v.re).collect();
    let im: Vec<f64> = p.iter().map(|v| v.im).collect();
    let q = smoothed_derivative(&re, h).iter().map(|d| -d).collect();
    let q_imag = smoothed_derivative(&im, h).iter().map(|d| -d).collect();
    Ok(RecoveredPotential { x: x.to_vec(), p, q, q_imag, diagnostics })
}
