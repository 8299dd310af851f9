//! The solution `w(λ,x)` with `w(0) = 0, w′(0) = α, w″(0) = β`.

use num_complex::Complex64;

use super::kernels::{kernel_k1, kernel_k1_dx, kernel_k1_dxx};
use super::potential::{SampledPotential, SigmaAccumulator};
use crate::error::{Error, Result};
use crate::quad;
use crate::raygeom::I;
use crate::trig3::{eval_s, reduced_s};

#[derive(Debug, Clone, PartialEq)]
pub struct CauchySolution {
    pub lambda: Complex64,
    pub alpha: f64,
    pub beta: f64,
    pub x: Vec<f64>,
    pub w: Vec<Complex64>,
    pub dw: Vec<Complex64>,
    pub d2w: Vec<Complex64>,
}

impl CauchySolution {
    /// Max over interior nodes of `|i w‴ + q w − λ³ w|`, with `w‴` taken as
    /// the central difference of `w″`, relative to `max(1, |λ|³) ‖w‖∞`.
    pub fn ode_residual(&self, q: &SampledPotential) -> f64 {
        let h = q.step();
        let l3 = self.lambda * self.lambda * self.lambda;
        let scale = self.w.iter().fold(0.0_f64, |m, v| m.max(v.norm())).max(1e-300) * l3.norm().max(1.0);
        (1..self.w.len() - 1)
            .map(|j| {
                let d3 = (self.d2w[j + 1] - self.d2w[j - 1]) / (2.0 * h);
                (I * d3 + self.w[j] * q.values[j] - l3 * self.w[j]).norm()
            })
            .fold(0.0, f64::max)
            / scale
    }

    /// `(w, w′, w″)` at node `j`.
    pub fn at(&self, j: usize) -> [Complex64; 3] {
        [self.w[j], self.dw[j], self.d2w[j]]
    }
}

/// Free terms `α s₁(iλx)/(iλ) + β s₂(iλx)/(iλ)²` and their derivatives,
/// using the Taylor limits at `λ = 0`.
pub fn free_terms(lambda: Complex64, alpha: f64, beta: f64, x: f64) -> [Complex64; 3] {
    let z = I * lambda * x;
    let g1 = reduced_s(1, z) * x;
    let g2 = reduced_s(2, z) * (x * x);
    let s0 = eval_s(0, z);
    [
        g1 * alpha + g2 * beta,
        s0 * alpha + g1 * beta,
        I * lambda * eval_s(2, z) * alpha + s0 * beta,
    ]
}

/// Solves the forward Volterra equation by marching: the kernel and its
/// first derivative vanish on the diagonal, so every node depends only on
/// earlier ones and the discrete fixed point is reached in one sweep.
pub fn cauchy_solve(q: &SampledPotential, lambda: Complex64, alpha: f64, beta: f64) -> Result<CauchySolution> {
    if !lambda.re.is_finite() || !lambda.im.is_finite() || !alpha.is_finite() || !beta.is_finite() {
        return Err(Error::InvalidParameter("non-finite λ or initial data".into()));
    }
    let n = q.intervals();
    let h = q.step();
    let lag: Vec<f64> = (0..=n).map(|m| h * m as f64).collect();
    let k0: Vec<Complex64> = lag.iter().map(|&s| kernel_k1(lambda, s, 0.0)).collect();
    let k1: Vec<Complex64> = lag.iter().map(|&s| kernel_k1_dx(lambda, s, 0.0)).collect();
    let k2: Vec<Complex64> = lag.iter().map(|&s| kernel_k1_dxx(lambda, s, 0.0)).collect();
    let mut w = vec![Complex64::default(); n + 1];
    let mut dw = vec![Complex64::default(); n + 1];
    let mut d2w = vec![Complex64::default(); n + 1];
    let mut g = vec![Complex64::default(); n + 1];
    for j in 0..=n {
        let f = free_terms(lambda, alpha, beta, q.grid[j]);
        let mut acc = [Complex64::default(); 3];
        for m in 0..j {
            let wt = g[m] * quad::composite_weight(j, m, h);
            acc[0] += k0[j - m] * wt;
            acc[1] += k1[j - m] * wt;
            acc[2] += k2[j - m] * wt;
        }
        w[j] = f[0] + I * acc[0];
        dw[j] = f[1] + I * acc[1];
        g[j] = w[j] * q.values[j];
        // The diagonal term of the second derivative uses s₀(0) = 1.
        d2w[j] = f[2] + I * (acc[2] + g[j] * quad::composite_weight(j, j, h));
        if !w[j].re.is_finite() || !w[j].im.is_finite() {
            return Err(Error::NonConvergence { residual: f64::INFINITY, iterations: j });
        }
    }
    Ok(CauchySolution { lambda, alpha, beta, x: q.grid.clone(), w, dw, d2w })
}

/// `p(x) = σ(x)(1 + (x²/2)σ(x) e^{x²σ(x)})`, the growth factor in the
/// estimates of `w − free terms`.
pub fn cauchy_growth(sigma: &SigmaAccumulator, x: f64) -> f64 {
    let s = sigma.at(x);
    s * (1.0 + 0.5 * x * x * s * (x * x * s).exp())
}
