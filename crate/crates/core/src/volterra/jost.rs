//! Jost solutions `e_p(λ,x)` normalised to `e^{iλζ_p x}` at infinity.
//!
//! The iteration runs on `ψ_p = e_p e^{−iλζ_p x}`, which satisfies
//! `ψ = 1 − i∫_x^∞ K̃(t−x) q ψ dt` with
//! `K̃(s) = (1/(3(iλ)²)) Σ_k ζ_k e^{μ_k s}` and `μ_k = iλ(ζ_p − ζ_k)`.
//! For `|λ|X` of order one or larger the three integrals
//! `I_k(x) = ∫_x^X e^{μ_k(t−x)} qψ dt` are swept backwards in `O(N)` with
//! exponential product weights; for small `|λ|X` the lag kernel is applied
//! directly through its cancellation-free Taylor form.

use num_complex::Complex64;

use super::kernels::{kernel_k1, kernel_k1_dx, kernel_k1_dxx};
use super::potential::SampledPotential;
use crate::error::{Error, Result};
use crate::quad;
use crate::raygeom::{zeta, I, SQRT3, ZETA};

/// Quadrature used for the integral operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JostMethod {
    /// Direct below `|λ| X_max < 1`, exponential sweep above.
    Auto,
    /// Backward sweep with cubic exponential product weights, `O(N)`.
    Exponential,
    /// Composite Simpson on the lag kernel, `O(N²)`.
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JostOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub method: JostMethod,
}

impl Default for JostOptions {
    fn default() -> Self {
        Self { tol: 1e-10, max_iter: 200, method: JostMethod::Auto }
    }
}

/// `e_p(λ,·)` and its first two derivatives on the potential grid.
#[derive(Debug, Clone, PartialEq)]
pub struct JostSolution {
    pub lambda: Complex64,
    pub p: usize,
    pub x: Vec<f64>,
    pub e: Vec<Complex64>,
    pub de: Vec<Complex64>,
    pub d2e: Vec<Complex64>,
    /// `ψ_p = e_p e^{−iλζ_p x}`.
    pub psi: Vec<Complex64>,
    /// `e′_p e^{−iλζ_p x}`.
    pub dpsi: Vec<Complex64>,
    /// `e″_p e^{−iλζ_p x}`.
    pub d2psi: Vec<Complex64>,
    pub iterations: usize,
    /// Sup-norm change of the last Neumann step, relative to `max(1, ‖ψ‖∞)`.
    pub residual: f64,
    /// Estimated effect of the potential tail beyond `X_max`.
    pub tail_estimate: f64,
    /// True when `|λ| ≥ a/3` was admitted because `q` has compact support.
    pub extended_domain: bool,
}

impl JostSolution {
    /// `(e_p, e′_p, e″_p)` at `x = 0`.
    pub fn at_zero(&self) -> [Complex64; 3] {
        [self.e[0], self.de[0], self.d2e[0]]
    }

    /// `(e_p, e′_p, e″_p)` at node `j`.
    pub fn at(&self, j: usize) -> [Complex64; 3] {
        [self.e[j], self.de[j], self.d2e[j]]
    }
}

/// Rejects `λ` outside `|λ| < a/3` unless `q` has compact support.
pub fn check_domain(q: &SampledPotential, lambda: Complex64) -> Result<bool> {
    let limit = q.a / 3.0;
    let r = lambda.norm();
    if r < limit {
        Ok(false)
    } else if q.is_compact() {
        Ok(true)
    } else {
        Err(Error::DomainViolation { modulus: r, limit })
    }
}

/// Solves the Jost integral equation for index `p` by Neumann iteration.
pub fn jost_solve(q: &SampledPotential, lambda: Complex64, p: usize, opts: &JostOptions) -> Result<JostSolution> {
    let zp = zeta(p)?;
    if !lambda.re.is_finite() || !lambda.im.is_finite() {
        return Err(Error::InvalidParameter(format!("λ = {lambda} is not finite")));
    }
    let extended_domain = check_domain(q, lambda)?;
    let n = q.intervals();
    let il = I * lambda * zp;
    let free = [Complex64::new(1.0, 0.0), il, il * il];
    let use_direct = match opts.method {
        JostMethod::Auto => lambda.norm() * q.xmax() < 1.0 || n < 3,
        JostMethod::Exponential => lambda == Complex64::new(0.0, 0.0) || n < 3,
        JostMethod::Direct => true,
    };
    let op: Box<dyn Fn(&[Complex64]) -> [Vec<Complex64>; 3]> = if use_direct {
        let d = DirectOperator::new(q, lambda, zp);
        Box::new(move |g| d.apply(g))
    } else {
        let e = ExpOperator::new(q, lambda, zp);
        Box::new(move |g| e.apply(g))
    };

    let mut psi = vec![Complex64::new(1.0, 0.0); n + 1];
    let mut iterations = 0;
    let mut residual = f64::INFINITY;
    while iterations < opts.max_iter {
        iterations += 1;
        let g: Vec<Complex64> = psi.iter().zip(&q.values).map(|(v, &qv)| v * qv).collect();
        let next: Vec<Complex64> = op(&g)[0].iter().map(|v| free[0] - I * v).collect();
        let scale = next.iter().fold(1.0_f64, |m, v| m.max(v.norm()));
        residual = next.iter().zip(&psi).fold(0.0_f64, |m, (a, b)| m.max((a - b).norm())) / scale;
        psi = next;
        if !residual.is_finite() {
            break;
        }
        if residual <= opts.tol {
            break;
        }
    }
    if !(residual <= opts.tol) {
        return Err(Error::NonConvergence { residual, iterations });
    }
    // One more application yields the derivatives consistent with the final ψ.
    let g: Vec<Complex64> = psi.iter().zip(&q.values).map(|(v, &qv)| v * qv).collect();
    let [_, p1, p2] = op(&g);
    let dpsi: Vec<Complex64> = p1.iter().map(|v| free[1] - I * v).collect();
    let d2psi: Vec<Complex64> = p2.iter().map(|v| free[2] - I * v).collect();

    let phase: Vec<Complex64> = q.grid.iter().map(|&x| (il * x).exp()).collect();
    let mul = |v: &[Complex64]| v.iter().zip(&phase).map(|(a, b)| a * b).collect::<Vec<_>>();
    let tail_estimate = tail_estimate(q, lambda);
    Ok(JostSolution {
        lambda,
        p,
        x: q.grid.clone(),
        e: mul(&psi),
        de: mul(&dpsi),
        d2e: mul(&d2psi),
        psi,
        dpsi,
        d2psi,
        iterations,
        residual,
        tail_estimate,
        extended_domain,
    })
}

/// Samples of `ψ_p(λ,·)`.
pub fn psi(q: &SampledPotential, lambda: Complex64, p: usize, opts: &JostOptions) -> Result<Vec<Complex64>> {
    Ok(jost_solve(q, lambda, p, opts)?.psi)
}

/// All three Jost solutions at one `λ`.
pub fn jost_triple(q: &SampledPotential, lambda: Complex64, opts: &JostOptions) -> Result<[JostSolution; 3]> {
    Ok([jost_solve(q, lambda, 1, opts)?, jost_solve(q, lambda, 2, opts)?, jost_solve(q, lambda, 3, opts)?])
}

/// Model bound for the truncated tail: `|q(X)| e^{−a(t−X)}` beyond the grid
/// against a kernel growing at most like `e^{√3|λ|(t−x)}`.
fn tail_estimate(q: &SampledPotential, lambda: Complex64) -> f64 {
    if q.is_compact() {
        return 0.0;
    }
    let qx = q.values[q.values.len() - 1].abs();
    let rate = q.a - SQRT3 * lambda.norm();
    if rate <= 0.0 {
        return f64::INFINITY;
    }
    qx * (1.0 / rate.powi(3)).min(1.0 / (lambda.norm_sqr() * rate))
}

/// Backward sweep of the three exponential integrals.
struct ExpOperator {
    n: usize,
    /// Per `k`: decay factor `e^{μ_k h}` and cubic weights per start offset.
    factor: [Complex64; 3],
    weights: [[[Complex64; 4]; 3]; 3],
    /// Coefficients turning `(I₁, I₂, I₃)` into the three outputs.
    coef: [[Complex64; 3]; 3],
}

impl ExpOperator {
    fn new(q: &SampledPotential, lambda: Complex64, zp: Complex64) -> Self {
        let h = q.step();
        let il = I * lambda;
        let mu: [Complex64; 3] = std::array::from_fn(|k| il * (zp - ZETA[k]));
        let factor = std::array::from_fn(|k| (mu[k] * h).exp());
        let weights = std::array::from_fn(|k| std::array::from_fn(|s| quad::exp_weights_cubic(mu[k], h, -(s as i32))));
        let coef = [
            std::array::from_fn(|k| ZETA[k] / (3.0 * il * il)),
            std::array::from_fn(|k| ZETA[k] * ZETA[k] / (3.0 * il)),
            [Complex64::new(1.0 / 3.0, 0.0); 3],
        ];
        Self { n: q.intervals(), factor, weights, coef }
    }

    fn apply(&self, g: &[Complex64]) -> [Vec<Complex64>; 3] {
        let n = self.n;
        let mut out = [vec![Complex64::default(); n + 1], vec![Complex64::default(); n + 1], vec![Complex64::default(); n + 1]];
        let mut acc = [Complex64::default(); 3];
        for j in (0..n).rev() {
            // Cubic through nodes j−1..j+2 where available.
            let back = if j == 0 { 0 } else if j + 2 <= n { 1 } else { 2 };
            let base = j - back;
            for k in 0..3 {
                let w = &self.weights[k][back];
                let local: Complex64 = (0..4).map(|i| w[i] * g[base + i]).sum();
                acc[k] = local + self.factor[k] * acc[k];
            }
            for (o, c) in out.iter_mut().zip(&self.coef) {
                o[j] = c[0] * acc[0] + c[1] * acc[1] + c[2] * acc[2];
            }
        }
        out
    }
}

/// Lag-kernel quadrature `Σ_m w_m K(s_m) g(x_j + s_m)`.
struct DirectOperator {
    n: usize,
    h: f64,
    kernels: [Vec<Complex64>; 3],
}

impl DirectOperator {
    fn new(q: &SampledPotential, lambda: Complex64, zp: Complex64) -> Self {
        let n = q.intervals();
        let h = q.step();
        let lag: Vec<f64> = (0..=n).map(|m| h * m as f64).collect();
        let ph: Vec<Complex64> = lag.iter().map(|&s| (I * lambda * zp * s).exp()).collect();
        let kernels = [
            lag.iter().zip(&ph).map(|(&s, e)| kernel_k1(lambda, 0.0, s) * e).collect(),
            lag.iter().zip(&ph).map(|(&s, e)| kernel_k1_dx(lambda, 0.0, s) * e).collect(),
            lag.iter().zip(&ph).map(|(&s, e)| kernel_k1_dxx(lambda, 0.0, s) * e).collect(),
        ];
        Self { n, h, kernels }
    }

    fn apply(&self, g: &[Complex64]) -> [Vec<Complex64>; 3] {
        let n = self.n;
        let mut out = [vec![Complex64::default(); n + 1], vec![Complex64::default(); n + 1], vec![Complex64::default(); n + 1]];
        for j in 0..n {
            let len = n - j;
            let mut acc = [Complex64::default(); 3];
            for m in 0..=len {
                let w = quad::composite_weight(len, m, self.h);
                let gm = g[j + m] * w;
                for (a, k) in acc.iter_mut().zip(&self.kernels) {
                    *a += k[m] * gm;
                }
            }
            for (o, a) in out.iter_mut().zip(acc) {
                o[j] = a;
            }
        }
        out
    }
}
