//! The kernel `K₁(λ,x,t) = s₂(iλ(x−t))/(iλ)²`, its iterates and their bounds.

use num_complex::Complex64;

use super::potential::SampledPotential;
use crate::quad;
use crate::raygeom::I;
use crate::trig3::{eval_s, growth_bound, reduced_s};

/// `K₁(λ,x,t)`; at `λ = 0` this is `(t−x)²/2`.
pub fn kernel_k1(lambda: Complex64, x: f64, t: f64) -> Complex64 {
    let s = t - x;
    reduced_s(2, -I * lambda * s) * (s * s)
}

/// `∂K₁/∂x = s₁(iλ(x−t))/(iλ)`.
pub fn kernel_k1_dx(lambda: Complex64, x: f64, t: f64) -> Complex64 {
    let s = t - x;
    -reduced_s(1, -I * lambda * s) * s
}

/// `∂²K₁/∂x² = s₀(iλ(x−t))`.
pub fn kernel_k1_dxx(lambda: Complex64, x: f64, t: f64) -> Complex64 {
    eval_s(0, I * lambda * (x - t))
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Right-hand side of the bound on `|K_n(λ,x,t)|` given `σ(t)`.
pub fn kernel_bound(n: usize, lambda: Complex64, x: f64, t: f64, sigma_t: f64) -> f64 {
    assert!(n >= 1, "kernel order starts at 1");
    let s = t - x;
    let tail = sigma_t.powi(n as i32 - 1) / factorial(n - 1);
    if lambda == Complex64::new(0.0, 0.0) {
        (0.5 * s * s).powi(n as i32) / (n as f64).powi(2 * n as i32) * tail
    } else {
        growth_bound(lambda * s) / lambda.norm().powi(2 * n as i32) * tail
    }
}

/// Right-hand side of the bound on the resolvent `|N(λ,x,t)|`.
pub fn resolvent_bound(lambda: Complex64, x: f64, t: f64, sigma_t: f64) -> f64 {
    let s = t - x;
    if lambda == Complex64::new(0.0, 0.0) {
        let r = 0.5 * s * s * sigma_t;
        let mut sum = 0.0;
        let mut rn = 1.0;
        for n in 0..60 {
            sum += rn / ((n + 1) as f64).powi(2 * (n as i32 + 1)) / factorial(n);
            rn *= r;
        }
        0.5 * s * s * sum
    } else {
        let l2 = lambda.norm_sqr();
        growth_bound(lambda * s) / l2 * (sigma_t / l2).exp()
    }
}

/// `K₁(x,t), …, K_{n_max}(x,t)` from the recursion
/// `K_{n+1}(x,t) = ∫_x^t K_n(x,s) q(s) K₁(s,t) ds`, evaluated on `m`
/// equal subintervals of `[x, t]` with the composite Simpson/3-8 rule.
pub fn iterated_kernels(
    q: &SampledPotential,
    lambda: Complex64,
    x: f64,
    t: f64,
    n_max: usize,
    m: usize,
) -> Vec<Complex64> {
    let m = m.max(2);
    let h = (t - x) / m as f64;
    let nodes: Vec<f64> = (0..=m).map(|i| x + h * i as f64).collect();
    let qs: Vec<f64> = nodes.iter().map(|&s| q.value_at(s)).collect();
    // k1[i][j] = K₁(s_i, s_j) for i ≤ j.
    let k1: Vec<Vec<Complex64>> =
        (0..=m).map(|i| (0..=m).map(|j| if j >= i { kernel_k1(lambda, nodes[i], nodes[j]) } else { Complex64::new(0.0, 0.0) }).collect()).collect();
    let mut current: Vec<Complex64> = (0..=m).map(|j| k1[0][j]).collect();
    let mut out = vec![current[m]];
    for _ in 1..n_max {
        let next: Vec<Complex64> = (0..=m)
            .map(|j| (0..=j).map(|i| current[i] * qs[i] * k1[i][j] * quad::composite_weight(j, i, h)).sum())
            .collect();
        out.push(next[m]);
        current = next;
    }
    out
}

/// The resolvent `N(λ,x,t) = Σ_{n≥1} (−i)^n K_n(λ,x,t)` summed until the
/// terms fall below `1e-16` relative to the partial sum.
pub fn resolvent(q: &SampledPotential, lambda: Complex64, x: f64, t: f64, m: usize) -> Complex64 {
    let ks = iterated_kernels(q, lambda, x, t, 40, m);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut phase = -I;
    for k in ks {
        let term = phase * k;
        sum += term;
        if term.norm() <= 1e-16 * sum.norm() {
            break;
        }
        phase *= -I;
    }
    sum
}

/// Worst sampled ratio of `|K_n|` to its bound for one order and branch.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelBoundReport {
    pub n: usize,
    /// True for the `λ = 0` branch.
    pub lambda_zero: bool,
    /// `|K_n|` at the worst sample.
    pub lhs: f64,
    /// Bound at the worst sample.
    pub rhs: f64,
    /// `max lhs/rhs` over all samples.
    pub worst_ratio: f64,
    pub samples: usize,
}

impl KernelBoundReport {
    pub fn holds(&self) -> bool {
        self.worst_ratio <= 1.0 + 1e-9
    }
}

/// Checks the bounds for `n = 1..=n_max` at every `(λ, x, t)` sample,
/// splitting the reports by branch.
pub fn kernel_bound_report(
    q: &SampledPotential,
    samples: &[(Complex64, f64, f64)],
    n_max: usize,
    m: usize,
) -> Vec<KernelBoundReport> {
    let sigma = q.sigma();
    let mut reports = Vec::new();
    for lambda_zero in [false, true] {
        let mut rep: Vec<KernelBoundReport> = (1..=n_max)
            .map(|n| KernelBoundReport { n, lambda_zero, lhs: 0.0, rhs: 0.0, worst_ratio: 0.0, samples: 0 })
            .collect();
        for &(lambda, x, t) in samples {
            let lambda = if lambda_zero { Complex64::new(0.0, 0.0) } else { lambda };
            let ks = iterated_kernels(q, lambda, x, t, n_max, m);
            let st = sigma.at(t);
            for (r, k) in rep.iter_mut().zip(&ks) {
                let rhs = kernel_bound(r.n, lambda, x, t, st);
                let lhs = k.norm();
                let ratio = if rhs > 0.0 { lhs / rhs } else if lhs == 0.0 { 0.0 } else { f64::INFINITY };
                if ratio >= r.worst_ratio {
                    r.worst_ratio = ratio;
                    r.lhs = lhs;
                    r.rhs = rhs;
                }
                r.samples += 1;
            }
        }
        reports.extend(rep);
    }
    reports
}
