//! Fourier transforms of functions sampled along a ray `l_{ζ_k}`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad;
use crate::raygeom::{zeta, I};

/// Transform value with a bound on the neglected tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierValue {
    pub value: Complex64,
    /// Contribution of `f(X) e^{−a(x−X)}` continued beyond the grid.
    pub tail: f64,
}

/// `∫_0^∞ e^{−iλζ_k x} f(xζ_k) dx` from samples `f(x_iζ_k)`, `x_i = i h`,
/// assuming `|f(xζ_k)| ≲ e^{−ax}`. The integral converges for
/// `Im(λζ_k) < a`.
pub fn fourier_on_ray(f: &[Complex64], h: f64, a: f64, k: usize, lambda: Complex64) -> Result<FourierValue> {
    let zk = zeta(k)?;
    if f.len() < 4 {
        return Err(Error::InvalidParameter("need at least 4 samples".into()));
    }
    if !(h > 0.0) {
        return Err(Error::InvalidParameter(format!("step h = {h} must be positive")));
    }
    let mu = -I * lambda * zk;
    if mu.re >= a {
        return Err(Error::RegionViolation(format!("{lambda} (Im(λζ_{k}) = {} ≥ a = {a})", mu.re)));
    }
    let n = f.len() - 1;
    let w: [[Complex64; 4]; 3] = std::array::from_fn(|s| quad::exp_weights_cubic(mu, h, -(s as i32)));
    let step = (mu * h).exp();
    let mut phase = Complex64::new(1.0, 0.0);
    let mut value = Complex64::default();
    for j in 0..n {
        let back = if j == 0 { 0 } else if j + 2 <= n { 1 } else { 2 };
        let base = j - back;
        let local: Complex64 = (0..4).map(|i| w[back][i] * f[base + i]).sum();
        value += phase * local;
        phase *= step;
    }
    let x_end = h * n as f64;
    let tail_term = (mu * x_end).exp() * f[n] / (Complex64::new(a, 0.0) - mu);
    Ok(FourierValue { value: value + tail_term, tail: tail_term.norm() })
}

/// `(‖f‖², (1/2π)‖f̃‖²)` for samples on `[0, X]` along `l_{ζ₁}`, the
/// transform taken on `n_lambda + 1` real points in `[−Λ, Λ]`.
pub fn parseval_check(f: &[Complex64], h: f64, a: f64, lambda_max: f64, n_lambda: usize) -> Result<(f64, f64)> {
    let norm2: Vec<f64> = f.iter().map(|v| v.norm_sqr()).collect();
    let lhs = quad::integrate(&norm2, h);
    let dl = 2.0 * lambda_max / n_lambda as f64;
    let mut vals = Vec::with_capacity(n_lambda + 1);
    for i in 0..=n_lambda {
        let l = -lambda_max + dl * i as f64;
        vals.push(fourier_on_ray(f, h, a, 1, Complex64::new(l, 0.0))?.value.norm_sqr());
    }
    Ok((lhs, quad::integrate(&vals, dl) / (2.0 * std::f64::consts::PI)))
}
