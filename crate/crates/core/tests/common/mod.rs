//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trisect::volterra::{SampledPotential, Support};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `0.1 e^{−4x}` on `[0, 4]`, treated as a truncated tail.
pub fn small_truncated(n: usize) -> SampledPotential {
    SampledPotential::from_fn(|x| 0.1 * (-4.0 * x).exp(), 4.0, n, 3.9, Support::Truncated).unwrap()
}

/// `0.1 e^{−4x} χ_{[0,4]}`.
pub fn small_compact(n: usize) -> SampledPotential {
    SampledPotential::from_fn(|x| 0.1 * (-4.0 * x).exp(), 4.0, n, 3.9, Support::Compact).unwrap()
}

/// A sign-changing bump supported in `[0, 3]`.
pub fn bump(n: usize) -> SampledPotential {
    SampledPotential::from_fn(
        |x| if x < 3.0 { 0.8 * (std::f64::consts::PI * x / 3.0).sin().powi(2) * (1.0 - 0.7 * x) } else { 0.0 },
        3.0,
        n,
        2.0,
        Support::Compact,
    )
    .unwrap()
}

/// Point drawn uniformly from the disc of radius `r`.
pub fn random_in_disc(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
    let rho = r * rng.random::<f64>().sqrt();
    Complex64::from_polar(rho, rng.random_range(0.0..std::f64::consts::TAU))
}

/// Integrates `u‴ = −iλ³u + i q u` backwards from `X` with classical RK4,
/// starting from the exponential `e^{iλζx}` and its derivatives. Returns
/// `(u, u′, u″)` at `x = 0`.
pub fn rk4_jost_at_zero(q: impl Fn(f64) -> f64, x_max: f64, lambda: Complex64, zeta: Complex64, steps: usize) -> [Complex64; 3] {
    let il = Complex64::i() * lambda * zeta;
    let e = (il * x_max).exp();
    let mut y = [e, il * e, il * il * e];
    let l3 = lambda * lambda * lambda;
    let f = |x: f64, y: &[Complex64; 3]| -> [Complex64; 3] {
        [y[1], y[2], Complex64::i() * (q(x) - l3) * y[0]]
    };
    let h = -x_max / steps as f64;
    let mut x = x_max;
    for _ in 0..steps {
        let k1 = f(x, &y);
        let y2 = std::array::from_fn(|i| y[i] + k1[i] * (0.5 * h));
        let k2 = f(x + 0.5 * h, &y2);
        let y3 = std::array::from_fn(|i| y[i] + k2[i] * (0.5 * h));
        let k3 = f(x + 0.5 * h, &y3);
        let y4 = std::array::from_fn(|i| y[i] + k3[i] * h);
        let k4 = f(x + h, &y4);
        y = std::array::from_fn(|i| y[i] + (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * (h / 6.0));
        x += h;
    }
    y
}
