//! The canonical function `χ(λ,x) = exp{−(1/2π)∫₀^∞ ln d(−iτ,x)/(iτ+λ) dτ}`
//! with `d(λ,x) = −ζ₂e^{λ√3x}s₂*(λζ₃)`.

use num_complex::Complex64;

use super::cauchy::linear_panel_integral;
use crate::error::{Error, Result};
use crate::forward::ScatteringData;
use crate::raygeom::{I, SQRT3, Z2, Z3};

/// Which logarithm enters the canonical function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChiMode {
    /// `ln d` itself. Its phase grows like `−√3τx`, so for `x > 0` the
    /// truncated integral depends on `T` and the winding is nonzero.
    Printed,
    /// `ln(d/d₀)` with the zero-potential value `d₀ = −ζ₃e^{−i√3τx}`, which
    /// tends to zero along the ray and makes the integral converge.
    Reduced,
}

/// `d(−iτ,x)` sampled at the positive data parameters and the continuous
/// logarithm used for `χ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalSolution {
    pub x: f64,
    pub mode: ChiMode,
    /// Nodes `τ_j`, ascending, open at `0`.
    pub tau: Vec<f64>,
    /// `d(−iτ_j, x)`.
    pub d: Vec<Complex64>,
    /// Continuous branch of the logarithm entering the integral.
    pub log: Vec<Complex64>,
    /// `(arg(T) − arg(0⁺))/2π` of the logarithm, rounded.
    pub winding: i64,
}

/// `s₂(iζ₂τ)` at the positive parameters of data line 1.
pub fn s2_on_lower_ray(data: &ScatteringData) -> (Vec<f64>, Vec<Complex64>) {
    data.rays[1].iter().filter(|r| r.t > 0.0).map(|r| (r.t, r.s2())).unzip()
}

impl CanonicalSolution {
    pub fn new(data: &ScatteringData, x: f64, mode: ChiMode) -> Result<Self> {
        let (tau, s2) = s2_on_lower_ray(data);
        if tau.len() < 2 {
            return Err(Error::InvalidParameter("need at least two positive samples".into()));
        }
        let d: Vec<Complex64> =
            tau.iter().zip(&s2).map(|(&t, s)| -Z2 * Complex64::from_polar(1.0, -SQRT3 * t * x) * s.conj()).collect();
        let target: Vec<Complex64> = match mode {
            ChiMode::Printed => d.clone(),
            ChiMode::Reduced => {
                tau.iter().zip(&d).map(|(&t, v)| v / (-Z3 * Complex64::from_polar(1.0, -SQRT3 * t * x))).collect()
            }
        };
        if let Some(j) = target.iter().position(|v| v.norm() == 0.0 || !v.is_finite()) {
            return Err(Error::ZeroOnContour(tau[j]));
        }
        let n = tau.len();
        let mut log = vec![Complex64::default(); n];
        log[n - 1] = target[n - 1].ln();
        for j in (0..n - 1).rev() {
            let raw = target[j].ln();
            let k = ((log[j + 1].im - raw.im) / std::f64::consts::TAU).round();
            let cand = raw + I * (k * std::f64::consts::TAU);
            let jump = (cand.im - log[j + 1].im).abs();
            if jump > 0.5 * std::f64::consts::PI {
                return Err(Error::BranchJump { jump, tau_a: tau[j], tau_b: tau[j + 1] });
            }
            log[j] = cand;
        }
        let winding = ((log[n - 1].im - log[0].im) / std::f64::consts::TAU).round() as i64;
        Ok(Self { x, mode, tau, d, log, winding })
    }

    /// Fails with `NonzeroIndex` unless the logarithm has zero winding.
    pub fn require_zero_index(&self) -> Result<()> {
        if self.winding != 0 {
            return Err(Error::NonzeroIndex(self.winding));
        }
        Ok(())
    }

    /// `∫₀^T ln d(−iτ)/(iτ+λ) dτ` with the logarithm linear between nodes
    /// and constant on `(0, τ₁)`; exact for that interpolant.
    fn log_integral(&self, lambda: Complex64) -> Complex64 {
        // iτ + λ = i(τ − z) with z = iλ.
        let z = I * lambda;
        let head = linear_panel_integral(0.0, self.tau[0], self.log[0], self.log[0], z);
        let body: Complex64 = self
            .tau
            .windows(2)
            .zip(self.log.windows(2))
            .map(|(t, f)| linear_panel_integral(t[0], t[1], f[0], f[1], z))
            .sum();
        -I * (head + body)
    }

    /// `χ(λ,x)`; `λ` must not lie on the ray `−iτ, τ ≥ 0`.
    pub fn eval(&self, lambda: Complex64) -> Result<Complex64> {
        if lambda.re.abs() <= 1e-14 * lambda.norm() && lambda.im < 0.0 {
            return Err(Error::InvalidParameter(format!("λ = {lambda} lies on the contour")));
        }
        Ok((-self.log_integral(lambda) / (2.0 * std::f64::consts::PI)).exp())
    }

    /// `χ` on both sides of the contour at `λ = −iτ₀`, offset by `ε`
    /// along the normal. Returns `(χ_left, χ_right)` with "left" meaning
    /// `Re λ < 0`.
    pub fn side_values(&self, tau0: f64, eps: f64) -> Result<(Complex64, Complex64)> {
        let base = Complex64::new(0.0, -tau0);
        Ok((self.eval(base - eps)?, self.eval(base + eps)?))
    }
}
