//! Cauchy integrals `∫₀^T φ(τ)/(τ−z) dτ` over a cell-centred grid.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// `ln((b−z)/(a−z))`, accurate when `|z|` is large against `b − a`.
fn log_ratio(a: f64, b: f64, z: Complex64) -> Complex64 {
    let w = Complex64::new(b - a, 0.0) / (a - z);
    if w.norm() < 1e-3 {
        let mut term = w;
        let mut sum = Complex64::default();
        for k in 1..12 {
            sum += term / k as f64 * if k % 2 == 1 { 1.0 } else { -1.0 };
            term *= w;
        }
        sum
    } else {
        (b - z).ln() - (a - z).ln()
    }
}

/// `(∫_a^b (b−τ)/((b−a)(τ−z)) dτ, ∫_a^b (τ−a)/((b−a)(τ−z)) dτ)`.
fn hat_weights(a: f64, b: f64, z: Complex64) -> (Complex64, Complex64) {
    let l = log_ratio(a, b, z);
    let h = b - a;
    let fb = (h + (z - a) * l) / h;
    (l - fb, fb)
}

/// `∫_a^b f(τ)/(τ−z) dτ` for `f` linear between `f(a) = fa` and `f(b) = fb`.
pub(crate) fn linear_panel_integral(a: f64, b: f64, fa: Complex64, fb: Complex64, z: Complex64) -> Complex64 {
    let (wa, wb) = hat_weights(a, b, z);
    wa * fa + wb * fb
}

/// Uniform cell-centred grid `τ_j = (j − ½)h` on `(0, T)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CauchyGrid {
    pub tau: Vec<f64>,
    pub h: f64,
    pub t_max: f64,
}

impl CauchyGrid {
    pub fn new(t_max: f64, m: usize) -> Result<Self> {
        if !(t_max > 0.0) || m < 2 {
            return Err(Error::InvalidParameter(format!("Cauchy grid needs T > 0 and M ≥ 2 (T = {t_max}, M = {m})")));
        }
        let h = t_max / m as f64;
        Ok(Self { tau: (1..=m).map(|j| (j as f64 - 0.5) * h).collect(), h, t_max })
    }

    /// Recognises a cell-centred grid from its nodes.
    pub fn from_nodes(tau: &[f64]) -> Result<Self> {
        let m = tau.len();
        if m < 2 {
            return Err(Error::InvalidParameter("need at least two nodes".into()));
        }
        let h = 2.0 * tau[0];
        let grid = Self::new(h * m as f64, m)?;
        if grid.tau.iter().zip(tau).any(|(a, b)| (a - b).abs() > 1e-9 * h) {
            return Err(Error::GridMismatch("nodes are not (j − ½)h".into()));
        }
        Ok(grid)
    }

    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    /// Weights of `∫₀^T φ(τ)/(τ−z) dτ` for `φ` linear between nodes and
    /// extrapolated linearly over the two half cells at the ends. Valid for `z` off `[0, T]`.
    pub fn weights(&self, z: Complex64) -> Vec<Complex64> {
        let m = self.len();
        let mut w = vec![Complex64::default(); m];
        let (t0, tn) = (self.tau[0], self.tau[m - 1]);
        let l0 = log_ratio(0.0, t0, z);
        let k0 = (t0 + (z - t0) * l0) / self.h;
        w[0] += l0 - k0;
        w[1] += k0;
        let l1 = log_ratio(tn, self.t_max, z);
        let k1 = ((self.t_max - tn) + (z - tn) * l1) / self.h;
        w[m - 1] += l1 + k1;
        w[m - 2] -= k1;
        for j in 0..m - 1 {
            let (wa, wb) = hat_weights(self.tau[j], self.tau[j + 1], z);
            w[j] += wa;
            w[j + 1] += wb;
        }
        w
    }

    /// `∫₀^T φ(τ)/(τ−z) dτ` with [`Self::weights`].
    pub fn integral(&self, phi: &[Complex64], z: Complex64) -> Complex64 {
        self.weights(z).iter().zip(phi).map(|(w, f)| w * f).sum()
    }

    /// Principal value `PV∫₀^T φ(τ)/(τ−τ_i) dτ` at every node by
    /// singularity subtraction: the midpoint rule on `(φ(τ)−φ(τ_i))/(τ−τ_i)`,
    /// whose value at `τ_i` is a difference quotient, plus
    /// `φ(τ_i) ln((T−τ_i)/τ_i)`.
    pub fn pv_matrix(&self) -> DMatrix<f64> {
        let m = self.len();
        let h = self.h;
        let mut a = DMatrix::zeros(m, m);
        for i in 0..m {
            let ti = self.tau[i];
            let mut diag = ((self.t_max - ti) / ti).ln();
            for j in 0..m {
                if j != i {
                    let w = h / (self.tau[j] - ti);
                    a[(i, j)] = w;
                    diag -= w;
                }
            }
            a[(i, i)] = diag;
            if i == 0 {
                a[(0, 1)] += 1.0;
                a[(0, 0)] -= 1.0;
            } else if i == m - 1 {
                a[(i, i)] += 1.0;
                a[(i, i - 1)] -= 1.0;
            } else {
                a[(i, i + 1)] += 0.5;
                a[(i, i - 1)] -= 0.5;
            }
        }
        a
    }
}
