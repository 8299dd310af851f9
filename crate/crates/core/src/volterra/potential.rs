//! Real potentials sampled on a uniform half-line grid.

use crate::error::{Error, Result};
use crate::quad;

/// How the potential behaves beyond the last grid node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    /// The samples truncate a tail decaying like `e^{−ax}`; Jost solutions
    /// are trusted only for `|λ| < a/3`.
    Truncated,
    /// The potential vanishes beyond the grid; every `λ` is admissible.
    Compact,
}

/// `q(x_i)` on a uniform grid `0 = x_0 < … < x_N = X_max`, linearly
/// interpolated between nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledPotential {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    /// Decay rate in `∫ |q|² e^{2ax} dx < ∞`.
    pub a: f64,
    pub support: Support,
}

impl SampledPotential {
    pub fn new(grid: Vec<f64>, values: Vec<f64>, a: f64, support: Support) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::GridMismatch(format!("{} nodes but {} values", grid.len(), values.len())));
        }
        if grid.len() < 3 {
            return Err(Error::InvalidParameter("potential needs at least 3 nodes".into()));
        }
        if !(a > 0.0) {
            return Err(Error::InvalidParameter(format!("decay parameter a = {a} must be positive")));
        }
        if grid[0].abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("grid must start at x = 0, found {}", grid[0])));
        }
        let h = (grid[grid.len() - 1] - grid[0]) / (grid.len() - 1) as f64;
        for (i, w) in grid.windows(2).enumerate() {
            if !(w[1] > w[0]) {
                return Err(Error::Parse { line: i + 2, detail: "x values must be strictly increasing".into() });
            }
            if ((w[1] - w[0]) - h).abs() > 1e-6 * h {
                return Err(Error::InvalidParameter(format!(
                    "grid must be uniform; interval {} has width {} instead of {h}; resample first",
                    i + 1,
                    w[1] - w[0]
                )));
            }
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Parse { line: i + 1, detail: "non-finite potential value".into() });
        }
        Ok(Self { grid, values, a, support })
    }

    /// Samples `f` at `n + 1` equispaced nodes on `[0, xmax]`.
    pub fn from_fn(f: impl Fn(f64) -> f64, xmax: f64, n: usize, a: f64, support: Support) -> Result<Self> {
        if n < 2 || !(xmax > 0.0) {
            return Err(Error::InvalidParameter("need xmax > 0 and n ≥ 2".into()));
        }
        let grid: Vec<f64> = (0..=n).map(|i| xmax * i as f64 / n as f64).collect();
        let values = grid.iter().map(|&x| f(x)).collect();
        Self::new(grid, values, a, support)
    }

    /// The zero potential on `[0, xmax]`.
    pub fn zero(xmax: f64, n: usize) -> Self {
        Self::from_fn(|_| 0.0, xmax, n, 1.0, Support::Compact).expect("valid zero potential")
    }

    /// Resamples non-uniform or coarse data onto `n + 1` uniform nodes.
    pub fn from_scattered(x: &[f64], q: &[f64], n: usize, a: f64, support: Support) -> Result<Self> {
        if x.len() != q.len() || x.len() < 2 {
            return Err(Error::GridMismatch("x and q must have equal length ≥ 2".into()));
        }
        for (i, w) in x.windows(2).enumerate() {
            if !(w[1] > w[0]) {
                return Err(Error::Parse { line: i + 2, detail: "x values must be strictly increasing".into() });
            }
        }
        let xmax = x[x.len() - 1];
        let interp = |t: f64| {
            let k = x.partition_point(|&v| v <= t).clamp(1, x.len() - 1);
            let s = (t - x[k - 1]) / (x[k] - x[k - 1]);
            q[k - 1] + s * (q[k] - q[k - 1])
        };
        Self::from_fn(|t| if t < x[0] { q[0] } else { interp(t) }, xmax, n, a, support)
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Number of intervals.
    pub fn intervals(&self) -> usize {
        self.grid.len() - 1
    }

    pub fn step(&self) -> f64 {
        self.xmax() / self.intervals() as f64
    }

    pub fn xmax(&self) -> f64 {
        self.grid[self.grid.len() - 1]
    }

    pub fn is_compact(&self) -> bool {
        self.support == Support::Compact
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    /// Linear interpolation; zero beyond the grid.
    pub fn value_at(&self, x: f64) -> f64 {
        if x < 0.0 || x > self.xmax() {
            return 0.0;
        }
        let h = self.step();
        let k = ((x / h).floor() as usize).min(self.intervals() - 1);
        let s = (x - self.grid[k]) / h;
        self.values[k] + s * (self.values[k + 1] - self.values[k])
    }

    /// `∫_x^∞ q(t) dt` at every node (the tail beyond the grid is ignored).
    pub fn tail_integral(&self) -> Vec<f64> {
        let c = quad::cumulative(&self.values, self.step());
        let total = c[c.len() - 1];
        c.iter().map(|v| total - v).collect()
    }

    /// `σ(t) = ∫_0^t |q|` at every node together with an estimate of `σ(∞)`.
    pub fn sigma(&self) -> SigmaAccumulator {
        let abs: Vec<f64> = self.values.iter().map(|v| v.abs()).collect();
        let sigma = quad::cumulative(&abs, self.step());
        let last = sigma[sigma.len() - 1];
        let tail = match self.support {
            Support::Compact => 0.0,
            Support::Truncated => abs[abs.len() - 1] / self.a,
        };
        SigmaAccumulator { grid: self.grid.clone(), sigma, sigma_inf: last + tail }
    }

    /// Trapezoid estimate of `∫ |q|² e^{2ax} dx` plus an exponential tail bound.
    pub fn weighted_l2(&self) -> f64 {
        let h = self.step();
        let f: Vec<f64> = self.grid.iter().zip(&self.values).map(|(&x, &q)| q * q * (2.0 * self.a * x).exp()).collect();
        let body: f64 = h * (f.iter().sum::<f64>() - 0.5 * (f[0] + f[f.len() - 1]));
        let tail = match self.support {
            Support::Compact => 0.0,
            // Tail modelled as |q|² e^{2ax} decaying at least like e^{−a(x−X)}.
            Support::Truncated => f[f.len() - 1] / self.a,
        };
        body + tail
    }

    /// Checks the decay condition numerically: the weighted norm is finite
    /// and the weighted integrand is not growing at the end of the grid.
    pub fn check_admissible(&self) -> Result<()> {
        let w = self.weighted_l2();
        if !w.is_finite() {
            return Err(Error::InvalidParameter("∫|q|²e^{2ax}dx is not finite on the grid".into()));
        }
        if self.support == Support::Truncated {
            let n = self.len();
            let f = |i: usize| self.values[i].powi(2) * (2.0 * self.a * self.grid[i]).exp();
            let (fa, fb) = (f(n - 1 - n / 10), f(n - 1));
            if fb > fa.max(1e-300) * 1.0001 && fb > 1e-14 {
                return Err(Error::InvalidParameter(format!(
                    "|q|²e^{{2ax}} grows towards X_max (from {fa:e} to {fb:e}); decay rate a = {} is too large",
                    self.a
                )));
            }
        }
        Ok(())
    }

    /// Grid of the same extent with `n` intervals, linearly interpolated.
    pub fn resample(&self, n: usize) -> Result<Self> {
        let mut out = Self::from_fn(|x| self.value_at(x), self.xmax(), n, self.a, self.support)?;
        let last = out.values.len() - 1;
        out.values[last] = self.values[self.values.len() - 1];
        Ok(out)
    }
}

/// Cumulative absolute mass of the potential.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaAccumulator {
    pub grid: Vec<f64>,
    pub sigma: Vec<f64>,
    pub sigma_inf: f64,
}

impl SigmaAccumulator {
    /// Linear interpolation of `σ` at `t`.
    pub fn at(&self, t: f64) -> f64 {
        let n = self.grid.len();
        if t <= 0.0 {
            return 0.0;
        }
        if t >= self.grid[n - 1] {
            return self.sigma[n - 1];
        }
        let k = self.grid.partition_point(|&v| v <= t).clamp(1, n - 1);
        let s = (t - self.grid[k - 1]) / (self.grid[k] - self.grid[k - 1]);
        self.sigma[k - 1] + s * (self.sigma[k] - self.sigma[k - 1])
    }
}
