//! Flat `key = value` run configuration.

use std::path::PathBuf;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forward::BoundaryData;
use crate::riemann::ChiMode;
use crate::volterra::Support;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Verify,
    Forward,
    Inverse,
    Roundtrip,
    Zeros,
}

/// Everything a run needs; CLI flags override values read from a file.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub potential_path: Option<PathBuf>,
    pub data_path: Option<PathBuf>,
    pub output_path: Option<PathBuf>,
    pub x_max: f64,
    pub n_x: usize,
    pub t_max: f64,
    pub n_tau: usize,
    /// Decay parameter of the potential class.
    pub decay: f64,
    pub compact: bool,
    pub jost_tol: f64,
    pub product_tol: f64,
    pub unitarity_tol: f64,
    pub extrapolation_tol: f64,
    pub alpha: f64,
    pub beta: f64,
    pub theta_arg: f64,
    /// Moduli `r` of the probe points `λ = ir`.
    pub probes: Vec<f64>,
    pub bound_state_radius: f64,
    pub chi_mode: ChiMode,
    pub suite: String,
    pub seed: u64,
    pub family: usize,
    pub count: usize,
    /// Stride of the x subset checked at doubled grids in `roundtrip`.
    pub refine_stride: usize,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            potential_path: None,
            data_path: None,
            output_path: None,
            x_max: 4.0,
            n_x: 400,
            t_max: 10.0,
            n_tau: 400,
            decay: 3.9,
            compact: true,
            jost_tol: 1e-10,
            product_tol: 1e-6,
            unitarity_tol: 1e-6,
            extrapolation_tol: 0.5,
            alpha: 1.0,
            beta: 0.0,
            theta_arg: 0.0,
            probes: vec![4.0, 6.0, 8.0, 10.0],
            bound_state_radius: 6.0,
            chi_mode: ChiMode::Reduced,
            suite: "all".into(),
            seed: 20240601,
            family: 0,
            count: 10,
            refine_stride: 20,
        }
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse { line: i + 1, detail: format!("expected key = value, found `{line}`") })?;
            self.set(k.trim(), v.trim()).map_err(|e| Error::Parse { line: i + 1, detail: e.to_string() })?;
        }
        Ok(())
    }

    /// Sets one key from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
            v.parse().map_err(|_| Error::InvalidParameter(format!("{key}: cannot parse `{v}`")))
        }
        match key {
            "potential" | "potential_path" => self.potential_path = Some(value.into()),
            "data" | "data_path" => self.data_path = Some(value.into()),
            "out" | "output" | "output_path" => self.output_path = Some(value.into()),
            "xmax" | "x_max" => self.x_max = num(key, value)?,
            "nx" | "n_x" => self.n_x = num(key, value)?,
            "t" | "t_max" => self.t_max = num(key, value)?,
            "ntau" | "n_tau" => self.n_tau = num(key, value)?,
            "a" | "decay" => self.decay = num(key, value)?,
            "support" => {
                self.compact = match value {
                    "compact" => true,
                    "truncated" => false,
                    _ => return Err(Error::InvalidParameter(format!("support: expected compact or truncated, found `{value}`"))),
                }
            }
            "jost_tol" => self.jost_tol = num(key, value)?,
            "product_tol" => self.product_tol = num(key, value)?,
            "unitarity_tol" => self.unitarity_tol = num(key, value)?,
            "extrapolation_tol" => self.extrapolation_tol = num(key, value)?,
            "alpha" => self.alpha = num(key, value)?,
            "beta" => self.beta = num(key, value)?,
            "theta_arg" => self.theta_arg = num(key, value)?,
            "probes" => {
                self.probes = value.split(',').map(|s| num::<f64>(key, s.trim())).collect::<Result<_>>()?;
            }
            "radius" | "bound_state_radius" => self.bound_state_radius = num(key, value)?,
            "chi_mode" => {
                self.chi_mode = match value {
                    "reduced" => ChiMode::Reduced,
                    "printed" => ChiMode::Printed,
                    _ => return Err(Error::InvalidParameter(format!("chi_mode: expected reduced or printed, found `{value}`"))),
                }
            }
            "suite" => self.suite = value.into(),
            "seed" => self.seed = num(key, value)?,
            "family" => self.family = num(key, value)?,
            "count" => self.count = num(key, value)?,
            "refine_stride" => self.refine_stride = num(key, value)?,
            _ => return Err(Error::InvalidParameter(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Grids positive, tolerances in `(0, 1)`, probes inside the upper sector.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if !(self.x_max > 0.0) || self.n_x < 4 {
            return bad(format!("x grid needs xmax > 0 and nx ≥ 4 (xmax = {}, nx = {})", self.x_max, self.n_x));
        }
        if !(self.t_max > 0.0) || self.n_tau < 2 {
            return bad(format!("τ grid needs T > 0 and ntau ≥ 2 (T = {}, ntau = {})", self.t_max, self.n_tau));
        }
        if !(self.decay > 0.0) {
            return bad(format!("decay parameter must be positive, found {}", self.decay));
        }
        for (name, v) in [
            ("jost_tol", self.jost_tol),
            ("product_tol", self.product_tol),
            ("unitarity_tol", self.unitarity_tol),
            ("extrapolation_tol", self.extrapolation_tol),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return bad(format!("{name} must lie in (0, 1), found {v}"));
            }
        }
        if self.probes.len() < 4 || self.probes.iter().any(|r| !(*r > 0.0)) {
            return bad("need at least four positive probe moduli".into());
        }
        if !(self.bound_state_radius > 0.0) {
            return bad("bound-state radius must be positive".into());
        }
        if self.family > 2 {
            return bad(format!("family must be 0, 1 or 2, found {}", self.family));
        }
        BoundaryData::with_theta_arg(self.alpha, self.beta, self.theta_arg)?;
        Ok(())
    }

    pub fn support(&self) -> Support {
        if self.compact { Support::Compact } else { Support::Truncated }
    }

    pub fn boundary(&self) -> Result<BoundaryData> {
        BoundaryData::with_theta_arg(self.alpha, self.beta, self.theta_arg)
    }

    pub fn probe_points(&self) -> Vec<Complex64> {
        self.probes.iter().map(|r| Complex64::new(0.0, *r)).collect()
    }
}
