//! `forward`, `inverse`, `roundtrip` and `zeros`.

use std::time::Instant;

use serde::Serialize;

use crate::cli::config::RunConfig;
use crate::error::{Error, Result};
use crate::forward::{find_bound_states, scattering_data, validate, BoundStateOptions, ScatteringData, ValidationOptions};
use crate::io;
use crate::quad::cumulative;
use crate::riemann::{recover_potential, RecoveredPotential, RecoveryOptions};
use crate::trig3::{find_zeros, TrigZero};
use crate::volterra::{JostOptions, SampledPotential};

pub fn jost_options(cfg: &RunConfig) -> JostOptions {
    JostOptions { tol: cfg.jost_tol, ..Default::default() }
}

fn required<'a>(p: &'a Option<std::path::PathBuf>, what: &str) -> Result<&'a std::path::Path> {
    p.as_deref().ok_or_else(|| Error::InvalidParameter(format!("missing {what} path")))
}

pub fn load_potential(cfg: &RunConfig) -> Result<SampledPotential> {
    io::read_potential(required(&cfg.potential_path, "potential")?, cfg.n_x, cfg.decay, cfg.support())
}

/// Bound states inside the configured radius, then the line samples.
pub fn forward_data(q: &SampledPotential, cfg: &RunConfig) -> Result<ScatteringData> {
    let bd = cfg.boundary()?;
    let opts = jost_options(cfg);
    let radius = if q.is_compact() { cfg.bound_state_radius } else { cfg.bound_state_radius.min(0.95 * q.a / 3.0) };
    let bs = find_bound_states(q, &bd, radius, &opts, &BoundStateOptions::default())?;
    scattering_data(q, &bd, cfg.t_max, cfg.n_tau, &bs, &opts)
}

pub fn cmd_forward(cfg: &RunConfig) -> Result<ScatteringData> {
    let q = load_potential(cfg)?;
    let data = forward_data(&q, cfg)?;
    io::write_data(required(&cfg.output_path, "output")?, &data)?;
    Ok(data)
}

pub fn recovery_options(cfg: &RunConfig) -> RecoveryOptions {
    RecoveryOptions {
        chi_mode: cfg.chi_mode,
        probes: cfg.probe_points(),
        extrapolation_tol: cfg.extrapolation_tol,
        ..Default::default()
    }
}

pub fn x_grid(x_max: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|i| x_max * i as f64 / n as f64).collect()
}

/// Validates the data, then recovers `P` and `q` on the configured grid.
pub fn inverse_from(data: &ScatteringData, cfg: &RunConfig, opts: &RecoveryOptions) -> Result<RecoveredPotential> {
    validate(data, &ValidationOptions { product_tol: cfg.product_tol, unitarity_tol: cfg.unitarity_tol })?;
    recover_potential(data, &x_grid(cfg.x_max, cfg.n_x), opts)
}

pub fn cmd_inverse(cfg: &RunConfig) -> Result<RecoveredPotential> {
    let data = io::read_data(required(&cfg.data_path, "data")?)?;
    let rec = inverse_from(&data, cfg, &recovery_options(cfg))?;
    io::write_recovered(required(&cfg.output_path, "output")?, &rec)?;
    Ok(rec)
}

/// Relative `L²` and sup errors of a recovered profile against the truth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorPair {
    pub l2: f64,
    pub sup: f64,
}

pub fn relative_errors(got: &[f64], want: &[f64]) -> ErrorPair {
    let d2: f64 = got.iter().zip(want).map(|(a, b)| (a - b).powi(2)).sum();
    let w2: f64 = want.iter().map(|b| b * b).sum();
    let dmax = got.iter().zip(want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let wmax = want.iter().map(|b| b.abs()).fold(0.0, f64::max);
    let rel = |d: f64, w: f64| if w > 0.0 { d / w } else { d };
    ErrorPair { l2: rel(d2.sqrt(), w2.sqrt()), sup: rel(dmax, wmax) }
}

/// `P(x) = ∫_x^∞ q` of a sampled potential at its nodes.
pub fn tail_integral_profile(q: &SampledPotential) -> Vec<f64> {
    let c = cumulative(&q.values, q.step());
    let total = c[c.len() - 1];
    c.iter().map(|v| total - v).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Resolution {
    pub n_x: usize,
    pub n_tau: usize,
    pub t_max: f64,
    /// Number of x nodes at which `P` was recovered.
    pub recovered_points: usize,
    pub p_error: ErrorPair,
    /// Absent when `P` was recovered on a strided subset only.
    pub q_error: Option<ErrorPair>,
    pub max_system_residual: f64,
    pub min_pivot_ratio: f64,
    pub max_extrapolation_spread: f64,
    pub max_q_imag: f64,
    pub bound_states: usize,
    pub validation: Option<String>,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundtripReport {
    pub config: RunConfig,
    pub resolutions: Vec<Resolution>,
    /// Stride of the x subset used at the doubled resolution.
    pub refine_stride: usize,
    /// `P` error at the coarse resolution on the same subset.
    pub coarse_subset_p_error: ErrorPair,
    /// Error in `P` on the subset decreases under the doubling.
    pub monotone: bool,
    pub p_tolerance: f64,
    pub q_tolerance: f64,
    pub within_tolerance: bool,
}

/// Forward map followed by the inverse map at one resolution, recovering
/// `P` at every `stride`-th node of the potential grid.
pub fn roundtrip_once(q_fine: &SampledPotential, cfg: &RunConfig, stride: usize) -> Result<(Resolution, Vec<f64>, Vec<f64>)> {
    let start = Instant::now();
    let stride = stride.max(1);
    let q = SampledPotential::from_scattered(&q_fine.grid, &q_fine.values, cfg.n_x, q_fine.a, q_fine.support)?;
    let data = forward_data(&q, cfg)?;
    let validation = validate(&data, &ValidationOptions { product_tol: cfg.product_tol, unitarity_tol: cfg.unitarity_tol })
        .err()
        .map(|e| e.to_string());
    let opts = RecoveryOptions { check_extrapolation: false, ..recovery_options(cfg) };
    let xs: Vec<f64> = q.grid.iter().step_by(stride).copied().collect();
    let rec = recover_potential(&data, &xs, &opts)?;
    let p_true: Vec<f64> = tail_integral_profile(&q).into_iter().step_by(stride).collect();
    let p_re: Vec<f64> = rec.p.iter().map(|v| v.re).collect();
    let q_error = (stride == 1).then(|| relative_errors(&rec.q, &q.values));
    let d = &rec.diagnostics;
    let res = Resolution {
        n_x: cfg.n_x,
        n_tau: cfg.n_tau,
        t_max: cfg.t_max,
        recovered_points: xs.len(),
        p_error: relative_errors(&p_re, &p_true),
        q_error,
        max_system_residual: d.iter().map(|v| v.residual).fold(0.0, f64::max),
        min_pivot_ratio: d.iter().map(|v| v.pivot_ratio).fold(f64::INFINITY, f64::min),
        max_extrapolation_spread: d.iter().map(|v| v.spread).fold(0.0, f64::max),
        max_q_imag: if stride == 1 { rec.q_imag.iter().map(|v| v.abs()).fold(0.0, f64::max) } else { f64::NAN },
        bound_states: data.kappas.len(),
        validation,
        seconds: start.elapsed().as_secs_f64(),
    };
    Ok((res, p_re, p_true))
}

/// Runs the round trip at the configured grids on every node, then at
/// doubled grids on every `2·stride`-th fine node, which are the coarse
/// nodes `0, stride, 2·stride, …`.
pub fn roundtrip(q: &SampledPotential, cfg: &RunConfig, stride: usize) -> Result<RoundtripReport> {
    let stride = stride.max(1);
    let (coarse, p_re, p_true) = roundtrip_once(q, cfg, 1)?;
    let sub = |v: &[f64]| v.iter().step_by(stride).copied().collect::<Vec<f64>>();
    let coarse_subset_p_error = relative_errors(&sub(&p_re), &sub(&p_true));
    let fine_cfg = RunConfig { n_x: 2 * cfg.n_x, n_tau: 2 * cfg.n_tau, ..cfg.clone() };
    let (fine, _, _) = roundtrip_once(q, &fine_cfg, 2 * stride)?;
    let monotone = fine.p_error.l2 < coarse_subset_p_error.l2;
    let (p_tolerance, q_tolerance) = (0.01, 0.05);
    let q_ok = coarse.q_error.is_some_and(|e| e.l2 <= q_tolerance);
    let within_tolerance = coarse.p_error.l2 <= p_tolerance && q_ok && monotone;
    Ok(RoundtripReport {
        config: cfg.clone(),
        resolutions: vec![coarse, fine],
        refine_stride: stride,
        coarse_subset_p_error,
        monotone,
        p_tolerance,
        q_tolerance,
        within_tolerance,
    })
}

pub fn cmd_roundtrip(cfg: &RunConfig) -> Result<RoundtripReport> {
    let q = io::read_potential(required(&cfg.potential_path, "potential")?, 4 * cfg.n_x, cfg.decay, cfg.support())?;
    let report = roundtrip(&q, cfg, cfg.refine_stride)?;
    if let Some(path) = &cfg.output_path {
        std::fs::write(path, serde_json::to_string_pretty(&report)?)?;
    }
    Ok(report)
}

pub fn cmd_zeros(cfg: &RunConfig) -> Result<Vec<TrigZero>> {
    find_zeros(cfg.family, cfg.count)
}
