//! Verification suites driven by `trisect verify`.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::forward::{coefficients_at, scattering_coefficients, unitarity_residual, wronskian_identity_residual, BoundaryData};
use crate::raygeom::{Z2, Z3};
use crate::riemann::{jump_residuals, JumpEvaluator};
use crate::trig3::{eval_s, find_zeros, identity_residuals, interlaced};
use crate::volterra::{fundamental_determinant, kernel_bound_report, resolvent, resolvent_bound, JostOptions, SampledPotential, Support};

pub const SUITES: [&str; 8] = ["identities", "zeros", "kernels", "determinant", "wronskian", "scattering", "unitarity", "jumps"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub max_residual: f64,
    pub tolerance: f64,
    pub seconds: f64,
    pub detail: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }
}

/// `0.1 e^{−4x}` on `[0, 4]`, the default test potential.
pub fn small_potential(n: usize, support: Support) -> SampledPotential {
    SampledPotential::from_fn(|x| 0.1 * (-4.0 * x).exp(), 4.0, n, 3.9, support).expect("valid potential")
}

fn disc(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
    Complex64::from_polar(r * rng.random::<f64>().sqrt(), rng.random_range(0.0..std::f64::consts::TAU))
}

fn finish(name: &str, start: Instant, max: f64, tol: f64, extra_ok: bool, detail: serde_json::Value) -> SuiteResult {
    SuiteResult {
        name: name.into(),
        passed: max <= tol && extra_ok,
        max_residual: max,
        tolerance: tol,
        seconds: start.elapsed().as_secs_f64(),
        detail,
    }
}

/// Runs one named suite on `q` with the seeded generator.
pub fn run_suite(name: &str, q: &SampledPotential, bd: &BoundaryData, opts: &JostOptions, seed: u64) -> Result<SuiteResult> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match name {
        "identities" => {
            let mut max = 0.0_f64;
            let mut worst = String::new();
            for _ in 0..100 {
                let (z, w) = (disc(&mut rng, 3.0), disc(&mut rng, 3.0));
                for (k, v) in identity_residuals(z, w) {
                    if v > max {
                        max = v;
                        worst = k;
                    }
                }
            }
            Ok(finish(name, start, max, 1e-10, true, json!({ "points": 100, "worst_identity": worst })))
        }
        "zeros" => {
            let fams: Vec<_> = (0..3).map(|p| find_zeros(p, 10)).collect::<Result<_>>()?;
            let eq = fams.iter().flatten().map(|z| z.residual).fold(0.0, f64::max);
            let on_rays = fams
                .iter()
                .flatten()
                .flat_map(|z| z.ray_images.map(|l| eval_s(z.p, l).norm()))
                .fold(0.0, f64::max);
            // Relative to the growth e^{x/2} of s_p along the rays.
            let scaled = fams
                .iter()
                .flatten()
                .flat_map(|z| z.ray_images.map(|l| eval_s(z.p, l).norm() * (-0.5 * z.x).exp()))
                .fold(0.0, f64::max);
            let first_over = fams.iter().flatten().filter(|z| z.ray_images.iter().any(|&l| eval_s(z.p, l).norm() >= 1e-9)).map(|z| (z.p, z.k)).next();
            let xs: Vec<Vec<f64>> = fams.iter().map(|f| f.iter().map(|z| z.x).collect()).collect();
            let inter = interlaced(&xs[0], &xs[1], &xs[2]);
            let ok = on_rays < 1e-9 && inter;
            let detail = json!({
                "max_s_on_rays": on_rays,
                "max_s_on_rays_scaled": scaled,
                "first_zero_over_1e-9": first_over,
                "interlaced": inter,
                "zeros": xs,
            });
            Ok(finish(name, start, eq, 1e-12, ok, detail))
        }
        "kernels" => {
            let a = q.xmax();
            let samples: Vec<_> = (0..200)
                .map(|_| {
                    let x = 0.7 * a * rng.random::<f64>();
                    let t = x + (a - x) * rng.random::<f64>();
                    (disc(&mut rng, 4.0), x, t)
                })
                .collect();
            let reps = kernel_bound_report(q, &samples, 4, 60);
            let worst = reps.iter().map(|r| r.worst_ratio).fold(0.0, f64::max);
            let sigma = q.sigma();
            let res_ok = samples.iter().take(20).all(|&(l, x, t)| resolvent(q, l, x, t, 80).norm() <= resolvent_bound(l, x, t, sigma.at(t)));
            Ok(finish(name, start, worst, 1.0 + 1e-9, res_ok, json!({ "worst_ratio": worst, "resolvent_bound_holds": res_ok })))
        }
        "determinant" => {
            let mut max = 0.0_f64;
            for _ in 0..20 {
                let l = admissible(&mut rng, q);
                max = max.max(fundamental_determinant(q, l, opts)?.max_rel_deviation);
            }
            Ok(finish(name, start, max, 1e-6, true, json!({ "points": 20 })))
        }
        "wronskian" => {
            let mut max = 0.0_f64;
            for _ in 0..20 {
                let l = admissible(&mut rng, q);
                max = max.max(wronskian_identity_residual(q, l, opts)?);
            }
            Ok(finish(name, start, max, 1e-6, true, json!({ "points": 20 })))
        }
        "scattering" => {
            let (mut lemma, mut gap) = (0.0_f64, 0.0_f64);
            for _ in 0..50 {
                let l = admissible(&mut rng, q);
                let s = |l: Complex64| scattering_coefficients(q, l, bd, opts);
                let (a, a2, a3) = (s(l)?, s(l * Z2)?, s(l * Z3)?);
                lemma = lemma.max((a.coeffs.s2 * a2.coeffs.s2 * a3.coeffs.s2 - 1.0).norm());
                lemma = lemma.max((a3.coeffs.s2 * a.coeffs.s3 - 1.0).norm());
                gap = gap.max(a.representation_gap());
                gap = a.wronskian_system_residuals().into_iter().fold(gap, f64::max);
            }
            Ok(finish(name, start, lemma, 1e-8, gap <= 1e-6, json!({ "points": 50, "representation_gap": gap })))
        }
        "unitarity" => {
            let mut max = 0.0_f64;
            for _ in 0..50 {
                let l = admissible(&mut rng, q);
                let (a, b) = (coefficients_at(q, l, bd, opts)?, coefficients_at(q, l.conj(), bd, opts)?);
                max = max.max(unitarity_residual(&a, &b, l)?);
            }
            Ok(finish(name, start, max, 1e-6, true, json!({ "points": 50 })))
        }
        "jumps" => {
            let ts: Vec<f64> = (1..=6).map(|k| 0.5 * k as f64).collect();
            let mut max = 0.0_f64;
            let mut per_x = Vec::new();
            for index in [0, q.len() / 8, q.len() / 4] {
                let rep = jump_residuals(&JumpEvaluator::new(q, *bd, *opts, index), &ts)?;
                max = max.max(rep.max());
                per_x.push(json!({ "x": rep.x, "residuals": rep.entries }));
            }
            Ok(finish(name, start, max, 1e-5, true, json!(per_x)))
        }
        other => Err(Error::InvalidParameter(format!("unknown suite `{other}`; expected one of {SUITES:?} or all"))),
    }
}

/// A random nonzero `λ` inside the admissible disc of `q`.
fn admissible(rng: &mut ChaCha8Rng, q: &SampledPotential) -> Complex64 {
    let r = if q.is_compact() { 2.0 } else { 0.95 * q.a / 3.0 };
    loop {
        let l = disc(rng, r);
        if l.norm() > 0.05 * r {
            return l;
        }
    }
}

/// Runs `all` or a single suite.
pub fn verify(suite: &str, q: &SampledPotential, bd: &BoundaryData, opts: &JostOptions, seed: u64) -> Result<VerificationReport> {
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let suites = names.into_iter().map(|n| run_suite(n, q, bd, opts, seed)).collect::<Result<_>>()?;
    Ok(VerificationReport { seed, suites })
}
