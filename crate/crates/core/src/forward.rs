//! The forward scattering map: expansion coefficients `B_p`, scattering
//! coefficients `s₂, s₃`, matching coefficient `c₁` and bound states.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::raygeom::{I, SQRT3, Z1, Z2, Z3};
use crate::volterra::{cauchy_solve, jost_triple, jost_wronskian, JostOptions, SampledPotential};

/// Cauchy data `w(0)=0, w′(0)=α, w″(0)=β` and the boundary parameter `θ`,
/// with `C = θ̄α` so that `α = θC`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryData {
    pub alpha: f64,
    pub beta: f64,
    pub theta: Complex64,
    pub c: Complex64,
}

impl Default for BoundaryData {
    fn default() -> Self {
        Self { alpha: 1.0, beta: 0.0, theta: Complex64::new(1.0, 0.0), c: Complex64::new(1.0, 0.0) }
    }
}

impl BoundaryData {
    pub fn new(alpha: f64, beta: f64, theta: Complex64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidParameter("α and β must be finite".into()));
        }
        if (theta.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("|θ| = {} is not 1", theta.norm())));
        }
        if alpha == 0.0 && beta == 0.0 {
            return Err(Error::InvalidParameter("α and β both vanish".into()));
        }
        Ok(Self { alpha, beta, theta, c: theta.conj() * alpha })
    }

    /// `θ = e^{iφ}`.
    pub fn with_theta_arg(alpha: f64, beta: f64, phi: f64) -> Result<Self> {
        Self::new(alpha, beta, Complex64::from_polar(1.0, phi))
    }

    fn combine(&self, u: [Complex64; 2]) -> Complex64 {
        u[1] * self.alpha - u[0] * self.beta
    }
}

/// `(e_p(λ,0), e′_p(λ,0))` for `p = 1, 2, 3`.
pub fn jost_at_zero(q: &SampledPotential, lambda: Complex64, opts: &JostOptions) -> Result<[[Complex64; 2]; 3]> {
    let sols = jost_triple(q, lambda, opts)?;
    Ok(std::array::from_fn(|p| [sols[p].e[0], sols[p].de[0]]))
}

/// `(e*_p(λ,0), e*′_p(λ,0))` with `f*(λ) = conj f(conj λ)`.
pub fn jost_star_at_zero(q: &SampledPotential, lambda: Complex64, opts: &JostOptions) -> Result<[[Complex64; 2]; 3]> {
    let v = jost_at_zero(q, lambda.conj(), opts)?;
    Ok(v.map(|r| r.map(|z| z.conj())))
}

/// Largest relative deviation over the x grid of the Wronskian identities
/// `W₁₂ = √3λζ₃e*₂`, `W₂₃ = √3λζ₁e*₁`, `W₃₁ = √3λζ₂e*₃`.
pub fn wronskian_identity_residual(q: &SampledPotential, lambda: Complex64, opts: &JostOptions) -> Result<f64> {
    check_nonzero(lambda)?;
    let e = jost_triple(q, lambda, opts)?;
    let es = jost_triple(q, lambda.conj(), opts)?;
    let k = SQRT3 * lambda;
    let pairs = [(0, 1, Z3, 1), (1, 2, Z1, 0), (2, 0, Z2, 2)];
    let mut worst = 0.0_f64;
    for (a, b, z, s) in pairs {
        let w = jost_wronskian(&e[a], &e[b])?;
        for (j, wj) in w.iter().enumerate() {
            let want = k * z * es[s].e[j].conj();
            worst = worst.max((wj - want).norm() / want.norm().max(1.0));
        }
    }
    Ok(worst)
}

fn check_nonzero(lambda: Complex64) -> Result<()> {
    if lambda.norm() == 0.0 {
        return Err(Error::InvalidParameter("λ = 0 is excluded".into()));
    }
    Ok(())
}

/// Rejects `B₁` that vanishes to rounding relative to its own terms.
fn check_b1(lambda: Complex64, b1: Complex64, e1_star: [Complex64; 2], bd: &BoundaryData) -> Result<()> {
    let terms = (bd.alpha * e1_star[1]).norm() + (bd.beta * e1_star[0]).norm();
    let scale = terms / (3.0 * lambda.norm_sqr());
    if b1.norm() == 0.0 || b1.norm() <= 1e-13 * scale {
        return Err(Error::ZeroDenominator(format!("B₁({lambda}) = {b1}")));
    }
    Ok(())
}

fn b_from_star(lambda: Complex64, star: &[[Complex64; 2]; 3], bd: &BoundaryData) -> [Complex64; 3] {
    let k = 1.0 / (3.0 * lambda * lambda);
    [Z1 * k * bd.combine(star[0]), Z2 * k * bd.combine(star[2]), Z3 * k * bd.combine(star[1])]
}

/// `(B₁, B₂, B₃)` with `B₁ = (ζ₁/3λ²)(α e*′₁ − β e*₁)` at `x = 0`,
/// `B₂` built from `e*₃` and `B₃` from `e*₂`.
pub fn expansion_coefficients(
    q: &SampledPotential,
    lambda: Complex64,
    bd: &BoundaryData,
    opts: &JostOptions,
) -> Result<[Complex64; 3]> {
    check_nonzero(lambda)?;
    let star = jost_star_at_zero(q, lambda, opts)?;
    Ok(b_from_star(lambda, &star, bd))
}

/// Max over the grid of `|Σ_p B_p e_p − w|` relative to `‖w‖∞`.
pub fn expansion_residual(q: &SampledPotential, lambda: Complex64, bd: &BoundaryData, opts: &JostOptions) -> Result<f64> {
    let b = expansion_coefficients(q, lambda, bd, opts)?;
    let sols = jost_triple(q, lambda, opts)?;
    let w = cauchy_solve(q, lambda, bd.alpha, bd.beta)?;
    let scale = w.w.iter().fold(0.0_f64, |m, v| m.max(v.norm())).max(1e-300);
    Ok((0..w.w.len())
        .map(|j| (b[0] * sols[0].e[j] + b[1] * sols[1].e[j] + b[2] * sols[2].e[j] - w.w[j]).norm())
        .fold(0.0, f64::max)
        / scale)
}

/// The triple `(s₂, s₃, c₁)` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients {
    pub s2: Complex64,
    pub s3: Complex64,
    pub c1: Complex64,
}

impl Coefficients {
    /// Values at `conj λ` turned into `f*` values at `λ`.
    pub fn star(&self) -> Self {
        Self { s2: self.s2.conj(), s3: self.s3.conj(), c1: self.c1.conj() }
    }
}

/// Everything the forward map produces at a single `λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Scattering {
    pub lambda: Complex64,
    pub b: [Complex64; 3],
    pub coeffs: Coefficients,
    /// `s₂, s₃` from the Wronskian representation.
    pub s2_wronskian: Complex64,
    pub s3_wronskian: Complex64,
    /// `(e_p, e′_p)` at `x = 0`.
    pub jost: [[Complex64; 2]; 3],
    /// `(e*_p, e*′_p)` at `x = 0`.
    pub jost_star: [[Complex64; 2]; 3],
    pub theta: Complex64,
}

/// `s₂ = B₂/B₁`, `s₃ = B₃/B₁`, `c₁ = C/B₁`, together with the alternative
/// representation of `s₂, s₃` through `c₁` and the Jost values.
pub fn scattering_coefficients(
    q: &SampledPotential,
    lambda: Complex64,
    bd: &BoundaryData,
    opts: &JostOptions,
) -> Result<Scattering> {
    check_nonzero(lambda)?;
    let jost_star = jost_star_at_zero(q, lambda, opts)?;
    let jost = if lambda.im == 0.0 {
        jost_star.map(|r| r.map(|z| z.conj()))
    } else {
        jost_at_zero(q, lambda, opts)?
    };
    let b = b_from_star(lambda, &jost_star, bd);
    check_b1(lambda, b[0], jost_star[0], bd)?;
    let coeffs = Coefficients { s2: b[1] / b[0], s3: b[2] / b[0], c1: bd.c / b[0] };
    let r = SQRT3 * lambda;
    let den = r * jost_star[0][0];
    let tc = bd.theta * coeffs.c1;
    let s2_wronskian = (r * Z2 * jost_star[2][0] - tc * jost[2][0]) / den;
    let s3_wronskian = (r * Z3 * jost_star[1][0] + tc * jost[1][0]) / den;
    Ok(Scattering { lambda, b, coeffs, s2_wronskian, s3_wronskian, jost, jost_star, theta: bd.theta })
}

impl Scattering {
    /// Largest relative gap between the two representations of `s₂, s₃`.
    pub fn representation_gap(&self) -> f64 {
        let g2 = (self.s2_wronskian - self.coeffs.s2).norm() / self.coeffs.s2.norm().max(1.0);
        let g3 = (self.s3_wronskian - self.coeffs.s3).norm() / self.coeffs.s3.norm().max(1.0);
        g2.max(g3)
    }

    /// Residuals of the three Wronskian relations obtained from the
    /// boundary conditions, each relative to its largest term.
    pub fn wronskian_system_residuals(&self) -> [f64; 3] {
        let r = SQRT3 * self.lambda;
        let [s2, s3, c1] = [self.coeffs.s2, self.coeffs.s3, self.coeffs.c1];
        let tc = self.theta * c1;
        let e: [Complex64; 3] = std::array::from_fn(|p| self.jost[p][0]);
        let es: [Complex64; 3] = std::array::from_fn(|p| self.jost_star[p][0]);
        let rows = [
            [-r * Z3 * es[1] * s2, r * Z2 * es[2] * s3, tc * e[0]],
            [-r * es[0] * s3, r * Z3 * es[1], tc * e[1]],
            [r * es[0] * s2, -r * Z2 * es[2], tc * e[2]],
        ];
        rows.map(|t| {
            let m = t.iter().fold(0.0_f64, |m, v| m.max(v.norm())).max(1e-300);
            (t[0] + t[1] + t[2]).norm() / m
        })
    }
}

/// `|ζ₃s₂s₃* + ζ₂s₃s₂* + 1 − c₁c₁*/(3λ²)|`, where `at_conj` holds the
/// coefficients computed at `conj λ`.
pub fn unitarity_residual(at: &Coefficients, at_conj: &Coefficients, lambda: Complex64) -> Result<f64> {
    check_nonzero(lambda)?;
    let s = at_conj.star();
    Ok((Z3 * at.s2 * s.s3 + Z2 * at.s3 * s.s2 + 1.0 - at.c1 * s.c1 / (3.0 * lambda * lambda)).norm())
}

/// Direction of the ray carrying the points `λ_n = −κ_nζ₃`.
pub const LAMBDA_RAY: Complex64 = Complex64::new(0.5, crate::raygeom::SQRT3_2);
/// Direction of the ray carrying the points `μ_n = κ_nζ₂`.
pub const MU_RAY: Complex64 = Z2;

/// Bound states: joint zeros of `e₁(λ,0)` and `e′₁(λ,0)` in `Ω₂`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BoundStateSet {
    pub kappas: Vec<f64>,
    /// `b_n = B′₃(κ_n)/B₁(κ_n)`.
    pub b: Vec<Complex64>,
    /// `b̃_n = B′₂(−κ_n)/B₁(−κ_n)`.
    pub b_tilde: Vec<Complex64>,
    /// Zeros of `e₁(λ,0)` found on one ray only, or where `e′₁(λ,0)` does
    /// not vanish.
    pub anomalies: Vec<Complex64>,
}

impl BoundStateSet {
    /// `(λ_n, μ_n) = (−κ_nζ₃, κ_nζ₂)`.
    pub fn lambda_points(&self) -> Vec<(Complex64, Complex64)> {
        self.kappas.iter().map(|&k| (LAMBDA_RAY * k, MU_RAY * k)).collect()
    }
}

/// Scan and acceptance settings for [`find_bound_states`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundStateOptions {
    pub scan_points: usize,
    /// Acceptance threshold on `|e₁|` and `|e′₁|/κ` at a polished root.
    pub tol: f64,
    /// Relative tolerance for matching roots across the two rays.
    pub match_tol: f64,
}

impl Default for BoundStateOptions {
    fn default() -> Self {
        Self { scan_points: 400, tol: 1e-6, match_tol: 1e-5 }
    }
}

fn e1_at_zero(q: &SampledPotential, lambda: Complex64, opts: &JostOptions) -> Result<[Complex64; 2]> {
    let s = crate::volterra::jost_solve(q, lambda, 1, opts)?;
    Ok([s.e[0], s.de[0]])
}

fn golden_min(mut a: f64, mut b: f64, f: &mut dyn FnMut(f64) -> Result<f64>) -> Result<f64> {
    let g = 0.5 * (5.0_f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    for _ in 0..200 {
        if (b - a).abs() <= 1e-14 * b.abs().max(1.0) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d)?;
        }
    }
    Ok(0.5 * (a + b))
}

/// Local minima of `|e₁(κ·dir, 0)|` polished to roots; returns
/// `(κ, |e₁|, |e′₁|/κ)` for each candidate.
fn ray_roots(
    q: &SampledPotential,
    dir: Complex64,
    radius: f64,
    opts: &JostOptions,
    bs: &BoundStateOptions,
) -> Result<Vec<(f64, f64, f64)>> {
    let n = bs.scan_points.max(8);
    let h = radius / n as f64;
    let vals: Vec<f64> =
        (1..=n).map(|j| e1_at_zero(q, dir * (h * j as f64), opts).map(|v| v[0].norm())).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for j in 1..vals.len() - 1 {
        if vals[j] < vals[j - 1] && vals[j] <= vals[j + 1] && vals[j] < 0.5 {
            let lo = h * j as f64;
            let hi = h * (j + 2) as f64;
            let k = golden_min(lo, hi, &mut |k| e1_at_zero(q, dir * k, opts).map(|v| v[0].norm()))?;
            let v = e1_at_zero(q, dir * k, opts)?;
            out.push((k, v[0].norm(), v[1].norm() / k));
        }
    }
    Ok(out)
}

fn richardson_derivative(f: &mut dyn FnMut(f64) -> Result<Complex64>, x: f64, h: f64) -> Result<Complex64> {
    let d = |f: &mut dyn FnMut(f64) -> Result<Complex64>, h: f64| -> Result<Complex64> {
        Ok((f(x + h)? - f(x - h)?) / (2.0 * h))
    };
    let d1 = d(f, h)?;
    let d2 = d(f, 0.5 * h)?;
    Ok((d2 * 4.0 - d1) / 3.0)
}

/// Scans the rays `λ = −κζ₃` and `λ = κζ₂`, `0 < κ ≤ radius`, for joint
/// zeros of `e₁(λ,0)` and `e′₁(λ,0)` and computes the norming constants.
pub fn find_bound_states(
    q: &SampledPotential,
    bd: &BoundaryData,
    radius: f64,
    opts: &JostOptions,
    bs: &BoundStateOptions,
) -> Result<BoundStateSet> {
    if !(radius > 0.0) {
        return Err(Error::InvalidParameter(format!("search radius {radius} must be positive")));
    }
    let on_lambda = ray_roots(q, LAMBDA_RAY, radius, opts, bs)?;
    let on_mu = ray_roots(q, MU_RAY, radius, opts, bs)?;
    let joint = |r: &(f64, f64, f64)| r.1 <= bs.tol && r.2 <= bs.tol;
    let mut set = BoundStateSet::default();
    let mut used = vec![false; on_mu.len()];
    for r in &on_lambda {
        if !joint(r) {
            if r.1 <= bs.tol {
                set.anomalies.push(LAMBDA_RAY * r.0);
            }
            continue;
        }
        let partner = on_mu.iter().position(|m| joint(m) && (m.0 - r.0).abs() <= bs.match_tol * r.0);
        match partner {
            Some(i) => {
                used[i] = true;
                set.kappas.push(0.5 * (r.0 + on_mu[i].0));
            }
            None => set.anomalies.push(LAMBDA_RAY * r.0),
        }
    }
    for (i, m) in on_mu.iter().enumerate() {
        if !used[i] && m.1 <= bs.tol {
            set.anomalies.push(MU_RAY * m.0);
        }
    }
    set.kappas.sort_by(f64::total_cmp);
    for &k in &set.kappas {
        let h = 1e-4 * k;
        let b1 = expansion_coefficients(q, Complex64::new(k, 0.0), bd, opts)?[0];
        let db3 = richardson_derivative(&mut |t| Ok(expansion_coefficients(q, Complex64::new(t, 0.0), bd, opts)?[2]), k, h)?;
        let b1m = expansion_coefficients(q, Complex64::new(-k, 0.0), bd, opts)?[0];
        let db2 = richardson_derivative(&mut |t| Ok(expansion_coefficients(q, Complex64::new(t, 0.0), bd, opts)?[1]), -k, h)?;
        set.b.push(db3 / b1);
        set.b_tilde.push(db2 / b1m);
    }
    Ok(set)
}

/// `(s₂, s₃, c₁)` from the expansion coefficients alone.
pub fn coefficients_at(q: &SampledPotential, lambda: Complex64, bd: &BoundaryData, opts: &JostOptions) -> Result<Coefficients> {
    check_nonzero(lambda)?;
    let star = jost_star_at_zero(q, lambda, opts)?;
    let b = b_from_star(lambda, &star, bd);
    check_b1(lambda, b[0], star[0], bd)?;
    Ok(Coefficients { s2: b[1] / b[0], s3: b[2] / b[0], c1: bd.c / b[0] })
}

/// Direction `iζ_{ℓ+1}` of data line `ℓ ∈ {0, 1, 2}`. Line `ℓ` sampled at
/// `t > 0` is the ray at `90° + 120°ℓ`; `t < 0` gives the opposite ray.
pub fn line_direction(line: usize) -> Complex64 {
    I * crate::raygeom::ZETA[line % 3]
}

/// Line index of `λζ₂` for `λ` on line `ℓ` (same parameter `t`).
pub fn rotated_line(line: usize) -> usize {
    (line + 1) % 3
}

/// Line index of `conj λ` for `λ` on line `ℓ` (parameter `−t`).
pub fn conjugate_line(line: usize) -> usize {
    (3 - line) % 3
}

/// One sample of the data on a line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RaySample {
    pub t: f64,
    pub s2_re: f64,
    pub s2_im: f64,
    pub c1_re: f64,
    pub c1_im: f64,
}

impl RaySample {
    pub fn s2(&self) -> Complex64 {
        Complex64::new(self.s2_re, self.s2_im)
    }

    pub fn c1(&self) -> Complex64 {
        Complex64::new(self.c1_re, self.c1_im)
    }
}

/// Scattering data: `s₂` and `c₁` on the three lines `t·iζ_k`, bound-state
/// positions and norming constants, boundary data and validity radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatteringData {
    pub rays: Vec<Vec<RaySample>>,
    pub kappas: Vec<f64>,
    pub b: Vec<[f64; 2]>,
    pub b_tilde: Vec<[f64; 2]>,
    pub alpha: f64,
    pub beta: f64,
    pub theta: [f64; 2],
    pub a: f64,
    pub radius: f64,
}

/// Symmetric sampling `t = ±(j − ½)T/M`, `j = 1..M`, ascending.
pub fn line_grid(t_max: f64, m: usize) -> Result<Vec<f64>> {
    if !(t_max > 0.0) || m == 0 {
        return Err(Error::InvalidParameter(format!("line grid needs T > 0 and M ≥ 1 (T = {t_max}, M = {m})")));
    }
    let h = t_max / m as f64;
    let pos: Vec<f64> = (1..=m).map(|j| (j as f64 - 0.5) * h).collect();
    Ok(pos.iter().rev().map(|t| -t).chain(pos.iter().copied()).collect())
}

impl ScatteringData {
    pub fn boundary(&self) -> Result<BoundaryData> {
        BoundaryData::new(self.alpha, self.beta, Complex64::new(self.theta[0], self.theta[1]))
    }

    pub fn b_values(&self) -> Vec<Complex64> {
        self.b.iter().map(|v| Complex64::new(v[0], v[1])).collect()
    }

    pub fn b_tilde_values(&self) -> Vec<Complex64> {
        self.b_tilde.iter().map(|v| Complex64::new(v[0], v[1])).collect()
    }

    /// Samples per line.
    pub fn len(&self) -> usize {
        self.rays.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Index of the sample with parameter `−t` on a symmetric grid.
    pub fn mirror(&self, j: usize) -> usize {
        self.len() - 1 - j
    }

    /// `λ` of sample `j` on line `ℓ`.
    pub fn lambda(&self, line: usize, j: usize) -> Complex64 {
        line_direction(line) * self.rays[line][j].t
    }

    /// The positive parameters `t` of the grid, ascending.
    pub fn positive_t(&self) -> Vec<f64> {
        self.rays[0].iter().map(|r| r.t).filter(|&t| t > 0.0).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Samples the data on the three lines for `|t| ≤ t_max` with `m` points per
/// half-line and attaches the bound states.
pub fn scattering_data(
    q: &SampledPotential,
    bd: &BoundaryData,
    t_max: f64,
    m: usize,
    bound_states: &BoundStateSet,
    opts: &JostOptions,
) -> Result<ScatteringData> {
    use rayon::prelude::*;
    let ts = line_grid(t_max, m)?;
    if !q.is_compact() && t_max >= q.a / 3.0 {
        return Err(Error::DomainViolation { modulus: t_max, limit: q.a / 3.0 });
    }
    let rays = (0..3)
        .map(|line| {
            ts.par_iter()
                .map(|&t| {
                    let c = coefficients_at(q, line_direction(line) * t, bd, opts)?;
                    Ok(RaySample { t, s2_re: c.s2.re, s2_im: c.s2.im, c1_re: c.c1.re, c1_im: c.c1.im })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let pair = |z: &Complex64| [z.re, z.im];
    Ok(ScatteringData {
        rays,
        kappas: bound_states.kappas.clone(),
        b: bound_states.b.iter().map(pair).collect(),
        b_tilde: bound_states.b_tilde.iter().map(pair).collect(),
        alpha: bd.alpha,
        beta: bd.beta,
        theta: [bd.theta.re, bd.theta.im],
        a: q.a,
        radius: if q.is_compact() { t_max } else { q.a / 3.0 },
    })
}

/// Tolerances for [`validate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationOptions {
    /// Bound on `|s₂(λ)s₂(λζ₂)s₂(λζ₃) − 1|`.
    pub product_tol: f64,
    /// Bound on the unitarity residual.
    pub unitarity_tol: f64,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        Self { product_tol: 1e-6, unitarity_tol: 1e-6 }
    }
}

/// Largest residuals found by a successful [`validate`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ValidationReport {
    pub product_residual: f64,
    pub unitarity_residual: f64,
}

fn reject(condition: &'static str, detail: String) -> Error {
    Error::Validation { condition, detail }
}

pub const CONDITION_KAPPAS: &str = "(i) bound-state positions";
pub const CONDITION_NORMING: &str = "(ii) nonzero norming constants";
pub const CONDITION_SCATTERING: &str = "(iii) scattering function";
pub const CONDITION_MATCHING: &str = "(iv) matching coefficient";
pub const CONDITION_UNITARITY: &str = "(v) unitarity";

/// Checks the admissibility conditions (i)–(v) on sampled data and names
/// the first one that fails.
pub fn validate(data: &ScatteringData, opts: &ValidationOptions) -> Result<ValidationReport> {
    let n = data.kappas.len();
    if data.kappas.iter().any(|k| !(k.is_finite() && *k > 0.0)) || data.kappas.windows(2).any(|w| w[0] >= w[1]) {
        return Err(reject(CONDITION_KAPPAS, format!("κ = {:?} is not a strictly increasing positive set", data.kappas)));
    }
    if data.b.len() != n || data.b_tilde.len() != n {
        return Err(reject(
            CONDITION_NORMING,
            format!("{} positions but {} and {} norming constants", n, data.b.len(), data.b_tilde.len()),
        ));
    }
    for (name, vals) in [("b", &data.b), ("b̃", &data.b_tilde)] {
        if let Some(i) = vals.iter().position(|v| !(v[0].is_finite() && v[1].is_finite()) || (v[0] == 0.0 && v[1] == 0.0)) {
            return Err(reject(CONDITION_NORMING, format!("{name}_{} = {:?}", i + 1, vals[i])));
        }
    }
    if data.rays.len() != 3 || data.is_empty() {
        return Err(reject(CONDITION_SCATTERING, "expected three non-empty lines".into()));
    }
    let m = data.len();
    for line in &data.rays {
        if line.len() != m {
            return Err(reject(CONDITION_SCATTERING, "lines have different lengths".into()));
        }
        for (j, r) in line.iter().enumerate() {
            if r.t != data.rays[0][j].t {
                return Err(reject(CONDITION_SCATTERING, format!("parameter grids differ at sample {j}")));
            }
            if r.t == 0.0 || r.t != -line[m - 1 - j].t {
                return Err(reject(CONDITION_SCATTERING, format!("grid is not symmetric about 0 at t = {}", r.t)));
            }
            if !r.s2().is_finite() || r.s2().norm() == 0.0 {
                return Err(reject(CONDITION_SCATTERING, format!("s₂ = {} at t = {}", r.s2(), r.t)));
            }
            if !r.c1().is_finite() || r.c1().norm() == 0.0 {
                return Err(reject(CONDITION_MATCHING, format!("c₁ = {} at t = {}", r.c1(), r.t)));
            }
        }
    }
    let mut report = ValidationReport::default();
    for j in 0..m {
        let prod = data.rays[0][j].s2() * data.rays[1][j].s2() * data.rays[2][j].s2();
        report.product_residual = report.product_residual.max((prod - 1.0).norm());
    }
    if report.product_residual > opts.product_tol {
        return Err(reject(
            CONDITION_SCATTERING,
            format!("|s₂(λ)s₂(λζ₂)s₂(λζ₃) − 1| = {:.3e}", report.product_residual),
        ));
    }
    let coeffs = |line: usize, j: usize| {
        let r = &data.rays[line][j];
        Coefficients { s2: r.s2(), s3: 1.0 / data.rays[(line + 2) % 3][j].s2(), c1: r.c1() }
    };
    for line in 0..3 {
        for j in 0..m {
            let at = coeffs(line, j);
            let at_conj = coeffs(conjugate_line(line), data.mirror(j));
            let res = unitarity_residual(&at, &at_conj, data.lambda(line, j))?;
            if !(res <= opts.unitarity_tol) {
                return Err(reject(
                    CONDITION_UNITARITY,
                    format!("residual {res:.3e} at λ = {}", data.lambda(line, j)),
                ));
            }
            report.unitarity_residual = report.unitarity_residual.max(res);
        }
    }
    Ok(report)
}
