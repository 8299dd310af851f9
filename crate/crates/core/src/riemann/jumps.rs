//! Direct-problem check of the jump relations between `ψ_p` and the
//! auxiliary functions `f_{p,s}`, `g_{p,s}` built from Wronskians of
//! `ω_p = w/B_p` with the Jost solutions.

use num_complex::Complex64;

use crate::error::Result;
use crate::forward::{coefficients_at, expansion_coefficients, BoundaryData};
use crate::raygeom::{I, SQRT3, Z1, Z2, Z3, ZETA};
use crate::volterra::{cauchy_solve, jost_triple, JostOptions, SampledPotential};

/// Jost values, Cauchy solution and expansion coefficients at one `(λ, x)`.
#[derive(Debug, Clone, Copy)]
struct Bundle {
    e: [Complex64; 3],
    de: [Complex64; 3],
    w: Complex64,
    dw: Complex64,
    b: [Complex64; 3],
}

/// Evaluates the auxiliary functions at the potential node `index`.
pub struct JumpEvaluator<'a> {
    q: &'a SampledPotential,
    bd: BoundaryData,
    opts: JostOptions,
    index: usize,
    pub x: f64,
}

impl<'a> JumpEvaluator<'a> {
    pub fn new(q: &'a SampledPotential, bd: BoundaryData, opts: JostOptions, index: usize) -> Self {
        Self { q, bd, opts, index, x: q.grid[index] }
    }

    fn bundle(&self, lambda: Complex64) -> Result<Bundle> {
        let sols = jost_triple(self.q, lambda, &self.opts)?;
        let w = cauchy_solve(self.q, lambda, self.bd.alpha, self.bd.beta)?;
        let b = expansion_coefficients(self.q, lambda, &self.bd, &self.opts)?;
        let j = self.index;
        Ok(Bundle {
            e: std::array::from_fn(|p| sols[p].e[j]),
            de: std::array::from_fn(|p| sols[p].de[j]),
            w: w.w[j],
            dw: w.dw[j],
            b,
        })
    }

    /// `ψ_p(λ,x)` for `p = 1, 2, 3`.
    pub fn psi(&self, p: usize, lambda: Complex64) -> Result<Complex64> {
        let sols = jost_triple(self.q, lambda, &self.opts)?;
        Ok(sols[p - 1].psi[self.index])
    }

    /// `ω_{p,s} = {w/B_p, e_s}`.
    pub fn omega(&self, p: usize, s: usize, lambda: Complex64) -> Result<Complex64> {
        let v = self.bundle(lambda)?;
        let bp = v.b[p - 1];
        Ok((v.w * v.de[s - 1] - v.dw * v.e[s - 1]) / bp)
    }

    /// `ω*_{p,s}(λ) = conj ω_{p,s}(conj λ)`.
    pub fn omega_star(&self, p: usize, s: usize, lambda: Complex64) -> Result<Complex64> {
        Ok(self.omega(p, s, lambda.conj())?.conj())
    }

    fn pref(&self, zeta: Complex64, k: usize, lambda: Complex64) -> Complex64 {
        zeta / (SQRT3 * lambda) * (-I * lambda * ZETA[k - 1] * self.x).exp()
    }

    pub fn f12(&self, l: Complex64) -> Result<Complex64> {
        Ok(self.pref(Z3, 2, l) * self.omega_star(1, 2, l)?)
    }

    pub fn f23(&self, l: Complex64) -> Result<Complex64> {
        Ok(self.pref(Z1, 1, l) * self.omega_star(2, 3, l)?)
    }

    pub fn f31(&self, l: Complex64) -> Result<Complex64> {
        Ok(self.pref(Z2, 3, l) * self.omega_star(3, 1, l)?)
    }

    pub fn g13(&self, l: Complex64) -> Result<Complex64> {
        Ok(-self.pref(Z2, 3, l) * self.omega_star(1, 3, l)?)
    }

    pub fn g21(&self, l: Complex64) -> Result<Complex64> {
        Ok(-self.pref(Z3, 2, l) * self.omega_star(2, 1, l)?)
    }

    pub fn g32(&self, l: Complex64) -> Result<Complex64> {
        Ok(-self.pref(Z1, 1, l) * self.omega_star(3, 2, l)?)
    }

    /// `s₂*(μ)` and `s₃*(μ)`.
    pub fn s_star(&self, mu: Complex64) -> Result<(Complex64, Complex64)> {
        let c = coefficients_at(self.q, mu.conj(), &self.bd, &self.opts)?;
        Ok((c.s2.conj(), c.s3.conj()))
    }

    fn phase(&self, a: Complex64, b: Complex64, l: Complex64) -> Complex64 {
        (I * l * (a - b) * self.x).exp()
    }

    /// `d(λ,x) = −ζ₂e^{λ√3x}s₂*(λζ₃)`.
    pub fn d(&self, l: Complex64) -> Result<Complex64> {
        Ok(-Z2 * (l * SQRT3 * self.x).exp() * self.s_star(l * Z3)?.0)
    }
}

/// Largest relative residual of each identity over the sampled rays.
#[derive(Debug, Clone, PartialEq)]
pub struct JumpReport {
    pub x: f64,
    pub entries: Vec<(&'static str, f64)>,
}

impl JumpReport {
    pub fn max(&self) -> f64 {
        self.entries.iter().map(|e| e.1).fold(0.0, f64::max)
    }
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

/// Evaluates the six half-plane jump relations on their rays, the two
/// mirror gluing identities, and the relation on the ray `−it` that defines
/// `d`, at the given parameters `t > 0`.
pub fn jump_residuals(ev: &JumpEvaluator, ts: &[f64]) -> Result<JumpReport> {
    let mut worst = [0.0_f64; 9];
    for &t in ts {
        let r30 = -I * Z2 * t;
        let r150 = -I * Z3 * t;
        let r270 = -I * t;
        let (p1_30, p2_30) = (ev.psi(1, r30)?, ev.psi(2, r30)?);
        let (p1_150, p3_150) = (ev.psi(1, r150)?, ev.psi(3, r150)?);
        let (p2_270, p3_270) = (ev.psi(2, r270)?, ev.psi(3, r270)?);
        let vals = [
            rel(Z3 * ev.s_star(r30)?.1 * ev.phase(Z1, Z2, r30) * p1_30, p2_30 - ev.f12(r30)?),
            rel(Z3 * ev.s_star(r150 * Z3)?.1 * ev.phase(Z3, Z1, r150) * p3_150, p1_150 - ev.f23(r150)?),
            rel(Z3 * ev.s_star(r270 * Z2)?.1 * ev.phase(Z2, Z3, r270) * p2_270, p3_270 - ev.f31(r270)?),
            rel(Z2 * ev.s_star(r150)?.0 * ev.phase(Z1, Z3, r150) * p1_150, p3_150 - ev.g13(r150)?),
            rel(Z2 * ev.s_star(r270 * Z3)?.0 * ev.phase(Z3, Z2, r270) * p3_270, p2_270 - ev.g21(r270)?),
            rel(Z2 * ev.s_star(r30 * Z2)?.0 * ev.phase(Z2, Z1, r30) * p2_30, p1_30 - ev.g32(r30)?),
            rel(ev.g32(I * Z3 * t)?, ev.g21(I * Z2 * t)?),
            rel(ev.f23(I * Z2 * t)?, ev.f31(I * Z3 * t)?),
            rel(ev.g21(r270)?, ev.d(r270)? * ev.f31(r270)?),
        ];
        for (w, v) in worst.iter_mut().zip(vals) {
            *w = w.max(v);
        }
    }
    let names = [
        "psi2 jump on 30deg (f12)",
        "psi1 jump on 150deg (f23)",
        "psi3 jump on 270deg (f31)",
        "psi3 jump on 150deg (g13)",
        "psi2 jump on 270deg (g21)",
        "psi1 jump on 30deg (g32)",
        "mirror gluing g32 = g21",
        "mirror gluing f23 = f31",
        "G2 = d F3 on 270deg",
    ];
    Ok(JumpReport { x: ev.x, entries: names.into_iter().zip(worst).collect() })
}
