//! The fundamental system `s₀, s₁, s₂` of `y‴ = y`.
//!
//! `s_p(z) = (1/3) Σ_k ζ_k^{−p} e^{zζ_k}`, evaluated by its Taylor series near
//! the origin and by the exponential sum elsewhere.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::raygeom::{SQRT3, SQRT3_2, Z1, Z2, Z3, ZETA};

/// Below this modulus the Taylor series is used.
pub const CROSSOVER: f64 = 1.0;
/// Number of Taylor terms per function.
pub const TAYLOR_TERMS: usize = 25;

/// `s_p(z)` for `p ∈ {0, 1, 2}` (taken modulo 3).
pub fn eval_s(p: usize, z: Complex64) -> Complex64 {
    if z.norm() < CROSSOVER {
        taylor_s(p, z)
    } else {
        exp_sum_s(p, z)
    }
}

/// All three values `(s₀(z), s₁(z), s₂(z))`.
pub fn eval_all(z: Complex64) -> [Complex64; 3] {
    if z.norm() < CROSSOVER {
        [taylor_s(0, z), taylor_s(1, z), taylor_s(2, z)]
    } else {
        let e = [z.exp(), (z * Z2).exp(), (z * Z3).exp()];
        let third = 1.0 / 3.0;
        [
            (e[0] + e[1] + e[2]) * third,
            (e[0] + Z3 * e[1] + Z2 * e[2]) * third,
            (e[0] + Z2 * e[1] + Z3 * e[2]) * third,
        ]
    }
}

/// Exponential-sum form of `s_p`.
pub fn exp_sum_s(p: usize, z: Complex64) -> Complex64 {
    let p = p % 3;
    ZETA.iter().map(|&zk| zk.conj().powu(p as u32) * (z * zk).exp()).sum::<Complex64>() / 3.0
}

/// Taylor form `Σ_n z^{3n+p}/(3n+p)!` truncated at [`TAYLOR_TERMS`] terms.
pub fn taylor_s(p: usize, z: Complex64) -> Complex64 {
    let p = p % 3;
    let mut term = Complex64::new(1.0, 0.0);
    for j in 1..=p {
        term = term * z / j as f64;
    }
    let z3 = z * z * z;
    let mut sum = term;
    for n in 1..TAYLOR_TERMS {
        let m = 3 * n + p;
        term = term * z3 / ((m - 2) * (m - 1) * m) as f64;
        sum += term;
    }
    sum
}

/// `s_p(z) / z^p`, free of cancellation near `z = 0`.
pub fn reduced_s(p: usize, z: Complex64) -> Complex64 {
    let p = p % 3;
    if z.norm() < CROSSOVER {
        let z3 = z * z * z;
        let mut term = Complex64::new(1.0 / (1..=p).product::<usize>() as f64, 0.0);
        let mut sum = term;
        for n in 1..TAYLOR_TERMS {
            let m = 3 * n + p;
            term = term * z3 / ((m - 2) * (m - 1) * m) as f64;
            sum += term;
        }
        sum
    } else {
        exp_sum_s(p, z) / z.powu(p as u32)
    }
}

/// Derivative of `s_p` computed by differentiating the Taylor series term by
/// term; independent of the derivative cycle it is used to check.
fn taylor_derivative(p: usize, z: Complex64) -> Complex64 {
    let p = p % 3;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut fact = 1.0_f64;
    for n in 0..40 {
        let m = 3 * n + p;
        if n > 0 {
            fact *= ((m - 2) * (m - 1) * m) as f64;
        } else {
            fact = (1..=m).product::<usize>() as f64;
        }
        if m > 0 {
            sum += z.powu((m - 1) as u32) * (m as f64 / fact);
        }
    }
    sum
}

/// `d(λ) = e^{|β|} cosh(√3α/2)` for `λ = α + iβ`, which bounds `|s_p(iλ)|`.
pub fn growth_bound(lambda: Complex64) -> f64 {
    lambda.im.abs().exp() * (SQRT3_2 * lambda.re).cosh()
}

/// A triple `(s₀, s₁, s₂)` at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigValue {
    pub z: Complex64,
    pub s: [Complex64; 3],
}

impl TrigValue {
    pub fn at(z: Complex64) -> Self {
        Self { z, s: eval_all(z) }
    }

    /// `s₀³ + s₁³ + s₂³ − 3s₀s₁s₂ − 1`.
    pub fn main_identity_residual(&self) -> f64 {
        let [a, b, c] = self.s;
        (a * a * a + b * b * b + c * c * c - 3.0 * a * b * c - 1.0).norm()
    }
}

/// Residuals of the identities satisfied by the system, keyed by name.
///
/// The product formulas are reported in the general form
/// `3 s_a(z) s_b(w) = Σ_j ζ_j^{−b} s_{a+b}(z + ζ_j w)` for all nine pairs.
pub fn identity_residuals(z: Complex64, w: Complex64) -> BTreeMap<String, f64> {
    let mut out = BTreeMap::new();
    let s = |p: usize, x: Complex64| eval_s(p, x);
    let sz = eval_all(z);
    let sw = eval_all(w);
    let one = Complex64::new(1.0, 0.0);

    for p in 0..3 {
        let prev = (p + 2) % 3;
        out.insert(format!("i: s{p}' = s{prev}"), (taylor_derivative(p, z) - sz[prev]).norm());
        out.insert(format!("ii: reality s{p}"), (sz[p].conj() - s(p, z.conj())).norm());
        out.insert(format!("iii: s{p}(zeta2 z) = zeta2^{p} s{p}(z)"), (s(p, Z2 * z) - Z2.powu(p as u32) * sz[p]).norm());
    }
    for (k, &zk) in ZETA.iter().enumerate() {
        let rhs = sz[0] + zk * sz[1] + zk * zk * sz[2];
        out.insert(format!("iv: Euler k={}", k + 1), ((z * zk).exp() - rhs).norm());
    }
    let s0 = eval_all(Complex64::new(0.0, 0.0));
    let d0 = [taylor_derivative(0, 0.0.into()), taylor_derivative(1, 0.0.into()), taylor_derivative(2, 0.0.into())];
    let v = (s0[0] - one).norm() + s0[1].norm() + s0[2].norm() + d0[0].norm() + (d0[1] - one).norm() + d0[2].norm();
    out.insert("v: initial data".into(), v);
    out.insert("vi: main identity".into(), TrigValue { z, s: sz }.main_identity_residual());

    let zw = eval_all(z + w);
    let add = [
        sz[0] * sw[0] + sz[1] * sw[2] + sz[2] * sw[1],
        sz[0] * sw[1] + sz[1] * sw[0] + sz[2] * sw[2],
        sz[0] * sw[2] + sz[1] * sw[1] + sz[2] * sw[0],
    ];
    for p in 0..3 {
        out.insert(format!("vii: addition s{p}"), (zw[p] - add[p]).norm());
    }
    for a in 0..3 {
        for b in 0..3 {
            let c = (a + b) % 3;
            let rhs: Complex64 = ZETA.iter().map(|&zj| zj.conj().powu(b as u32) * s(c, z + zj * w)).sum();
            out.insert(format!("viii: 3 s{a}(z) s{b}(w)"), (3.0 * sz[a] * sw[b] - rhs).norm());
        }
    }
    let two = eval_all(2.0 * z);
    let neg = eval_all(-z);
    out.insert("ix: 3 s0^2".into(), (3.0 * sz[0] * sz[0] - two[0] - 2.0 * neg[0]).norm());
    out.insert("ix: 3 s1^2".into(), (3.0 * sz[1] * sz[1] - two[2] - 2.0 * neg[2]).norm());
    out.insert("ix: 3 s2^2".into(), (3.0 * sz[2] * sz[2] - two[1] - 2.0 * neg[1]).norm());
    out.insert("x: s0^2 - s1 s2".into(), (sz[0] * sz[0] - sz[1] * sz[2] - neg[0]).norm());
    out.insert("x: s1^2 - s2 s0".into(), (sz[1] * sz[1] - sz[2] * sz[0] - neg[2]).norm());
    out.insert("x: s2^2 - s0 s1".into(), (sz[2] * sz[2] - sz[0] * sz[1] - neg[1]).norm());
    for p in 0..3 {
        let gap = (taylor_s(p, z) - exp_sum_s(p, z)).norm() / (1.0 + sz[p].norm());
        if z.norm() <= 2.0 * CROSSOVER {
            out.insert(format!("xi: Taylor vs exponential s{p}"), gap);
        }
    }
    out
}

/// Residuals of the product formulas exactly as they appear in the
/// classical table, including the entries whose left-hand sides or weights
/// are misprinted. Used to document which entries hold.
pub fn printed_product_residuals(z: Complex64, w: Complex64) -> Vec<(&'static str, f64)> {
    let s = |p: usize, x: Complex64| eval_s(p, x);
    let sum = |p: usize, c: [Complex64; 3]| c[0] * s(p, z + w) + c[1] * s(p, z + Z2 * w) + c[2] * s(p, z + Z3 * w);
    let ones = [Z1, Z1, Z1];
    let rot = [Z1, Z2, Z3];
    vec![
        ("3s0(z)s0(w) = Σ s0", (3.0 * s(0, z) * s(0, w) - sum(0, ones)).norm()),
        ("3s0(z)s2(w) = Σ ζ s0", (3.0 * s(0, z) * s(2, w) - sum(0, rot)).norm()),
        ("3s0(z)s1(w) = Σ s1", (3.0 * s(0, z) * s(1, w) - sum(1, ones)).norm()),
        ("3s2(z)s2(w) = Σ ζ s1", (3.0 * s(2, z) * s(2, w) - sum(1, rot)).norm()),
        ("3s0(z)s2(w) = Σ s2", (3.0 * s(0, z) * s(2, w) - sum(2, ones)).norm()),
        ("3s1(z)s1(w) = Σ ζ s2", (3.0 * s(1, z) * s(1, w) - sum(2, rot)).norm()),
    ]
}

/// The transcendental equation whose nonnegative roots give the zeros of `s_p`
/// on the negative real axis.
pub fn zero_equation(p: usize, x: f64) -> f64 {
    let decay = 0.5 * (-1.5 * x).exp();
    let arg = SQRT3_2 * x;
    match p % 3 {
        0 => arg.cos() + decay,
        1 => (arg - std::f64::consts::FRAC_PI_3).cos() - decay,
        _ => (arg + std::f64::consts::FRAC_PI_3).cos() - decay,
    }
}

/// A zero `x_p(k)` and its three images `−ζ₂^l x_p(k)`, `l = −1, 0, 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigZero {
    pub p: usize,
    pub k: usize,
    pub x: f64,
    pub ray_images: [Complex64; 3],
    /// `|zero_equation(p, x)|` after polishing.
    pub residual: f64,
}

fn polish(p: usize, mut a: f64, mut b: f64) -> f64 {
    let f = |x| zero_equation(p, x);
    let (mut fa, mut fb) = (f(a), f(b));
    // Bisection until the bracket is narrow, then secant steps kept inside it.
    while b - a > 1e-4 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if fa.signum() == fm.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    let mut x = 0.5 * (a + b);
    for _ in 0..100 {
        let mut next = b - fb * (b - a) / (fb - fa);
        if !(next > a && next < b) {
            next = 0.5 * (a + b);
        }
        let fx = f(next);
        x = next;
        if fx.abs() < 1e-15 || b - a < 4.0 * f64::EPSILON * b.abs().max(1.0) {
            break;
        }
        if fa.signum() == fx.signum() {
            a = next;
            fa = fx;
        } else {
            b = next;
            fb = fx;
        }
    }
    x
}

/// The first `count` nonnegative roots of the family-`p` equation.
pub fn find_zeros(p: usize, count: usize) -> Result<Vec<TrigZero>> {
    if p > 2 {
        return Err(Error::IndexOutOfRange { name: "p", value: p as i64, lo: 0, hi: 2 });
    }
    if count == 0 {
        return Err(Error::InvalidParameter("count must be ≥ 1".into()));
    }
    let mut roots = Vec::with_capacity(count);
    if p != 0 {
        roots.push(0.0);
    }
    let step = std::f64::consts::PI / SQRT3;
    let mut a = if p == 0 { 0.0 } else { 1e-6 };
    while roots.len() < count {
        let b = a + step;
        if zero_equation(p, a).signum() != zero_equation(p, b).signum() {
            roots.push(polish(p, a, b));
        }
        a = b;
    }
    Ok(roots
        .into_iter()
        .enumerate()
        .map(|(i, x)| TrigZero {
            p,
            k: i + 1,
            x,
            ray_images: [-Z3 * x, -Z1 * x, -Z2 * x],
            residual: zero_equation(p, x).abs(),
        })
        .collect())
}

/// True when each family's positive roots separate the next family's roots:
/// between consecutive positive `x₀` lies exactly one `x₁`, between
/// consecutive `x₁` exactly one `x₂`, and between consecutive `x₂` one `x₀`.
pub fn interlaced(x0: &[f64], x1: &[f64], x2: &[f64]) -> bool {
    let pos = |v: &[f64]| v.iter().copied().filter(|&x| x > 0.0).collect::<Vec<_>>();
    let fams = [pos(x0), pos(x1), pos(x2)];
    let between = |lo: f64, hi: f64, v: &[f64]| v.iter().filter(|&&x| x > lo && x < hi).count();
    (0..3).all(|f| {
        let next = &fams[(f + 1) % 3];
        fams[f].windows(2).all(|w| {
            let limit = next.last().copied().unwrap_or(0.0);
            w[1] > limit || between(w[0], w[1], next) == 1
        })
    })
}
