//! Quadrature rules on uniform grids.

use num_complex::Complex64;

/// Weight of node `m` in a composite rule over `n` intervals of width `h`.
///
/// Even `n` uses Simpson's rule; odd `n ≥ 3` uses the 3/8 rule on the first
/// three intervals and Simpson's rule on the rest; `n = 1` is the trapezoid.
pub fn composite_weight(n: usize, m: usize, h: f64) -> f64 {
    debug_assert!(m <= n);
    match n {
        0 => 0.0,
        1 => 0.5 * h,
        _ if n % 2 == 0 => simpson_weight(n, m, h),
        _ => {
            let head = [3.0, 9.0, 9.0, 3.0];
            let mut w = 0.0;
            if m <= 3 {
                w += head[m] * h / 8.0;
            }
            if m >= 3 && n > 3 {
                w += simpson_weight(n - 3, m - 3, h);
            }
            w
        }
    }
}

fn simpson_weight(n: usize, m: usize, h: f64) -> f64 {
    if m == 0 || m == n {
        h / 3.0
    } else if m % 2 == 1 {
        4.0 * h / 3.0
    } else {
        2.0 * h / 3.0
    }
}

/// All weights for `n` intervals.
pub fn composite_weights(n: usize, h: f64) -> Vec<f64> {
    (0..=n).map(|m| composite_weight(n, m, h)).collect()
}

/// Integral of uniformly sampled values by the composite rule.
pub fn integrate(values: &[f64], h: f64) -> f64 {
    let n = values.len().saturating_sub(1);
    values.iter().enumerate().map(|(m, v)| composite_weight(n, m, h) * v).sum()
}

/// Complex version of [`integrate`].
pub fn integrate_c(values: &[Complex64], h: f64) -> Complex64 {
    let n = values.len().saturating_sub(1);
    values.iter().enumerate().map(|(m, v)| *v * composite_weight(n, m, h)).sum()
}

/// Cumulative integrals `∫_{x_0}^{x_j}` of uniformly sampled values, each
/// interval integrated by a three-point rule exact for quadratics.
pub fn cumulative(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    let mut out = vec![0.0; n];
    for j in 1..n {
        let (a, b, c) = if j + 1 < n {
            (values[j - 1], values[j], values[j + 1])
        } else if j >= 2 {
            // Last interval: quadratic through the three final nodes.
            let (a, b, c) = (values[j - 2], values[j - 1], values[j]);
            out[j] = out[j - 1] + h * (-a + 8.0 * b + 5.0 * c) / 12.0;
            continue;
        } else {
            out[j] = out[j - 1] + 0.5 * h * (values[0] + values[1]);
            continue;
        };
        out[j] = out[j - 1] + h * (5.0 * a + 8.0 * b - c) / 12.0;
    }
    out
}

/// Weights `(w₀, w₁, w₂)` such that
/// `∫_0^h e^{μu} g(u) du ≈ w₀ g(0) + w₁ g(h) + w₂ g(2h)`, exact when `g` is a
/// quadratic. Accurate for every `μh`, including `μ = 0`.
pub fn exp_weights_forward(mu: Complex64, h: f64) -> [Complex64; 3] {
    let [m0, m1, m2, _] = exp_moments(mu * h);
    // Lagrange basis on nodes 0, 1, 2 in units of h, integrated against e^{zv}.
    let l0 = (m2 - 3.0 * m1 + 2.0 * m0) * 0.5;
    let l1 = -(m2 - 2.0 * m1);
    let l2 = (m2 - m1) * 0.5;
    [l0 * h, l1 * h, l2 * h]
}

/// Weights for `∫_0^h e^{μu} g(u) du` with `g` the quadratic through
/// `g(−h), g(0), g(h)`.
pub fn exp_weights_backward(mu: Complex64, h: f64) -> [Complex64; 3] {
    let [m0, m1, m2, _] = exp_moments(mu * h);
    // Nodes −1, 0, 1.
    let lm = (m2 - m1) * 0.5;
    let l0 = m0 - m2;
    let lp = (m2 + m1) * 0.5;
    [lm * h, l0 * h, lp * h]
}

/// Weights `w_i` such that `∫_0^h e^{μu} g(u) du ≈ Σ_i w_i g((start + i)h)`,
/// exact when `g` is a cubic through the four nodes `start, …, start + 3`.
pub fn exp_weights_cubic(mu: Complex64, h: f64, start: i32) -> [Complex64; 4] {
    let m = exp_moments(mu * h);
    let nodes: [f64; 4] = std::array::from_fn(|i| (start + i as i32) as f64);
    std::array::from_fn(|i| {
        // Coefficients of the Lagrange basis polynomial, lowest degree first.
        let mut c = [1.0, 0.0, 0.0, 0.0];
        let mut denom = 1.0;
        for (j, &d) in nodes.iter().enumerate() {
            if j == i {
                continue;
            }
            for k in (0..4).rev() {
                c[k] = (if k > 0 { c[k - 1] } else { 0.0 }) - d * c[k];
            }
            denom *= nodes[i] - d;
        }
        (0..4).map(|k| m[k] * c[k]).sum::<Complex64>() * (h / denom)
    })
}

/// `M_k(z) = ∫_0^1 v^k e^{zv} dv` for `k = 0, …, 3`.
pub fn exp_moments(z: Complex64) -> [Complex64; 4] {
    if z.norm() < 1.0 {
        // Series Σ z^n / (n! (n + k + 1)).
        let mut out = [Complex64::new(0.0, 0.0); 4];
        let mut term = Complex64::new(1.0, 0.0);
        for n in 0..30 {
            for (k, o) in out.iter_mut().enumerate() {
                *o += term / (n + k + 1) as f64;
            }
            term = term * z / (n + 1) as f64;
        }
        out
    } else {
        let e = z.exp();
        let m0 = (e - 1.0) / z;
        let m1 = (e - m0) / z;
        let m2 = (e - 2.0 * m1) / z;
        let m3 = (e - 3.0 * m2) / z;
        [m0, m1, m2, m3]
    }
}
