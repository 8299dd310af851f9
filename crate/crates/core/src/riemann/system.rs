//! Jump coefficients and the closed singular system for
//! `φ₂(t) = c₃(−iζ₃t)ψ₂(−it)`, `φ₃(t) = c₂(−iζ₂t)ψ₃(−it)` and the pole
//! amplitudes `R_n, R̃_n`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::cauchy::CauchyGrid;
use super::chi::{s2_on_lower_ray, CanonicalSolution, ChiMode};
use crate::error::{Error, Result};
use crate::forward::ScatteringData;
use crate::raygeom::{I, SQRT3, Z2, Z3};

const TWO_PI_I: Complex64 = Complex64::new(0.0, std::f64::consts::TAU);

/// Coefficients of the singular system at one `x` on the data grid.
#[derive(Debug, Clone, PartialEq)]
pub struct JumpData {
    pub x: f64,
    pub grid: CauchyGrid,
    pub chi: CanonicalSolution,
    /// `χ(−iζ₂t, x)` and `χ(−iζ₃t, x)`.
    pub chi_30: Vec<Complex64>,
    pub chi_150: Vec<Complex64>,
    /// `c₂(−iζ₂t, x) = s₂*(−iζ₃t)χ⁻¹(−iζ₂t)e^{−i√3tx}`.
    pub c2: Vec<Complex64>,
    /// `c₃(−iζ₃t, x) = s₃*(−iζ₂t)χ⁻¹(−iζ₃t)e^{i√3tx}`.
    pub c3: Vec<Complex64>,
    /// `Q₂ = c₂⁻¹(−iζ₂t)χ⁻¹(−iζ₃t)`.
    pub q2: Vec<Complex64>,
    /// `Q₃ = c₃⁻¹(−iζ₃t)χ⁻¹(−iζ₂t)`.
    pub q3: Vec<Complex64>,
}

impl JumpData {
    /// `max_t |Q₂Q₃ − 1|`.
    pub fn q_product_residual(&self) -> f64 {
        self.q2.iter().zip(&self.q3).map(|(a, b)| (a * b - 1.0).norm()).fold(0.0, f64::max)
    }
}

/// Samples `c₂, c₃, Q₂, Q₃` on the positive data parameters. All of them
/// need `s₂` only on the ray `iζ₂t`: `s₂*(−iζ₃t) = conj s₂(iζ₂t)` and
/// `s₃*(−iζ₂t) = 1/conj s₂(iζ₂t)`.
pub fn jump_data(data: &ScatteringData, x: f64, mode: ChiMode) -> Result<JumpData> {
    let (tau, s2) = s2_on_lower_ray(data);
    let grid = CauchyGrid::from_nodes(&tau)?;
    let chi = CanonicalSolution::new(data, x, mode)?;
    let chi_30: Vec<Complex64> = tau.iter().map(|&t| chi.eval(-I * Z2 * t)).collect::<Result<_>>()?;
    let chi_150: Vec<Complex64> = tau.iter().map(|&t| chi.eval(-I * Z3 * t)).collect::<Result<_>>()?;
    let m = tau.len();
    let mut c2 = Vec::with_capacity(m);
    let mut c3 = Vec::with_capacity(m);
    let mut q2 = Vec::with_capacity(m);
    let mut q3 = Vec::with_capacity(m);
    for j in 0..m {
        let phase = Complex64::from_polar(1.0, -SQRT3 * tau[j] * x);
        let a = s2[j].conj() / chi_30[j] * phase;
        let b = 1.0 / (s2[j].conj() * chi_150[j] * phase);
        c2.push(a);
        c3.push(b);
        q2.push(1.0 / (a * chi_150[j]));
        q3.push(1.0 / (b * chi_30[j]));
    }
    Ok(JumpData { x, grid, chi, chi_30, chi_150, c2, c3, q2, q3 })
}

/// Bound-state data evaluated at one `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalPart {
    pub kappas: Vec<f64>,
    /// `χ⁻¹` at `κ_n, ζ₃κ_n` and at `−κ_n, −ζ₂κ_n`.
    pub inv_chi: Vec<[Complex64; 2]>,
    pub inv_chi_tilde: Vec<[Complex64; 2]>,
    /// `θ_m(x)` and `θ̃_m(x)`.
    pub theta: Vec<Complex64>,
    pub theta_tilde: Vec<Complex64>,
}

impl RationalPart {
    pub fn new(data: &ScatteringData, chi: &CanonicalSolution) -> Result<Self> {
        let x = chi.x;
        let b = data.b_values();
        let bt = data.b_tilde_values();
        let mut out = Self {
            kappas: data.kappas.clone(),
            inv_chi: Vec::new(),
            inv_chi_tilde: Vec::new(),
            theta: Vec::new(),
            theta_tilde: Vec::new(),
        };
        for (n, &k) in data.kappas.iter().enumerate() {
            let kc = Complex64::new(k, 0.0);
            out.inv_chi.push([1.0 / chi.eval(kc)?, 1.0 / chi.eval(Z3 * k)?]);
            out.inv_chi_tilde.push([1.0 / chi.eval(-kc)?, 1.0 / chi.eval(-Z2 * k)?]);
            out.theta.push(Z3 * (-SQRT3 * Z3 * k * x).exp() * b[n] * chi.eval(kc)? / chi.eval(Z2 * k)?);
            out.theta_tilde.push(Z2 * (-SQRT3 * Z2 * k * x).exp() * bt[n] * chi.eval(-kc)? / chi.eval(-Z3 * k)?);
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.kappas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kappas.is_empty()
    }

    /// `(z_n(λ), z̃_n(λ))`.
    pub fn z(&self, n: usize, lambda: Complex64) -> (Complex64, Complex64) {
        let k = self.kappas[n];
        let [a, b] = self.inv_chi[n];
        let [c, d] = self.inv_chi_tilde[n];
        (a / (lambda - k) + b / (lambda - Z3 * k), c / (lambda + k) + d / (lambda + Z2 * k))
    }

    /// `b(λ) = Σ R_n z_n(λ) + Σ R̃_n z̃_n(λ)`.
    pub fn b(&self, r: &[Complex64], r_tilde: &[Complex64], lambda: Complex64) -> Complex64 {
        (0..self.len())
            .map(|n| {
                let (z, zt) = self.z(n, lambda);
                r[n] * z + r_tilde[n] * zt
            })
            .sum()
    }
}

/// The collocated system. Unknowns are ordered `[φ₂; φ₃; R; R̃]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSystem {
    pub jumps: JumpData,
    pub rational: RationalPart,
    pub matrix: DMatrix<Complex64>,
    pub rhs: DVector<Complex64>,
}

impl SingularSystem {
    /// Nodes per unknown function.
    pub fn m(&self) -> usize {
        self.jumps.grid.len()
    }

    /// Number of bound states.
    pub fn n(&self) -> usize {
        self.rational.len()
    }
}

/// Assembles the two collocated functional equations and the `2N`
/// bound-state rows. The principal values use singularity subtraction;
/// the off-contour Cauchy integrals use product weights.
pub fn assemble_system(data: &ScatteringData, x: f64, mode: ChiMode) -> Result<SingularSystem> {
    let jumps = jump_data(data, x, mode)?;
    let rational = RationalPart::new(data, &jumps.chi)?;
    let grid = &jumps.grid;
    let m = grid.len();
    let n = rational.len();
    let size = 2 * m + 2 * n;
    let mut a = DMatrix::<Complex64>::zeros(size, size);
    let rhs = DVector::from_element(size, Complex64::new(1.0, 0.0));
    let pv = grid.pv_matrix();
    let (f2, f3) = (0, m);
    let (fr, frt) = (2 * m, 2 * m + n);
    let half = 0.5;
    for i in 0..m {
        let t = grid.tau[i];
        let w_a = grid.weights(Z3 * t);
        let w_b = grid.weights(Z2 * t);
        let (row1, row2) = (i, m + i);
        a[(row1, f2 + i)] += jumps.q3[i];
        a[(row1, f3 + i)] -= Z2 * half;
        a[(row2, f3 + i)] += jumps.q2[i];
        a[(row2, f2 + i)] += Z3 * half;
        for j in 0..m {
            a[(row1, f2 + j)] += Z3 / TWO_PI_I * w_a[j];
            a[(row1, f3 + j)] -= Z2 / TWO_PI_I * pv[(i, j)];
            a[(row2, f3 + j)] -= Z2 / TWO_PI_I * w_b[j];
            a[(row2, f2 + j)] += Z3 / TWO_PI_I * pv[(i, j)];
        }
        for k in 0..n {
            let (z1, zt1) = rational.z(k, -I * Z2 * t);
            let (z2, zt2) = rational.z(k, -I * Z3 * t);
            a[(row1, fr + k)] -= z1;
            a[(row1, frt + k)] -= zt1;
            a[(row2, fr + k)] -= z2;
            a[(row2, frt + k)] -= zt2;
        }
    }
    for mm in 0..n {
        let kap = rational.kappas[mm];
        let rows = [
            (2 * m + mm, I * Z3 * kap, I * kap, Z2 * kap, fr, rational.theta[mm]),
            (2 * m + n + mm, -I * kap, -I * Z2 * kap, -Z3 * kap, frt, rational.theta_tilde[mm]),
        ];
        for (row, z_phi2, z_phi3, at, col, th) in rows {
            let wa = grid.weights(z_phi2);
            let wb = grid.weights(z_phi3);
            for j in 0..m {
                a[(row, f2 + j)] += Z3 / TWO_PI_I * wa[j];
                a[(row, f3 + j)] -= Z2 / TWO_PI_I * wb[j];
            }
            a[(row, col + mm)] -= th;
            for k in 0..n {
                let (z, zt) = rational.z(k, at);
                a[(row, fr + k)] -= z;
                a[(row, frt + k)] -= zt;
            }
        }
    }
    Ok(SingularSystem { jumps, rational, matrix: a, rhs })
}

/// Route taken through the linear algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolvePath {
    /// One LU factorisation of the whole system.
    Monolithic,
    /// Solve the bound-state rows for `R, R̃` through `(A+D)⁻¹` and
    /// substitute into the functional equations.
    Elimination,
}

/// Solution of the singular system at one `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct InverseSolution {
    pub phi2: Vec<Complex64>,
    pub phi3: Vec<Complex64>,
    pub r: Vec<Complex64>,
    pub r_tilde: Vec<Complex64>,
    /// `‖Au − f‖∞ / ‖f‖∞` for the assembled system.
    pub residual: f64,
    /// Smallest over largest pivot modulus of the factorisation.
    pub pivot_ratio: f64,
    pub path: SolvePath,
}

impl InverseSolution {
    /// `ψ₂(−it) = φ₂/c₃(−iζ₃t)`.
    pub fn psi2(&self, jumps: &JumpData) -> Vec<Complex64> {
        self.phi2.iter().zip(&jumps.c3).map(|(p, c)| p / c).collect()
    }

    /// `ψ₃(−it) = φ₃/c₂(−iζ₂t)`.
    pub fn psi3(&self, jumps: &JumpData) -> Vec<Complex64> {
        self.phi3.iter().zip(&jumps.c2).map(|(p, c)| p / c).collect()
    }
}

fn pivot_ratio(lu: &nalgebra::LU<Complex64, nalgebra::Dyn, nalgebra::Dyn>) -> f64 {
    let u = lu.u();
    let d: Vec<f64> = (0..u.nrows().min(u.ncols())).map(|i| u[(i, i)].norm()).collect();
    let max = d.iter().copied().fold(0.0, f64::max);
    let min = d.iter().copied().fold(f64::INFINITY, f64::min);
    if max > 0.0 { min / max } else { 0.0 }
}

fn lu_solve(a: DMatrix<Complex64>, b: &DMatrix<Complex64>, limit: f64) -> Result<(DMatrix<Complex64>, f64)> {
    if a.nrows() == 0 {
        return Ok((DMatrix::zeros(0, b.ncols()), 1.0));
    }
    let lu = a.lu();
    let ratio = pivot_ratio(&lu);
    if !(ratio > limit) {
        return Err(Error::SingularMatrix(format!("pivot ratio {ratio:.3e} below {limit:.1e}")));
    }
    let x = lu.solve(b).ok_or_else(|| Error::SingularMatrix("LU solve failed".into()))?;
    Ok((x, ratio))
}

/// Options for [`solve_system`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub path: SolvePath,
    /// Smallest acceptable pivot ratio.
    pub pivot_limit: f64,
    /// Largest acceptable relative residual.
    pub residual_tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { path: SolvePath::Monolithic, pivot_limit: 1e-14, residual_tol: 1e-8 }
    }
}

/// Solves the assembled system along the chosen path.
pub fn solve_system(sys: &SingularSystem, opts: &SolveOptions) -> Result<InverseSolution> {
    let m = sys.m();
    let n = sys.n();
    let f = 2 * m;
    let rhs = DMatrix::from_column_slice(sys.rhs.len(), 1, sys.rhs.as_slice());
    let (u, ratio) = match opts.path {
        SolvePath::Monolithic => lu_solve(sys.matrix.clone(), &rhs, opts.pivot_limit)?,
        SolvePath::Elimination => {
            let a_ff = sys.matrix.view((0, 0), (f, f));
            let a_fr = sys.matrix.view((0, f), (f, 2 * n));
            let a_rf = sys.matrix.view((f, 0), (2 * n, f));
            let a_rr = sys.matrix.view((f, f), (2 * n, 2 * n)).clone_owned();
            let b_f = rhs.view((0, 0), (f, 1));
            let b_r = rhs.view((f, 0), (2 * n, 1));
            let mut rr_rhs = DMatrix::<Complex64>::zeros(2 * n, f + 1);
            rr_rhs.view_mut((0, 0), (2 * n, f)).copy_from(&a_rf);
            rr_rhs.view_mut((0, f), (2 * n, 1)).copy_from(&b_r);
            let (sol_rr, ratio_rr) = lu_solve(a_rr, &rr_rhs, opts.pivot_limit)?;
            let inv_a_rf = sol_rr.view((0, 0), (2 * n, f));
            let inv_b_r = sol_rr.view((0, f), (2 * n, 1));
            let reduced = a_ff - a_fr * inv_a_rf;
            let reduced_rhs = b_f - a_fr * inv_b_r;
            let (phi, ratio_ff) = lu_solve(reduced, &reduced_rhs, opts.pivot_limit)?;
            let r = inv_b_r - inv_a_rf * &phi;
            let mut u = DMatrix::<Complex64>::zeros(f + 2 * n, 1);
            u.view_mut((0, 0), (f, 1)).copy_from(&phi);
            u.view_mut((f, 0), (2 * n, 1)).copy_from(&r);
            (u, ratio_rr.min(ratio_ff))
        }
    };
    let res = &sys.matrix * &u - &rhs;
    let scale = rhs.iter().fold(0.0_f64, |a, v| a.max(v.norm())).max(1e-300);
    let residual = res.iter().fold(0.0_f64, |a, v| a.max(v.norm())) / scale;
    if !(residual <= opts.residual_tol) {
        return Err(Error::ResidualTooLarge { residual, tol: opts.residual_tol });
    }
    let col: Vec<Complex64> = u.iter().copied().collect();
    Ok(InverseSolution {
        phi2: col[..m].to_vec(),
        phi3: col[m..2 * m].to_vec(),
        r: col[f..f + n].to_vec(),
        r_tilde: col[f + n..].to_vec(),
        residual,
        pivot_ratio: ratio,
        path: opts.path,
    })
}
