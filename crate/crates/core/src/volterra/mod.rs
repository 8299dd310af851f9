//! Jost and Cauchy solutions of `iD³u + qu = λ³u` on the half-line.

mod cauchy;
mod fourier;
mod jost;
mod kernels;
mod potential;

pub use cauchy::{cauchy_growth, cauchy_solve, free_terms, CauchySolution};
pub use fourier::{fourier_on_ray, parseval_check, FourierValue};
pub use jost::{check_domain, jost_solve, jost_triple, psi, JostMethod, JostOptions, JostSolution};
pub use kernels::{
    iterated_kernels, kernel_bound, kernel_bound_report, kernel_k1, kernel_k1_dx, kernel_k1_dxx, resolvent,
    resolvent_bound, KernelBoundReport,
};
pub use potential::{SampledPotential, SigmaAccumulator, Support};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::raygeom::SQRT3;

/// Pointwise `u v′ − u′ v`.
pub fn wronskian(u: &[Complex64], du: &[Complex64], v: &[Complex64], dv: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = u.len();
    if du.len() != n || v.len() != n || dv.len() != n {
        return Err(Error::GridMismatch(format!(
            "sample lengths {}, {}, {}, {} differ",
            n,
            du.len(),
            v.len(),
            dv.len()
        )));
    }
    Ok((0..n).map(|j| u[j] * dv[j] - du[j] * v[j]).collect())
}

/// `W_{p,s} = e_p e′_s − e′_p e_s` for two Jost solutions on the same grid.
pub fn jost_wronskian(a: &JostSolution, b: &JostSolution) -> Result<Vec<Complex64>> {
    if a.x != b.x {
        return Err(Error::GridMismatch("Jost solutions live on different grids".into()));
    }
    wronskian(&a.e, &a.de, &b.e, &b.de)
}

/// `det(e_p, e′_p, e″_p)` along the grid compared with `−3√3λ³`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeterminantReport {
    pub lambda: Complex64,
    pub values: Vec<Complex64>,
    pub expected: Complex64,
    /// `max_x |Δ/(−3√3λ³) − 1|`.
    pub max_rel_deviation: f64,
}

fn det3(m: [[Complex64; 3]; 3]) -> Complex64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// The Wronskian determinant of the three Jost solutions at every node.
/// The exponential factors multiply to one, so it is evaluated on `ψ`.
pub fn fundamental_determinant(q: &SampledPotential, lambda: Complex64, opts: &JostOptions) -> Result<DeterminantReport> {
    let sols = jost_triple(q, lambda, opts)?;
    Ok(determinant_of(&sols))
}

/// [`fundamental_determinant`] for already computed solutions.
pub fn determinant_of(sols: &[JostSolution; 3]) -> DeterminantReport {
    let lambda = sols[0].lambda;
    let expected = -3.0 * SQRT3 * lambda * lambda * lambda;
    let values: Vec<Complex64> = (0..sols[0].psi.len())
        .map(|j| det3(std::array::from_fn(|p| [sols[p].psi[j], sols[p].dpsi[j], sols[p].d2psi[j]])))
        .collect();
    let max_rel_deviation = if expected.norm() > 0.0 {
        values.iter().map(|v| (v / expected - 1.0).norm()).fold(0.0, f64::max)
    } else {
        values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    };
    DeterminantReport { lambda, values, expected, max_rel_deviation }
}
