//! Inverse problem: canonical function of the scalar Riemann problem on the
//! ray `−iτ`, the closed singular system on the rays at 30° and 150°, and
//! recovery of `P(x) = ∫_x^∞ q` from the large-`λ` behaviour of `ψ₁`.

mod cauchy;
mod chi;
mod jumps;
mod recover;
mod system;

pub use cauchy::CauchyGrid;
pub use chi::{s2_on_lower_ray, CanonicalSolution, ChiMode};
pub use jumps::{jump_residuals, JumpEvaluator, JumpReport};
pub use recover::{
    extrapolate, potential_estimate, reconstruct_psi1, recover_at, recover_potential, smoothed_derivative,
    PointDiagnostics, RecoveredPotential, RecoveryOptions,
};
pub use system::{
    assemble_system, jump_data, solve_system, InverseSolution, JumpData, RationalPart, SingularSystem, SolveOptions,
    SolvePath,
};
