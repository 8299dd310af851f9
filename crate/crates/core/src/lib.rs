//! Direct and inverse scattering for the third-order operator
//! `iD³ + q(x)` on the half-line.

pub mod cli;
pub mod error;
pub mod forward;
pub mod io;
pub mod quad;
pub mod raygeom;
pub mod riemann;
pub mod trig3;
pub mod volterra;

pub use error::{Error, Result};
