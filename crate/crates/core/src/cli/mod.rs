//! Configuration, commands and verification suites behind the `trisect`
//! binary.

mod commands;
mod config;
mod suites;

pub use commands::{
    cmd_forward, cmd_inverse, cmd_roundtrip, cmd_zeros, forward_data, inverse_from, jost_options, load_potential,
    recovery_options, relative_errors, roundtrip, roundtrip_once, tail_integral_profile, x_grid, ErrorPair, Resolution,
    RoundtripReport,
};
pub use config::{Command, RunConfig};
pub use suites::{run_suite, small_potential, verify, SuiteResult, VerificationReport, SUITES};

use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) | Error::Json(_) | Error::Parse { .. } => EXIT_IO,
        Error::Validation { .. }
        | Error::InvalidParameter(_)
        | Error::IndexOutOfRange { .. }
        | Error::DomainViolation { .. }
        | Error::RegionViolation(_)
        | Error::GridMismatch(_) => EXIT_VALIDATION,
        _ => EXIT_SOLVER,
    }
}
