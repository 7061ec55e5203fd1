//! Electromagnetic eigenmodes of spherical cavities split by a conducting wedge.
//!
//! A wedge restricts the azimuthal domain to `[0, Φ]`, which quantises the
//! azimuthal index to `m = nπ/Φ`, generally non-integer. Angular solutions
//! regular at both poles then require `ν − m` to be a non-negative integer,
//! and resonances follow from the radial conditions on the spherical Bessel
//! function `j_ν`.
//!
//! * [`specfun`]: real-order Bessel, spherical Bessel, log-gamma and the
//!   regular associated-Legendre θ-solution.
//! * [`angular`]: ladder operators, Casimir and the south-pole singularity fit.
//! * [`modes`]: TE/TM roots, mode enumeration and classification.
//! * [`oracle`]: independent finite-difference and extended-precision checks.
//! * [`report`]: embedded reference tables, comparison and CSV/JSON output.
//! * [`cli`]: the command-line front end.

// `!(x > 0.0)` is used deliberately so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod angular;
pub mod cli;
mod error;
pub mod modes;
pub mod oracle;
pub mod report;
pub mod specfun;

pub use error::{Error, Result};
