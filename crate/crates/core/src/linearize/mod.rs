//! Conjugacy to the linear part: Koenigs and Poincaré linearization,
//! resonance detection, and matrix logarithms and fractional powers.

mod conjugacy;
mod matrix;
mod resonance;

use thiserror::Error;

use crate::coeff::CoeffError;
use crate::series::SeriesError;

pub use conjugacy::{koenigs, poincare_linearize, LinearizationResult};
pub use matrix::{
    closeness_check, matrix_exp, matrix_log, matrix_power_t, multiplier, Closeness, SquareMatrix,
    MAX_SERIES_TERMS,
};
pub use resonance::{resonance_check, resonance_check_with_tolerance, ResonanceWitness};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinearizeError {
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("||J - E||_F = {0} is not below 1")]
    NotClose(f64),
    #[error("series did not converge within {0} terms")]
    NonConvergent(usize),
    #[error("{0} of this exact matrix is not exactly representable; use float mode")]
    RequiresFloat(&'static str),
    #[error("linear part is not diagonal")]
    NotDiagonal,
    #[error("expected a one-variable germ, got {0} variables")]
    NotOneDimensional(usize),
    #[error("multiplier is zero")]
    ZeroMultiplier,
    #[error("multiplier {0} lies on the unit circle")]
    UnitModulus(String),
    #[error("multiplier {0} is not inside the unit disc")]
    NotContracting(usize),
    #[error("resonant multipliers: {}", .0.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(", "))]
    Resonant(Vec<ResonanceWitness>),
}

pub type Result<T, E = LinearizeError> = std::result::Result<T, E>;
