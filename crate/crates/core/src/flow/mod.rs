//! Flows of germs: Lie series, formal logarithms, flow embeddings and
//! iterative roots with exact obstruction certificates.

mod family;
pub mod germs;
mod lie;
mod root;

use thiserror::Error;

use crate::coeff::CoeffError;
use crate::linearize::LinearizeError;
use crate::series::{MultiIndex, SeriesError};

pub use family::{evaluate_flow, flow_family, verify_group_law, FlowFamily};
pub use lie::{exp_flow, exp_map, formal_log, formal_log_in, MAX_LIE_TERMS};
pub use root::{
    branch_count, iterative_root, iterative_root_all_branches, linear_root, ObstructionCertificate,
    RootOutcome,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlowError {
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Linearize(#[from] LinearizeError),
    #[error("{0} is not exactly representable; use float mode")]
    NeedsFloat(String),
    #[error("Lie series did not converge within {0} terms")]
    NonConvergent(usize),
    #[error("linear part is not the identity")]
    NotParabolic,
    #[error("linear part is not diagonal")]
    NotDiagonal,
    #[error("multiplier {0} lies on the unit circle and is not 1; try the root command")]
    UnitMultiplier(String),
    #[error("branch {branch} out of range (there are {count})")]
    BranchOutOfRange { branch: usize, count: usize },
    #[error("root order must be at least 2, got {0}")]
    InvalidRootOrder(u32),
    #[error("numerically resonant equation at degree {degree}, component {component}, monomial {exponents}; use exact mode for a certificate")]
    NumericResonance {
        degree: u32,
        component: usize,
        exponents: MultiIndex,
    },
}

pub type Result<T, E = FlowError> = std::result::Result<T, E>;
