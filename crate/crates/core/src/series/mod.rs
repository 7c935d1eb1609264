//! Truncated multivariate formal power series, diffeomorphism germs and
//! vector-field germs.

mod formal;
mod germ;
mod multi_index;

use thiserror::Error;

use crate::coeff::CoeffError;

pub use formal::FormalSeries;
pub use germ::{compose, compositional_inverse, iterate, substitute, GermMap, VectorFieldGerm};
pub use multi_index::MultiIndex;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("arity mismatch: expected {0} variables, found {1}")]
    ArityMismatch(usize, usize),
    #[error("component {0} has a nonzero constant term")]
    NonzeroConstant(usize),
    #[error("variable index {0} out of range for {1} variables")]
    VariableOutOfRange(usize, usize),
    #[error("linear part is singular")]
    SingularLinearPart,
    #[error("a germ needs at least one component")]
    Empty,
}

pub type Result<T, E = SeriesError> = std::result::Result<T, E>;
