//! Exact computer algebra for the local iteration problem: embedding a
//! diffeomorphism germ fixing the origin into a one-parameter flow,
//! linearizing it, computing fractional iterates and iterative roots, and
//! certifying non-existence through exact coefficient obstructions.
//!
//! ```
//! use germflow::flow::{germs, iterative_root, RootOutcome};
//!
//! // e^{iπ/2} z + z^5 has no formal square root.
//! let u = germs::resonant_rotation_germ(2, 6);
//! let RootOutcome::Obstruction(cert) = iterative_root(&u, 2, 6, 0).unwrap() else {
//!     unreachable!()
//! };
//! assert_eq!(cert.degree, 5);
//! assert!(cert.alpha.is_zero() && !cert.beta.is_zero());
//! ```

pub mod cli;
pub mod coeff;
pub mod flow;
pub mod linearize;
pub mod series;
