//! Inhomogeneous eight-vertex model at η = π/3: operators, ground-state
//! eigenvector, cylinder partition function, closed forms and the exact
//! homogeneous polynomials.

pub mod closed_forms;
pub mod field;
pub mod ground_state;
pub mod lattice;
pub mod limits;
pub mod linalg;
pub mod modular;
pub mod partition;
pub mod poly;
pub mod report;
pub mod rng;
pub mod suites;
pub mod theta;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("theta series does not converge for |nome| = {0}")]
    Nonconvergent(f64),
    #[error("theta series cutoff not reached after {0} terms")]
    CutoffNotReached(usize),
    #[error("pole of the uniformizing map")]
    Pole,
    #[error("system size {0} not supported")]
    SizeOverflow(usize),
    #[error("joint kernel has dimension {0}, expected 1")]
    DegenerateKernel(usize),
    #[error("residual {0:e} above tolerance")]
    ResidualTooLarge(f64),
    #[error("Pfaffian of odd-sized matrix ({0})")]
    OddSize(usize),
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),
    #[error("non-exact division at step m = {0}")]
    NonExactDivision(usize),
    #[error("interpolation inconsistent: {0}")]
    Interpolation(String),
    #[error("order {0} exceeds supported Taylor order")]
    OrderOverflow(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
