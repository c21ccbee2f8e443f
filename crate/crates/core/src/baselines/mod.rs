//! Comparison methods and reference values: the plain tensor sum, seeded
//! Monte Carlo and per-family reference integrals.

pub mod mc;
pub mod reference;
pub mod stp;

use thiserror::Error;

use crate::expr::EvalError;
use crate::quad::QuadError;

pub use mc::{mc_integrate, McConfig, McEstimate};
pub use reference::{reference_integral, reference_integral_by, relative_error, Reference, ReferenceMethod};
pub use stp::{stp_integrate, stp_integrate_capped, STP_CAP};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BaselineError {
    #[error("tensor sum needs {summands:.3e} summands, above the cap of {cap:.3e}")]
    CapExceeded { summands: f64, cap: f64 },
    #[error("integrand uses x{max_var} but the domain has {dim} axes")]
    DimensionMismatch { max_var: u32, dim: usize },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("no reference integral for family `{0}`")]
    UnknownFamily(String),
    #[error("Monte Carlo needs at least one sample")]
    NoSamples,
}

pub(crate) fn check_dims(g: &crate::expr::Expr, dim: usize) -> Result<(), BaselineError> {
    match g.max_var() {
        Some(v) if v.slot() >= dim => Err(BaselineError::DimensionMismatch { max_var: v.index(), dim }),
        _ => Ok(()),
    }
}
