use alloc::string::String;

use crate::numeric::BigInt;
use crate::params::FeasibilityReport;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DomainError {
    #[error("division by an interval that contains zero")]
    DivisionByZeroInterval,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed intersection array: {0}")]
    Parse(String),
    #[error("diameter {0} is below 3")]
    Diameter(usize),
    #[error("infeasible intersection array: {0}")]
    Feasibility(FeasibilityReport),
    /// The array is feasible but the graph is not primitive; `det_g` is
    /// reported for information only.
    #[error("graph is not primitive ({reason}); det(G) = {det_g} carries no verdict")]
    Hypothesis { reason: String, det_g: BigInt },
    #[error("precision budget exhausted: {0}")]
    Precision(String),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("graph is not distance-regular: {0}")]
    NotDistanceRegular(String),
    #[error("unsupported graph construction: {0}")]
    Unsupported(String),
    /// An identity that must hold by construction failed.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
