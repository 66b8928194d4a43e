use thiserror::Error;

use crate::parse::ParseError;
use crate::series::SeriesError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("equation is zero")]
    ZeroEquation,
    #[error("not a hypersurface germ: the equation is a unit")]
    NotAGerm,
    #[error("no Z-regular coordinates found with shifts up to {bound}")]
    RegularizationFailed { bound: i64 },
    #[error("invalid surface descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("curve is not smooth")]
    NotSmooth,
    #[error("curve generator is not regular in X or Y")]
    NotRegularCurve,
    #[error("center (Z, X) is not permitted")]
    NotPermitted,
    #[error("invalid direction: {0}")]
    InvalidDirection(String),
    #[error("transform is a unit: no surface germ here")]
    UnitTransform,
    #[error("curve does not pass through this point")]
    CurveMissesPoint,
    #[error("curve is transversal: inversion is the trivial rename preimage")]
    Transversal,
    #[error("chart mismatch: {0}")]
    ChartMismatch(String),
    #[error("theorem hypothesis violated: multiplicity dropped from {before} to {after}, nothing to classify")]
    HypothesisViolated { before: u32, after: u32 },
    #[error("unclassifiable permitted curve {0}")]
    Unclassified(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
