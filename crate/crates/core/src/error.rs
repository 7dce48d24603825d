use thiserror::Error;

use crate::arith::RatVector;
use crate::convex::CaratheodoryCertificate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in `{what}`: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("`{0}` must not be empty")]
    EmptyInput(&'static str),
    #[error("invalid rational {0:?}")]
    InvalidRational(String),
    #[error("rational with zero denominator")]
    ZeroDenominator,
    #[error("order has rank {rank} and is not total on Q^{dim}")]
    NotTotal { dim: usize, rank: usize },
    #[error("the point lies in the convex hull of the point set")]
    InHull(Box<CaratheodoryCertificate>),
    #[error("semigroup is not well-ordered: generator {0} is not positive")]
    NotWellOrdered(RatVector),
    #[error("`bound` must be at least 1")]
    ZeroBound,
    #[error("semigroup has no nonzero elements")]
    EmptySemigroup,
}
