//! Exact lexicographic orders on `Q^n` and the convex geometry behind them.
//!
//! * [`arith`]: rationals, vectors, matrices and an exact simplex solver.
//! * [`order`]: orders defined by a stack of linear functionals.
//! * [`convex`]: hull membership, Carathéodory certificates, separation
//!   by lexicographic half-spaces and positive orders for point sets.
//! * [`semigroup`]: well-ordering of finitely generated semigroups and
//!   ascending enumeration of their elements.
//! * [`cli`]: the JSON command-line front end.
//!
//! No floating point is used anywhere; every answer is exact and comes with
//! a certificate that can be re-checked independently.

pub mod arith;
pub mod cli;
pub mod convex;
mod error;
pub mod order;
pub mod semigroup;

pub use arith::{LpOutcome, LpProblem, RatMatrix, RatVector, Rational, Relation};
pub use convex::{CaratheodoryCertificate, NaturalWitness, PointSet, SeparationResult};
pub use error::Error;
pub use order::{FlagDescription, FormalDifference, MatrixOrder};
pub use semigroup::{FGSemigroup, WellOrderVerdict};
