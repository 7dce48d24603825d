//! Exact rational scalars, vectors and matrices, plus the linear
//! programming kernel the geometric code is built on.

mod lp;
mod matrix;
mod rational;
mod vector;

pub use lp::{lp_solve, Constraint, LpOutcome, LpProblem, Relation};
pub use matrix::{affinely_independent, solve_affine, Echelon, RatMatrix};
pub use rational::{common_denominator, Rational};
pub use vector::RatVector;
