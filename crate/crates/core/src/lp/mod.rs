//! Exact LP bounds on code size and rate.

pub mod bound;
pub mod delta;
mod guide;
pub mod lp1;
pub mod lp2;
pub mod problem;
pub mod simplex;

pub use bound::{rate_upper_bound, BoundRow, Program, RateBound};
pub use delta::{delta1, delta2, delta3, Triple};
pub use lp1::{build_lp1, lp1_point, LP1_MAX_N};
pub use lp2::{build_lp2, D8Start, Lp2};
pub use problem::{LpProblem, LpSolution, LpStatus, Relation};
pub use simplex::simplex_solve;
