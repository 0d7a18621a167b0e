//! Multi-rack storage codes over prime fields.
//!
//! Codewords are `M x N` matrices `X` whose rows (racks) satisfy `H·Xᵀ = 0`
//! and whose racks jointly satisfy `K·Xᵀ·Gᵀ = 0`. The crate covers code
//! construction and validation, intra- and inter-rack repair planning with
//! cost accounting, support enumerators of two-rack codes with their
//! MacWilliams transform, and exact LP upper bounds on the code rate.

pub mod code;
pub mod enumerator;
pub mod error;
pub mod gf;
pub mod limits;
pub mod lp;
pub mod repair;

pub use code::{CodeSpec, CodewordMatrix, TwoRackCode};
pub use error::{Error, Result};
pub use gf::{Field, FieldElement, Matrix};
