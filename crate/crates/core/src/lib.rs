//! Complete solution sets of pseudorange multilateration problems.

pub mod cli;
pub mod constraints;
pub mod error;
pub mod model;
pub mod numerics;
pub mod quadrics;
mod serde_vec;
pub mod simulate;
pub mod solver;

pub use error::{Error, Result};
