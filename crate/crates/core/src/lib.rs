//! Complete exponential sums with polynomial phases over squarefree moduli,
//! genericity classification of the phase, and moment statistics compared
//! against counting oracles and random-matrix references.

pub mod error;
pub mod field_poly;
pub mod charsums;
pub mod genericity;
pub mod moments;
pub mod rmt;

pub use error::{Error, Result};
