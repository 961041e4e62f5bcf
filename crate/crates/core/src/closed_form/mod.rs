//! Closed-form deciders and solvers for number and word domains.

mod numbers;
mod words;

pub use numbers::*;
pub use words::*;
