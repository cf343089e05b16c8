//! Numerical toolkit for tripartite quantum-memory-assisted entropic uncertainty relations
//! with multiple measurements.
//!
//! Subsystem 0 is Alice's measured system, 1 and 2 are the memories held by Bob and Charlie.

pub mod bounds;
pub mod entropy;
pub mod error;
pub mod linalg;
pub mod states;
pub mod statefile;
pub mod sweep;
pub mod verify;

pub use error::{EurError, Result};
