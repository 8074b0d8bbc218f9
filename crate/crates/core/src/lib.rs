//! Tensor induction of finite-group representations, graded tensor induction
//! with Koszul signs, trace/norm restricted character sums over finite fields
//! and exhaustive point counts on Artin–Schreier and superelliptic curves.

pub mod error;
pub mod curves;
pub mod field;
pub mod graded;
pub mod rep;
pub mod runner;
pub mod sums;

pub use error::{Error, Result};
