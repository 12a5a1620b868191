//! Finite-dimensional associative algebras with derivation actions.

pub mod algebra;
pub mod battery;
pub mod cli;
pub mod config;
pub mod error;
pub mod exponent;
pub mod linalg;
pub mod pi;
pub mod structure;

pub use error::{Error, Result};
