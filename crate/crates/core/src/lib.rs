//! Ramanujan quantities `R(a,b,p;q)` as exact truncated q-series.
//!
//! The crate builds agile products and their quotients exactly, computes the
//! character sums `tau(n)`, mines modular equations by exact linear algebra,
//! and evaluates everything numerically at high precision for cross-checks.

pub mod characters;
pub mod cli;
pub mod error;
pub mod modeq;
pub mod numerics;
pub mod quantities;
pub mod report;
pub mod series;

pub use error::{Error, Result};
pub use rug;
