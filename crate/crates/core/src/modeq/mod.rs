//! Modular equations: exact kernels, bivariate polynomials and the miner.

pub mod catalogue;
pub mod linalg;
mod mine;
mod poly;

pub use linalg::nullspace_rational;
pub use mine::{
    mine, mine_cross, mine_series, verify_relation, DroppedCandidate, MinedPolynomial, MiningJob, MiningReport,
    Quantity, Route, SeriesRecipe, Verdict, GUARD_ROWS,
};
pub use poly::{BivariatePolynomial, Shape};

#[cfg(test)]
mod tests;
