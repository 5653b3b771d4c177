use thiserror::Error;

/// Errors raised across the workbench.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("residue collision in character: {0}")]
    ResidueCollision(String),
    #[error("duplicate exponent {0} in series terms")]
    DuplicateExponent(String),
    #[error("term at exponent {exponent} is not below the truncation order {order}")]
    TermBeyondOrder { exponent: String, order: String },
    #[error("coefficient at q^{requested} requested beyond truncation O(q^{order})")]
    BeyondTruncation { requested: String, order: String },
    #[error("series is not invertible: {0}")]
    NotInvertible(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("series order too small for shape: {rows} lattice rows for {unknowns} unknowns (need {needed})")]
    ShapeTooSmall { rows: usize, unknowns: usize, needed: usize },
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("precision insufficient: {0}")]
    InsufficientPrecision(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
