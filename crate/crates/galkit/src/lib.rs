//! Permutation-group machinery (stabilizer chains, products, subgroup
//! lattices, named constructions) and exact integer-polynomial certificates,
//! together with the structured checkers behind the `galkit` CLI.

pub mod catalog;
pub mod chain;
pub mod config;
pub mod constructions;
pub mod group;
pub mod oracle;
pub mod perm;
pub mod poly;
pub mod products;
pub mod report;
pub mod subgroups;
pub mod theorems;

pub use config::SuiteConfig;
pub use group::{BlockSystem, PermutationGroup};
pub use perm::Permutation;
pub use poly::IntegerPolynomial;
pub use report::{CheckReport, CheckStatus};

use thiserror::Error;

/// Crate-wide error type; every fallible operation funnels through this.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("group order {order} exceeds bound {bound}")]
    OrderExceedsBound { order: String, bound: String },
    #[error("group is not transitive")]
    NotTransitive,
    #[error("element does not lie in the group")]
    NotInGroup,
    #[error("not a subgroup of the ambient group")]
    NotSubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("homomorphism certification failed: {0}")]
    BadHomomorphism(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("polynomial degree too small: need {need}, got {got}")]
    DegreeTooSmall { need: usize, got: usize },
    #[error("zero constant term is not supported here")]
    ZeroConstantTerm,
    #[error("polynomial is not primitive (content != 1)")]
    NotPrimitive,
}

pub type Result<T> = std::result::Result<T, Error>;
