//! RO(C_{p^n})-graded homology of virtual representation spheres with
//! constant Mackey functor coefficients, computed as Mackey and Green
//! functors: additive structure, named generators, products, divisions,
//! and triple Massey products.
//!
//! Everything is computed from explicit equivariant cellular chain
//! complexes of free Mackey functors, with all linear algebra done exactly
//! over the integers (Smith normal form). See the `examples/` directory for
//! runnable entry points into each capability.

pub mod catalog;
pub mod chains;
pub mod fixtures;
pub mod green;
pub mod group;
pub mod homology;
pub mod mackey;
pub mod massey;
pub mod names;
pub mod query;
pub mod tables;
pub mod zlinalg;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    BadGroup(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid query: {0}")]
    BadQuery(String),
    #[error("fixture error: {0}")]
    Fixture(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Engine version used in cache keys and result provenance.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
