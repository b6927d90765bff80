//! Exact integer group determinants of the affine groups `GA(1, q)`.

pub mod achievers;
pub mod arith;
pub mod bigjson;
pub mod detengine;
pub mod element;
pub mod error;
pub mod field;
pub mod linalg;
pub mod oracle;
pub mod reference;
pub mod rings;
pub mod search;

pub use error::{Error, Result};
