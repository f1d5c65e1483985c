//! Exact combinatorics of wide subcategories over domestic weighted projective lines.

pub mod error;
pub mod grading;
pub mod ktheory;
pub mod linalg;
pub mod sheaves;
pub mod tube;
pub mod verify;

pub use error::{Error, Result};
