pub mod decompose;
pub mod error;
pub mod fusion;
pub mod qalgebra;
pub mod repbuild;
pub mod report;
pub mod scalars;

pub use error::{Error, Result};
