pub mod catalog;
pub mod cli;
pub mod critical7;
pub mod error;
pub mod lawlor;
pub mod matrixlab;
pub mod product;

pub use error::{Error, Result};
