pub mod arith;
pub mod builder;
pub mod cli;
pub mod density;
pub mod error;
pub mod fields;
pub mod geometry;
pub mod nf_core;

pub use error::{Error, Result};
