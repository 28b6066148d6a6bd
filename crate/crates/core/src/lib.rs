pub mod cover;
pub mod error;
pub mod extremal;
pub mod geometry;
pub mod graph;
pub mod json;
pub mod lenz;

pub use error::{Error, Result};
