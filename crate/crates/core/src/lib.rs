pub mod dynamics;
pub mod error;
pub mod homology;
pub mod index;
pub mod pairs;
pub mod scenario;

pub use error::{Error, Result};
