//! File formats, reports and experiment drivers on top of `hypercolor-core`.

pub mod error;
pub mod experiments;
pub mod io;
pub mod parallel;
pub mod report;
pub mod rng;
pub mod source;

pub use error::{Error, Result};
