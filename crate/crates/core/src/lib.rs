//! Glauber dynamics on proper colorings of simple k-uniform hypergraphs.
//!
//! The crate is `no_std` (it needs `alloc`). Everything that touches files,
//! threads or the command line lives in the `hypercolor` companion crate.
//!
//! Vertices and colors are 0-indexed: a palette of `q` colors is `0..q`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod coloring;
pub mod coupling;
pub mod dynamics;
mod error;
pub mod hypergraph;
pub mod oracle;
pub mod rng;

pub use coloring::goodness::{Eps, Goodness, GoodnessParams, Regime, RegimeReport};
pub use coloring::{ColorProfile, Coloring};
pub use coupling::{CoupledState, MaximalCoupling};
pub use dynamics::{ChainState, TrajectoryDiagnostics};
pub use error::Error;
pub use hypergraph::{Hypergraph, ValidationReport, Violation};

pub type Result<T, E = Error> = core::result::Result<T, E>;
