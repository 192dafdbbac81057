//! Chung-Lu style graph generation with tunable clustering.
//!
//! * [`graph`]: simple undirected graphs, π-vector and neighbor samplers.
//! * [`generator`]: slow and collision-corrected fast Chung-Lu, Transitive
//!   Chung-Lu (TCL).
//! * [`fitting`]: EM estimation of TCL's transitivity parameter ρ.
//! * [`stats`]: degree/clustering CCDFs, hop plots, Monte-Carlo oracles.
//! * [`io`]: edge-list ingest and output.

pub mod error;
pub mod fitting;
pub mod fixtures;
pub mod generator;
pub mod graph;
pub mod io;
pub mod seed;
pub mod stats;

pub use error::{Error, Result};
pub use graph::{Graph, NodeId, PiSampler};
