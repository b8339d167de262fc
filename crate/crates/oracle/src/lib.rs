//! Exhaustive reference implementations.
//!
//! Everything here is written for clarity over speed and works on plain
//! slices (`weights`, `edges`, adjacency lists) so that it shares no code
//! path with the `steepwater` crate it is used to check. Path enumeration is
//! exponential; inputs are capped at [`MAX_NODES`] nodes.

mod descent;
pub mod fixtures;
mod morphology;
mod topology;

pub use descent::{
    catchments_by_reachability, compare_descents, enumerate_catchments, steepest_profiles,
    Catchments, SteepestResult,
};
pub use morphology::{geodesic_distances, reconstruct_by_erosion_fixpoint};
pub use topology::{adjacency, drainage_arcs, flat_zones, regional_minima};

use thiserror::Error;

/// Largest graph the path enumerations accept.
pub const MAX_NODES: usize = 64;

/// Upper bound on DFS steps for a single source node.
pub const MAX_STEPS_PER_NODE: usize = 20_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {0} nodes, oracle accepts at most {MAX_NODES}")]
    TooLarge(usize),
    #[error("path enumeration from node {0} exceeded the step budget")]
    Budget(usize),
    #[error("empty input")]
    Empty,
}
