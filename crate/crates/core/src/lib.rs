//! Steepest (lexicographic) watershed on node-weighted graphs and rasters.
//!
//! The graph form lives in [`graph`]; [`watershed`] is the raster form built
//! on bit-encoded arrow fields. [`flooding`] holds the classical
//! hierarchical-queue flooding and pit filling, [`plateau`] the optional
//! geodesic plateau preprocessing and [`trajectory`] downstream tracing along
//! the final arrows.

pub mod connectivity;
pub mod error;
pub mod flooding;
pub mod graph;
pub mod image;
pub mod plateau;
pub mod trajectory;
pub mod watershed;

pub use connectivity::Connectivity;
pub use error::{Error, Result};
pub use image::{ArrowField, Geometry, GridImage, LabelField};
pub use trajectory::{trace_downstream, Seed};
pub use watershed::{watershed, GridWatershed, WatershedState};
