//! File formats, renderers and the pipeline behind the `steepwater` binary.

pub mod app;
pub mod arwf;
pub mod error;
pub mod pnm;
pub mod render;
pub mod seeds;

pub use app::{run, Command, RunConfig, SeedSource, WatershedConfig};
pub use error::{CliError, FormatError};
