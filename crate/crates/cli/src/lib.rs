//! Command-line front end: request parsing, grids, rendering, execution.

pub mod render;
pub mod request;
pub mod run;
pub mod sweep;

pub use run::{run_cli, run_command, Outcome};
