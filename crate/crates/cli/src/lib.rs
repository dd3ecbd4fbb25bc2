//! File formats, run reports and subcommands behind the `motifs` binary.

pub mod commands;
pub mod fixtures;
pub mod pointfile;
pub mod report;
pub mod specfile;

pub use commands::CliError;
pub use pointfile::{parse_points, write_points, PointFileError};
pub use report::{digest_inputs, Field, Format, RunReport, Section};
pub use specfile::{parse_spec, write_spec, SpecFileError};
