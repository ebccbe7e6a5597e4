//! Command-line front end for `vanderkit-core`: JSON wire formats, job
//! execution, an operation-count benchmark, and table rendering.

pub mod bench;
pub mod counted;
pub mod job;
pub mod table;
pub mod wire;

pub use job::{run, CliError, Command, JobSpec, Outcome, OutputFormat};
