//! Command-line front end: problem files, the on-disk basis cache, command
//! dispatch and report rendering.

pub mod cache;
pub mod commands;
pub mod error;
pub mod problem;
pub mod report;

pub use commands::{run, Command, Options};
pub use error::{CliError, CliResult};
pub use problem::{parse_problem, read_problem, Problem};
pub use report::{Format, Output};
