//! Command-line front end for `whcalc-core`: argument handling, the JSON
//! document format, CSV/ASCII/SVG projections and the `verify` matrix.

pub mod commands;
pub mod document;
pub mod error;
pub mod render;
pub mod verify;

pub use commands::{run, Cli, Outcome};
pub use error::CliError;
