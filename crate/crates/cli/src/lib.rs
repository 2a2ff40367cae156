//! Command-line front end for `intmat-core`: expression parsing, command
//! dispatch and report rendering.

pub mod app;
pub mod parse;
pub mod report;

pub use app::{run, run_args, Cli, Outcome, EXIT_ERROR, EXIT_MEMBER, EXIT_NON_MEMBER};
pub use parse::{parse_monic, parse_poly, ParseError};
