//! File formats, the polynomial parser, experiment drivers and reports
//! for the `incidence` command-line tool.

pub mod cli;
pub mod experiments;
pub mod formats;
pub mod parse;
pub mod report;

pub use experiments::{run_experiment, ExperimentError, ExperimentParams, EXPERIMENTS};
pub use parse::{parse_poly, ParseError};
pub use report::ExperimentReport;
