//! File formats, planted instance generation and experiment suites for the
//! `kmout` command line tool.

pub mod experiment;
pub mod format;
pub mod generate;
