//! File formats, JSON reports, campaign configuration and the command-line
//! front end for [`hedonic_core`].

pub mod cli;
pub mod config;
pub mod graph_file;
pub mod parallel;
pub mod report;

pub use hedonic_core as core;
