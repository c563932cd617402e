//! File formats, parallel generation, reports and the command line for
//! the challenge-set generator in `wogli-core`.

pub mod cli;
pub mod io;
pub mod parallel;
pub mod report;

pub use wogli_core as core;
