//! File formats, command line and threaded solvers on top of `nlbox-core`.

pub mod cli;
pub mod format;
pub mod parallel;

pub use nlbox_core as core;
