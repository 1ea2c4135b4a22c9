//! File formats, reports and the command line around `dispersion-core`.

pub mod cli;
pub mod dot;
pub mod formats;
pub mod oracle;
pub mod random;
pub mod report;

pub use dot::export_dot;
