//! Command-line front end for `qpoly-core`: the `qpoly` binary, the bundled
//! catalog, JSON reports and the result cache.

pub mod app;
pub mod cache;
pub mod catalog;
pub mod precision;
pub mod report;

pub use app::run;
