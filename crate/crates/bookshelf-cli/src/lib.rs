//! Command-line companion to `bookshelf-core`: plays games, builds the
//! exponential worst-case family, runs the exhaustive searches, and turns
//! the results into JSON traces, CSV tables, and a persistent search cache.
//!
//! The binary is a thin wrapper over [`run`]; everything else lives here so
//! the integration tests can exercise the document formats directly.

pub mod cache;
pub mod cli;
pub mod reports;
pub mod trace_doc;

pub use cli::run;
