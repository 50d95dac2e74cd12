//! Command-line front end for `qg-core`: JSON spec files in, JSON reports out.

pub mod commands;
pub mod report;
pub mod schema;

pub use commands::{Options, Status};
