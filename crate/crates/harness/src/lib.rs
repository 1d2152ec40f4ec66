//! Reproduction harness around `circdiam`: bundled claims, verification
//! pipelines, a content-hashed result cache and the `circdiam` CLI.

pub mod cache;
pub mod claims;
pub mod cli;
pub mod error;
pub mod session;
pub mod verify;

pub use error::{CliError, CliResult};
