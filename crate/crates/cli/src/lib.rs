//! Batch front end for `se2-coset`: configuration, builtin test functions,
//! the report writers and the acceptance suite.

pub mod acceptance;
pub mod builtins;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use acceptance::{run_acceptance, CriterionResult, Report};
pub use config::RunConfig;
pub use error::{CliError, Result};
