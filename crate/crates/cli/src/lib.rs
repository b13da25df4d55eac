//! Command-line front end for `pgcaps`: cap files, construction recipes,
//! JSON reports and the command implementations behind the `pgcaps` binary.

pub mod capfile;
pub mod commands;
pub mod error;
pub mod recipe;
pub mod replay;
pub mod report;

pub use capfile::CapFile;
pub use error::{CliError, CliResult};
