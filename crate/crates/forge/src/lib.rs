//! Library side of the `zmc-forge` command: configuration, verification
//! suites, reports and the sampling, sweep and classification outputs.

pub mod classify;
pub mod config;
pub mod error;
pub mod mesh;
pub mod report;
pub mod suites;
pub mod sweep;

pub use config::Config;
pub use error::{ExitStatus, ForgeError, Result};
pub use report::VerificationReport;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
