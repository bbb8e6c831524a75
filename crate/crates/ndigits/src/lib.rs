//! File formats, parallel experiments and the command-line front end for
//! [`ndigits_core`].
//!
//! * [`spec`] parses the one-token distribution and frequency specs used on
//!   the command line (`geometric:0.5`, `uniform:3`, …);
//! * [`custom`] loads finite distributions from JSON documents;
//! * [`output`] renders record tables as CSV, JSON or plain text;
//! * [`parallel`] runs the Monte Carlo experiments on a rayon pool with
//!   results that do not depend on the thread count;
//! * [`tables`] evaluates the Moran dimension grids of the three families.

pub mod custom;
mod error;
pub mod output;
pub mod parallel;
pub mod spec;
pub mod tables;

pub use error::{CliError, ExitCode};
