//! File formats, experiment sweeps and the command-line front end for
//! [`hyperpaint_core`].

pub mod cli;
mod error;
pub mod pnm;
pub mod sweep;

pub use error::{Error, Result};
