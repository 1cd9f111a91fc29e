//! File formats and command-line front end for [`aic_core`].

pub mod cli;
pub mod format;
