//! Registry, configuration, report emission and command implementations for
//! the `lpsurf` command-line verifier.

pub mod commands;
pub mod config;
pub mod expectations;
pub mod registry;
pub mod report;
