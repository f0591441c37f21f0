//! Command-line front end, file formats, golden fixtures and the parallel
//! property suite for [`palmod_core`].

pub mod cli;
pub mod error;
pub mod goldens;
pub mod render;
pub mod trace;
pub mod verify;

pub use error::{CliError, ExitCode};
