//! Batch front-end: JSON workspaces in, deterministic JSON reports out.

pub mod commands;
pub mod workspace;

pub use commands::{run, CommandError, Options, Report, Status};
pub use workspace::{load, parse, LoadError, Workspace};
