//! Library half of the `gruss` command-line tool.
//!
//! The binary is a thin argument-parsing wrapper; everything observable —
//! instance loading, command execution, report assembly and rendering — lives
//! here so integration tests can drive it directly.

pub mod instance;
pub mod report;
pub mod run;
