//! Command implementations, instance-file schema and report rendering
//! behind the `coregame` binary.

pub mod commands;
pub mod report;
pub mod schema;
