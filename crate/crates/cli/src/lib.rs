//! Library side of the logchow command-line tool: JSON schemas, command
//! dispatch and the verification suites.

pub mod commands;
pub mod schema;
pub mod suites;
