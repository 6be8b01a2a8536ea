//! Command-line front end. The binary only parses arguments and prints; the
//! commands here return report structs so tests can compare them with the
//! library directly.

pub mod cli;
pub mod commands;
pub mod input;
pub mod report;
