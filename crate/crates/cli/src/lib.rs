//! Seeded verification suites and the command layer of the `descent` binary.

pub mod args;
pub mod commands;
pub mod report;
pub mod suites;
