//! Library side of the `qst` command-line tool.

pub mod caps;
pub mod commands;
pub mod error;
pub mod input;
pub mod report;
