//! Command-line front end: algebra presets, query commands and text or JSON
//! line output.

mod commands;
pub mod preset;
pub mod report;
pub mod syntax;

pub use commands::{run, Cli, Command, Engine, Format, Occurrences};
