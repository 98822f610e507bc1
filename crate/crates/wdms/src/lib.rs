//! Text formats, DOT export and the `wdms` command line on top of
//! [`wdms_core`].

pub mod cli;
pub mod dot;
pub mod format;
pub mod graph;
pub mod script;

pub use format::{parse, serialize, ParseError, WdmsDocument};
