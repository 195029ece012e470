//! Command-line front end: reads a statement file, decides whether a DAG
//! represents it exactly, and reports the verdict as JSON, DOT, or text.

mod parse;
mod run;

pub use parse::{emit_text, parse_input, Input, InputError};
pub use run::{run, run_text, Emit, Output, RunConfig, RunError, Status};
