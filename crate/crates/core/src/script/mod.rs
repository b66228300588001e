//! A small line-oriented language for declaring spaces, bundles and maps and
//! running obstruction queries against them.

pub mod ast;
pub mod parser;
pub mod printer;
pub mod runner;

pub use ast::*;
pub use parser::{parse_script, parse_statement, ParseError};
pub use runner::{
    class_of, format_records, run_text, Outcome, Record, RunOptions, Runner, RuntimeError, ScriptError, ScriptFailure,
};
