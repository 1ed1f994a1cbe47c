//! Expression parsing, evaluation and the subcommands behind the `supercurve`
//! binary.

pub mod commands;
pub mod error;
pub mod eval;
pub mod expr;
pub mod report;

pub use commands::{run, Command, Outcome, Settings};
pub use error::{CliError, Result};
pub use expr::{parse, Expr};
pub use report::Report;
