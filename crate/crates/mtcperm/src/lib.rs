//! Command-line front end for `mtcperm-core`: loading category files, running
//! the verification suites, and the string-diagram DSL.

pub mod cli;
pub mod dsl;
pub mod eval;
pub mod load;
pub mod verify;

pub use dsl::{parse_dsl, DslError, Program};
