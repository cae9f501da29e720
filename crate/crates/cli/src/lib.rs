//! Library side of the `convcode` command-line tool: report plumbing and the
//! built-in example reproduction suite. The binary in `main.rs` is a thin
//! argument-parsing layer over these modules and the `convcode` crate.

pub mod report;
pub mod suite;
