//! Expression parsing and session state for the `leavitt-lab` binary.

pub mod parser;
pub mod session;
