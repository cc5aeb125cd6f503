//! DSL front end, command dispatch, reports and DOT output for hetcat.

pub mod command;
pub mod diag;
pub mod dot;
pub mod lexer;
pub mod parser;
pub mod report;
pub mod serialize;
pub mod workspace;

pub use diag::{Diagnostic, Location};
pub use workspace::{Entry, Kind, Structure, Workspace};
pub use report::{Status, VerificationReport};
