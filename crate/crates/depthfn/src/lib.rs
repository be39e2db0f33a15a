//! Input formats, parallel depth computation, reports and the command-line
//! driver built on `depthfn-core`.

pub mod corpus;
pub mod engine;
pub mod parse;
pub mod report;
pub mod run;

pub use run::{emit, run, Command, Format, Options, Request};
