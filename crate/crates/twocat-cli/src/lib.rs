//! File formats, the command surface and the verification suites of the
//! `twocat` command-line tool.

pub mod commands;
pub mod corpus;
pub mod format;
pub mod input;
pub mod report;
pub mod resolve;
pub mod suites;

pub use commands::{run_args, Cli, Outcome};
pub use report::{Check, Report, Status};
pub use resolve::{parse, parse_text, serialize, Manifest};
