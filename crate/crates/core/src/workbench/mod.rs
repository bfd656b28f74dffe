//! File format, reports, the catalog runner and the command-line front end.

pub mod analysis;
pub mod cli;
pub mod format;
pub mod report;
pub mod verify;

pub use format::{parse, parse_unvalidated, serialize, AlgebraFile};
pub use report::{Check, Format, Report};
