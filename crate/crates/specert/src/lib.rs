//! IO formats, validation harness and command-line front end for `specert-core`.

pub mod format;
pub mod harness;
pub mod record;
pub mod cli;
