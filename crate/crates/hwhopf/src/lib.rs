//! IO companion to [`hwhopf_core`]: the `.hwd` diagram file format, the
//! operator-word expression grammar, DOT and JSON emission, configuration,
//! and the corpus property suites behind the `check` subcommand.

pub mod check;
pub mod config;
pub mod textio;

pub use hwhopf_core as core;
