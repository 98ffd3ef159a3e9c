//! Command-line front end for `pmetric`: the canonical space document
//! format, the subcommands, and the seeded property fuzzer.

pub mod commands;
pub mod document;
pub mod fuzz;

pub use commands::{execute, Cli, Outcome};
pub use document::{parse_space, to_canonical, DocumentError, SpaceDocument};
