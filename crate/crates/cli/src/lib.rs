//! Library side of the `schwarzian-lab` command-line tool: specification
//! parsing, deterministic reports, the subcommands and the acceptance suite.

pub mod commands;
pub mod report;
pub mod spec;
pub mod verify;

pub use commands::{CliError, CliResult};
pub use report::{Field, Report, Section};
pub use spec::{parse_spec, AngleLiteral, BuiltFunction, Family, FunctionSpec, SpecError};
