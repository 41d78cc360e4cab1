//! Command-line front end for `gabor-core`: argument parsing, text file
//! formats for signals and grids, and graymap export.

mod command;
mod error;
pub mod io;
mod run;
mod window_spec;

pub use command::{parse_command, Command, DualKind, GenCommand, LatticeArgs, SizedLatticeArgs};
pub use error::{CliError, Result};
pub use run::run;
pub use window_spec::WindowSpec;
