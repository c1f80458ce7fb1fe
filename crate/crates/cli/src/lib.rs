//! Command-line front end for the movable-cone wall library: compute, verify,
//! and export wall catalogs, chamber decompositions, flop chains, and wall
//! diagrams.
//!
//! The binary is a thin shell around [`run`]; the logic lives in
//! [`commands`], with one rendering backend per output format.  Everything is
//! deterministic: the same invocation always produces byte-identical output.

pub mod commands;
pub mod dot;
pub mod dto;
pub mod fmt;
pub mod svg;
pub mod table;

use clap::Parser;

/// Parse the process arguments, run the requested command, print its output,
/// and return the process exit code (0 success, 1 domain or check failure,
/// 2 usage error).
pub fn run() -> i32 {
    let cli = match commands::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Also handles --help/--version, which exit 0.
            let _ = e.print();
            return e.exit_code();
        }
    };
    match commands::dispatch(cli) {
        Ok(out) => {
            print!("{}", out.text);
            out.code
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}
