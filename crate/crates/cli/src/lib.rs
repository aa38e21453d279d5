//! Command-line front end for `framelab-core`.

pub mod commands;
pub mod config;
pub mod emit;
pub mod error;
pub mod spec_io;

use std::ffi::OsString;

use config::{parse_config, Parsed};
pub use error::CliError;

/// Parses, runs and emits; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = parse_config(args).and_then(|parsed| match parsed {
        Parsed::Info(text) => {
            print!("{text}");
            Ok(())
        }
        Parsed::Run(config) => {
            let table = commands::execute(&config)?;
            emit::emit(&table, config.format, config.out.as_deref())
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("framelab: {e}");
            e.exit_code()
        }
    }
}
