mod args;
mod commands;
mod error;
mod semantics;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use args::{Cli, Format};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let format = cli.format;
    match commands::run(cli.command) {
        Ok(out) => {
            match format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", out.json),
            }
            ExitCode::from(out.exit)
        }
        Err(e) => {
            match format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => println!("{}", json!({ "error": e.kind.code(), "message": e.message })),
            }
            ExitCode::from(e.kind.exit_code())
        }
    }
}
