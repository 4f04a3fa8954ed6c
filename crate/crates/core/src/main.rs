use std::io::Read;
use std::process::ExitCode;

use clap::Parser;
use suspend5::cli::{run, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::parse();
    let stdin = if config.inputs.is_empty() {
        let mut text = String::new();
        if let Err(e) = std::io::stdin().read_to_string(&mut text) {
            eprintln!("error: stdin: {e}");
            return ExitCode::from(2);
        }
        Some(text)
    } else {
        None
    };
    let outcome = match run(&config, stdin.as_deref()) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &config.out {
        Some(path) => std::fs::write(path, &outcome.output),
        None => {
            print!("{}", outcome.output);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if outcome.success {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
