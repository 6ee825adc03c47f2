use std::process::ExitCode;

use clap::Parser;
use qtau_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = execute(&cli);
    let text = serde_json::to_string_pretty(&outcome.record).expect("record serializes") + "\n";
    if let Some(e) = &outcome.record.error {
        eprintln!("qtau: {}: {}", e.class, e.message);
    }
    let written = match &cli.opts.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| eprintln!("qtau: cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    match written {
        Ok(()) => ExitCode::from(outcome.code as u8),
        Err(()) => ExitCode::from(2),
    }
}
