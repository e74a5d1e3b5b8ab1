use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use logchow_cli::commands::{execute, Cli, CliError};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Usage problems (including unknown subcommands) exit 1; help
            // and version requests exit 0.
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    return ExitCode::SUCCESS;
                }
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli) {
        Ok(value) => {
            let text = serde_json::to_string_pretty(&value).expect("serializable result");
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text + "\n") {
                        eprintln!("cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => {
                    let mut stdout = std::io::stdout().lock();
                    let _ = writeln!(stdout, "{text}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(e @ CliError::Usage(_)) => {
            eprintln!("{}", serde_json::to_string_pretty(&e.error_json()).unwrap());
            ExitCode::from(1)
        }
        Err(e) => {
            let text = serde_json::to_string_pretty(&e.error_json()).unwrap();
            println!("{text}");
            ExitCode::from(2)
        }
    }
}
