use std::process::ExitCode;

use arithcap_cli::{render, run, Cli, CliError};
use clap::error::ErrorKind;
use clap::Parser;

fn main() -> ExitCode {
    arithcap::init_threads_from_env();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let msg = msg.trim_start_matches("error: ").trim_end();
            return fail(&CliError::Usage(msg.to_string()));
        }
    };
    let value = match run(&cli) {
        Ok(v) => v,
        Err(e) => return fail(&e),
    };
    let text = render(&value);
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                return fail(&CliError::io(path.display().to_string(), e));
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("error: {e}");
    print!("{}", render(&e.record()));
    ExitCode::from(e.exit_code() as u8)
}
