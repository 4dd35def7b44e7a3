use std::ffi::OsString;
use std::path::Path;
use std::process::ExitCode;

use agq_cli::commands::{run, Cli};
use agq_cli::{config, CliError};
use clap::error::ErrorKind;
use clap::Parser;

fn main() -> ExitCode {
    let mut args: Vec<OsString> = std::env::args_os().collect();
    if let Some(path) = config::config_path(&args) {
        let path = Path::new(&path);
        let merged = std::fs::read_to_string(path)
            .map_err(CliError::io(path))
            .and_then(|text| config::parse(&text, path));
        match merged {
            Ok(entries) => config::merge(&mut args, &entries),
            Err(e) => return fail(&e),
        }
    }
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let stdout = std::io::stdout();
    match run(&cli, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}
