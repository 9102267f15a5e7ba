mod commands;

use std::process::ExitCode;

use clap::Parser;

use commands::Cli;

/// Usage and parse problems exit with 2, models that fail validation with 3.
fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<causalteam::formula::ParseError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<causalteam::Error>() {
        Some(e) if e.is_syntax() => 2,
        Some(causalteam::Error::SignatureRequired(_)) => 2,
        Some(_) => 3,
        None => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
