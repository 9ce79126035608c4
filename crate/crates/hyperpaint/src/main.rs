use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = hyperpaint::cli::Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match hyperpaint::cli::run(cli, &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}
