use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use trunc_poisson_cli::config::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match trunc_poisson_cli::run(&cli) {
        Ok((code, text)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
