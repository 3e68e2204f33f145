use std::process::ExitCode;

use clap::Parser;
use coneval::commands::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    match run(cli, &mut stdout.lock()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("coneval: {e}");
            ExitCode::from(2)
        }
    }
}
