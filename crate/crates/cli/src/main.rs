use clap::Parser;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = petz_cli::Cli::parse();
    let code = petz_cli::run(&cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code)
}
