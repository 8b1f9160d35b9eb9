use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use descent_cli::args::Cli;
use descent_cli::commands::{run, INPUT_ERROR};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // help and version requests are not errors
            return if e.use_stderr() {
                ExitCode::from(INPUT_ERROR as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let out = run(&cli, &mut std::io::stdin().lock());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
