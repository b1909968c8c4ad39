use std::process::ExitCode;

use clap::Parser;
use coexist_cli::{render_error, run, Cli, Exit};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(Exit::Invalid.code())
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            ExitCode::from(outcome.exit.code())
        }
        Err(err) => {
            if cli.json {
                print!("{}", render_error(&err, true));
            } else {
                eprint!("{}", render_error(&err, false));
            }
            ExitCode::from(Exit::Invalid.code())
        }
    }
}
