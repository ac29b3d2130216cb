use std::process::ExitCode;

use abcrad_cli::{run, Cli, Status};
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Status::Io } else { Status::Ok }.into();
        }
    };
    run(&cli).into()
}
