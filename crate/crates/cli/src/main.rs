mod args;
mod commands;
mod report;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::commands::{cmd_compare, cmd_solve, cmd_wronskian, EXIT_INPUT};

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("GLSHP_LOG", "warn"))
        .format_timestamp(None)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    let outcome = match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Wronskian(a) => cmd_wronskian(a),
        Command::Compare(a) => cmd_compare(a),
    };
    let code = match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.0);
            EXIT_INPUT
        }
    };
    std::process::exit(code);
}
