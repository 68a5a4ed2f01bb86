mod args;
mod commands;
mod error;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use error::{code, CliError};

fn name(cmd: &Command) -> String {
    let config = serde_json::to_value(cmd).expect("arguments serialize");
    let mut parts = Vec::new();
    let mut node = &config;
    // Walk single-key objects: {"bounds": {"edge-process": {...}}}.
    while let Some((k, v)) = node.as_object().filter(|o| o.len() == 1).and_then(|o| o.iter().next()) {
        parts.push(k.clone());
        node = v;
        if parts.len() == 2 {
            break;
        }
    }
    parts.join(" ")
}

fn run(cli: &Cli) -> Result<(), CliError> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs as usize)
            .build_global()
            .map_err(CliError::internal)?;
    }
    let report = match &cli.command {
        Command::Gen(c) => commands::gen(c),
        Command::Couple(a) => commands::couple(a),
        Command::Bounds(c) => commands::bounds(c),
        Command::Count(c) => commands::count(c),
        Command::Tv(a) => commands::tv(a),
        Command::Sample(a) => commands::sample(a),
        Command::Gambler(a) => commands::gambler(a),
        Command::Coalesce(a) => commands::coalesce(a),
        Command::Drift(a) => commands::drift(a),
    }?;
    let config = serde_json::to_value(&cli.command).map_err(CliError::internal)?;
    let text = output::render(&name(&cli.command), &config, report, cli.format);
    output::write_output(cli.output.as_deref(), &text)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(code::USAGE),
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
