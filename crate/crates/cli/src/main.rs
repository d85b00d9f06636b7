mod args;
mod commands;
mod files;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn run(cli: &Cli) -> commands::Outcome {
    if let Some(threads) = cli.global.threads {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    let g = &cli.global;
    match &cli.command {
        Command::Construct(a) => commands::construct(g, a),
        Command::Spectrum(a) => commands::spectrum(g, a),
        Command::Distance(a) => commands::distance(g, a),
        Command::Pack(a) => commands::pack(g, a),
        Command::ExactF(a) => commands::exact_f(g, a),
        Command::Certify(a) => commands::certify(g, a),
        Command::RegimeMap(a) => commands::regime_map(g, a),
        Command::Verify(a) => commands::verify(g, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
