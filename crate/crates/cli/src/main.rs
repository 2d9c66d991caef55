mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use log::warn;

use args::{Cli, ConventionArg, RunConfig, Task};

fn configure_threads() {
    let Ok(raw) = std::env::var("VACGAS_THREADS") else {
        return;
    };
    match raw.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                warn!("could not size the worker pool: {e}");
            }
        }
        _ => warn!("ignoring VACGAS_THREADS={raw:?}; expected a positive integer"),
    }
}

fn execute(config: &RunConfig) -> anyhow::Result<()> {
    if config.subcommand == Task::Temperature && config.convention == ConventionArg::Paper {
        eprintln!(
            "note: the paper convention divides a wavenumber by Boltzmann's constant; \
             pass --convention energy for T = hbar c k_c / (-alpha K)"
        );
    }
    let mut report = commands::run(config)?;
    let mut replay = vec!["vacgas".to_string()];
    replay.extend(config.to_args());
    report
        .diagnostics
        .insert("command_line".into(), serde_json::Value::from(replay));
    let text = output::render(config, &report);
    match &config.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    configure_threads();
    let (task, options) = cli.command.split();
    let config = RunConfig::resolve(task, options);
    match execute(&config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
