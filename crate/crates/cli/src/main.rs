mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::Parser;
use serde::Serialize;
use serde_json::Value;

use commands::{execute, Check, RunStatus};
use config::{Cli, Command, RunConfig, Settings};

#[derive(Serialize)]
struct Report<'a> {
    tool: &'static str,
    version: &'static str,
    config: &'a Command,
    settings: &'a Settings,
    seed: u64,
    elapsed_ms: u128,
    status: RunStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    evidence: Option<&'static str>,
    checks: Vec<Check>,
    result: Value,
}

fn resolve(cli: Cli) -> Result<(Command, Settings, Option<PathBuf>)> {
    let mut settings = Settings {
        seed: cli.seed,
        memory_cap: cli.memory_cap,
        depth: cli.depth,
    };
    match cli.command {
        Command::Run(run) => {
            let text = std::fs::read_to_string(&run.config)
                .with_context(|| format!("reading {}", run.config.display()))?;
            let config: RunConfig =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", run.config.display()))?;
            settings.seed = config.seed.unwrap_or(settings.seed);
            settings.memory_cap = config.memory_cap.unwrap_or(settings.memory_cap);
            settings.depth = config.depth.unwrap_or(settings.depth);
            Ok((config.command, settings, cli.json.or(config.output)))
        }
        command => Ok((command, settings, cli.json)),
    }
}

fn run(cli: Cli) -> Result<RunStatus> {
    let (command, settings, output) = resolve(cli)?;
    let start = Instant::now();
    let outcome = execute(&command, &settings)?;
    let report = Report {
        tool: "zerolab",
        version: env!("CARGO_PKG_VERSION"),
        config: &command,
        settings: &settings,
        seed: settings.seed,
        elapsed_ms: start.elapsed().as_millis(),
        status: outcome.status,
        evidence: outcome.evidence,
        checks: outcome.checks,
        result: outcome.result,
    };
    let text = serde_json::to_string_pretty(&report)?;
    match output {
        Some(path) => {
            std::fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
            for check in &report.checks {
                println!("{}: {}", check.claim, check.outcome);
            }
            println!("status: {:?}", report.status);
        }
        None => println!("{text}"),
    }
    Ok(report.status)
}

/// 0 for a clean run, 1 for a violation or inconsistency, 2 for an error.
fn exit_code(result: &Result<RunStatus>) -> u8 {
    match result {
        Ok(RunStatus::Ok) => 0,
        Ok(_) => 1,
        Err(_) => 2,
    }
}

fn main() -> ExitCode {
    let result = run(Cli::parse());
    match &result {
        Ok(RunStatus::Ok) => {}
        Ok(status) => eprintln!("zerolab: run finished with status {status:?}"),
        Err(e) => eprintln!("zerolab: {e:#}"),
    }
    ExitCode::from(exit_code(&result))
}
