//! Command-line driver for the four-state toolkit: runs the named
//! scenarios, writes their reports, and exits 0 only when every check
//! passes. Identical settings and seed produce byte-identical output.

mod config;
mod formats;
mod report;
mod scenarios;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use config::{resolve, Overrides};
use report::ScenarioReport;
use scenarios::{run_scenario, ALL_SCENARIOS};

#[derive(Parser)]
#[command(name = "fourstate", version, about = "Four-state quantum scenarios on a classical ensemble")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Flat key=value settings file; flags override its entries.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output directory for reports and data files.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Seed for every pseudo-random draw.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    /// Number of time samples on the interference grid.
    #[arg(long, global = true, value_name = "N")]
    grid: Option<usize>,

    /// Frequency difference driving the interference signal.
    #[arg(long, global = true, value_name = "X")]
    delta: Option<f64>,

    /// Number of environment states in the ensemble.
    #[arg(long = "env-states", global = true, value_name = "Z")]
    env_states: Option<usize>,

    /// Magnitude of sampled ensemble perturbations.
    #[arg(long, global = true, value_name = "X")]
    perturb: Option<f64>,

    /// Test hook: corrupt one tolerance so a failure surfaces.
    #[arg(long, global = true, hide = true)]
    inject_failure: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Entangled pair states: expectations, outcomes, conditionals.
    Entanglement,
    /// Two-path interference time series.
    Interference,
    /// Controlled-flip truth table and entangling action.
    Cnot,
    /// Correlation-inequality scan: quantum violation, classical bound.
    Chsh,
    /// Exchange sectors and invariance under symmetric evolution.
    Exchange,
    /// Admissible ensemble perturbations and the binary dump.
    Environment,
    /// Every scenario in order, with a combined summary.
    All {
        /// Run the scenarios on separate threads.
        #[arg(long)]
        parallel: bool,
    },
}

fn overrides(cli: &Cli) -> Overrides {
    Overrides {
        out: cli.out.clone(),
        seed: cli.seed,
        grid: cli.grid,
        delta: cli.delta,
        env_states: cli.env_states,
        perturb: cli.perturb,
    }
}

fn fail_input(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn run_single(name: &str, cli: &Cli) -> ExitCode {
    let settings = match resolve(cli.config.as_deref(), &overrides(cli)) {
        Ok(s) => s,
        Err(e) => return fail_input(&e),
    };
    if let Err(e) = std::fs::create_dir_all(&settings.out) {
        return fail_input(&format!("cannot create {}: {e}", settings.out.display()));
    }
    let report = match run_scenario(name, &settings, &settings.out, cli.inject_failure) {
        Ok(r) => r,
        Err(e) => return fail_input(&e),
    };
    if let Err(e) = report.write(&settings.out) {
        return fail_input(&e);
    }
    print!("{}", report.text());
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run_all(cli: &Cli, parallel: bool) -> ExitCode {
    let settings = match resolve(cli.config.as_deref(), &overrides(cli)) {
        Ok(s) => s,
        Err(e) => return fail_input(&e),
    };
    if let Err(e) = std::fs::create_dir_all(&settings.out) {
        return fail_input(&format!("cannot create {}: {e}", settings.out.display()));
    }

    let results: Vec<Result<ScenarioReport, String>> = if parallel {
        // Scenarios write disjoint files, so they can run concurrently;
        // results are collected in canonical order either way.
        std::thread::scope(|scope| {
            let handles: Vec<_> = ALL_SCENARIOS
                .iter()
                .map(|name| {
                    let settings = &settings;
                    let out = &settings.out;
                    let inject = cli.inject_failure;
                    scope.spawn(move || run_scenario(name, settings, out, inject))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("scenario thread")).collect()
        })
    } else {
        ALL_SCENARIOS
            .iter()
            .map(|name| run_scenario(name, &settings, &settings.out, cli.inject_failure))
            .collect()
    };

    let mut reports = Vec::new();
    for result in results {
        match result {
            Ok(r) => reports.push(r),
            Err(e) => return fail_input(&e),
        }
    }

    let mut summary_text = String::new();
    let mut failures = 0usize;
    for report in &reports {
        if let Err(e) = report.write(&settings.out) {
            return fail_input(&e);
        }
        summary_text.push_str(&report.text());
        failures += report.checks.iter().filter(|c| !c.pass).count();
    }
    summary_text.push_str(&format!(
        "summary: {} scenarios, {} failed checks -> {}\n",
        reports.len(),
        failures,
        if failures == 0 { "PASS" } else { "FAIL" }
    ));

    let summary_json = json!({
        "scenarios": reports
            .iter()
            .map(|r| {
                json!({
                    "scenario": r.scenario,
                    "passed": r.passed,
                    "checks": r.checks.len(),
                    "failed_checks": r.checks.iter().filter(|c| !c.pass).count(),
                })
            })
            .collect::<Vec<_>>(),
        "failed_checks": failures,
        "passed": failures == 0,
    });
    let json_text = format!(
        "{}\n",
        serde_json::to_string_pretty(&summary_json).expect("summary serializes")
    );
    if let Err(e) = std::fs::write(settings.out.join("summary.json"), json_text) {
        return fail_input(&format!("cannot write summary.json: {e}"));
    }
    if let Err(e) = std::fs::write(settings.out.join("summary.txt"), &summary_text) {
        return fail_input(&format!("cannot write summary.txt: {e}"));
    }

    print!("{summary_text}");
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Entanglement => run_single("entanglement", &cli),
        Command::Interference => run_single("interference", &cli),
        Command::Cnot => run_single("cnot", &cli),
        Command::Chsh => run_single("chsh", &cli),
        Command::Exchange => run_single("exchange", &cli),
        Command::Environment => run_single("environment", &cli),
        Command::All { parallel } => run_all(&cli, parallel),
    }
}
