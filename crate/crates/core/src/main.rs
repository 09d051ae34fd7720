use std::path::PathBuf;
use std::process::ExitCode;

use busemann_lab::suite::{emit_report, run_suite, Format, ScenarioConfig, SuiteName};
use busemann_lab::LabError;
use clap::Parser;

/// Runs a named batch of geometric checks and prints a report.
///
/// Exit status: 0 when every check passes, 1 when a check fails,
/// 2 for configuration, usage or I/O errors.
#[derive(Parser, Debug)]
#[command(name = "busemann-lab", version)]
struct Cli {
    /// JSON scenario file; flags given alongside it take precedence
    #[arg(long)]
    config: Option<PathBuf>,
    /// axioms, busemann, horofn, transfers, scissors, tapes, grasshopper, counterexamples or all
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    format: String,
    /// Override the oracle agreement tolerance
    #[arg(long)]
    tol: Option<f64>,
}

fn load(cli: &Cli) -> Result<(ScenarioConfig, Format), LabError> {
    let format: Format = cli.format.parse()?;
    let mut config = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| LabError::Config(format!("cannot read {}: {e}", path.display())))?;
            let mut c = ScenarioConfig::from_json(&text)?;
            if let Some(s) = &cli.suite {
                c.suite = s.parse()?;
            }
            c
        }
        None => {
            let name = cli
                .suite
                .as_deref()
                .ok_or_else(|| LabError::Config("give --suite or --config".into()))?;
            ScenarioConfig::new(name.parse::<SuiteName>()?)
        }
    };
    if cli.seed.is_some() {
        config.seed = cli.seed;
    }
    if cli.tol.is_some() {
        config.tolerance = cli.tol;
    }
    if cli.out.is_some() {
        config.out = cli.out.clone();
    }
    config.validate()?;
    Ok((config, format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (config, format) = match load(&cli) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = match run_suite(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match emit_report(&result, format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match &config.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    let failed = result.failed();
    for r in &failed {
        eprintln!("{}", r.summary());
    }
    eprintln!(
        "{}: {}/{} checks passed in {:.2}s",
        result.suite,
        result.reports.len() - failed.len(),
        result.reports.len(),
        result.duration.as_secs_f64()
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
