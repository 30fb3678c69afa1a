use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use tausum_cli::commands::{self, CommandError, LemmaScale};
use tausum_cli::config::{Config, DEFAULT_BOUND_GRID, DEFAULT_RATIO_GRID};
use tausum_cli::render;
use tausum_cli::report::{self, CsvRow, Verdict};

const AFTER_HELP: &str = "\
Exit status: 0 when every checked inequality holds, 1 when one is violated
(or the two summation engines disagree), 2 on configuration or input errors.

The specialisation to n^2+1 feeds a known bound on D(-1)-quadruples, whose
largest element is below 3.677e58. That step is an external proof dependency
and is not checked by this tool.";

/// Explicit upper bounds for sums of tau(n^2 + 2bn + c), checked against
/// exact divisor sums.
#[derive(Debug, Parser)]
#[command(name = "tausum", version, after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Polynomial list and N grid (`b,c` lines plus an optional `grid:` line).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Largest N: caps the grid, sets the n^2+1 range and the lemma scale.
    #[arg(long, global = true, value_name = "INT", value_parser = clap::value_parser!(u64).range(1..))]
    n_max: Option<u64>,

    /// Write a structured JSON report to PATH.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Write CSV rows to PATH (verify commands only).
    #[arg(long, global = true, value_name = "PATH")]
    csv: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_name = "INT", value_parser = clap::value_parser!(u64).range(1..=1024))]
    threads: Option<u64>,

    /// Target truncation error for L(1, chi).
    #[arg(long, global = true, value_name = "REAL", default_value_t = 1e-6)]
    epsilon: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the explicit divisor-sum bound on the configured polynomials.
    #[command(name = "verify-thm2")]
    VerifyBound,
    /// Check the n^2+1 bound exhaustively to 10^4, then at sampled N.
    #[command(name = "verify-cor1")]
    VerifySquarePlusOne,
    /// Print certified L(1, chi) for the five example polynomials.
    TableLvalues,
    /// Check the supporting estimates numerically.
    LemmaSuite,
    /// Compare exact sums with the N log N asymptotic.
    #[command(name = "ratio-thm1")]
    AsymptoticRatio,
}

const DEFAULT_SQUARE_PLUS_ONE_N_MAX: u64 = 10_000_000;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Verdict::Holds) => ExitCode::SUCCESS,
        Ok(Verdict::Violated) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<Verdict, CommandError> {
    if !(cli.epsilon.is_finite() && cli.epsilon > 0.0) {
        return Err(tausum_core::Error::InvalidEpsilon.into());
    }
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t as usize)
            .build_global()
            .map_err(|e| CommandError::ThreadPool(e.to_string()))?;
    }
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::examples(),
    };
    let capped = |config: &Config, default: &[u64]| -> Vec<u64> {
        let mut grid = config.grid_or(default);
        if let Some(max) = cli.n_max {
            grid.retain(|&n| n <= max);
        }
        grid
    };

    let start = Instant::now();
    let verdict = match cli.command {
        Command::VerifyBound => {
            let polys = commands::parse_polys(&config)?;
            let reports =
                commands::verify_bound(&polys, &capped(&config, &DEFAULT_BOUND_GRID), cli.epsilon)?;
            print!("{}", render::bound(&reports));
            emit(cli, &reports, Some(&report::bound_csv_rows(&reports)))?;
            Verdict::from_holds(reports.iter().all(|r| r.verdict == Verdict::Holds))
        }
        Command::VerifySquarePlusOne => {
            let r = commands::verify_square_plus_one(
                cli.n_max.unwrap_or(DEFAULT_SQUARE_PLUS_ONE_N_MAX),
            )?;
            print!("{}", render::square_plus_one(&r));
            emit(cli, &r, Some(&report::square_plus_one_csv_rows(&r)))?;
            r.verdict
        }
        Command::TableLvalues => {
            let rows = commands::table_lvalues(cli.epsilon)?;
            print!("{}", render::lvalues(&rows));
            emit(cli, &rows, None)?;
            Verdict::from_holds(rows.iter().all(|r| r.matches))
        }
        Command::LemmaSuite => {
            let mut scale = LemmaScale {
                epsilon: cli.epsilon,
                ..LemmaScale::default()
            };
            if let Some(n) = cli.n_max {
                scale.squarefree_limit = n;
                scale.rho_limit = scale.rho_limit.min(n);
            }
            let verdicts = commands::lemma_suite(scale)?;
            print!("{}", render::lemmas(&verdicts));
            emit(cli, &verdicts, None)?;
            Verdict::from_holds(verdicts.iter().all(|v| v.verdict == Verdict::Holds))
        }
        Command::AsymptoticRatio => {
            // Without a config file only n^2+1 is tabulated.
            let config = if cli.config.is_some() {
                config
            } else {
                Config {
                    polys: vec![(0, 1)],
                    grid: None,
                }
            };
            let polys = commands::parse_polys(&config)?;
            let rows = commands::asymptotic_ratios(
                &polys,
                &capped(&config, &DEFAULT_RATIO_GRID),
                cli.epsilon,
            )?;
            print!("{}", render::ratios(&rows));
            emit(cli, &rows, None)?;
            // Leaving the envelope is informational, never a failure.
            Verdict::Holds
        }
    };
    eprintln!("finished in {:.2} s", start.elapsed().as_secs_f64());
    Ok(verdict)
}

fn output_err(path: &Path, e: impl std::fmt::Display) -> CommandError {
    CommandError::Output {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

fn emit<T: Serialize>(
    cli: &Cli,
    value: &T,
    csv_rows: Option<&[CsvRow]>,
) -> Result<(), CommandError> {
    if let Some(path) = &cli.json {
        report::write_json(path, value).map_err(|e| output_err(path, e))?;
    }
    if let Some(path) = &cli.csv {
        let rows = csv_rows
            .ok_or_else(|| output_err(path, "CSV output is only available for verify commands"))?;
        report::write_csv(path, rows).map_err(|e| output_err(path, e))?;
    }
    Ok(())
}
