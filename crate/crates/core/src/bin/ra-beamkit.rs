use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ra_beamkit::ao::Scheme;
use ra_beamkit::error::{Error, Result};
use ra_beamkit::experiment::{
    pattern_csv, pattern_from_report, run_scenario, run_sweep, sweep_csv, RunOptions, SweepField,
    SweepSpec,
};

#[derive(Parser)]
#[command(
    name = "ra-beamkit",
    version,
    about = "Rotatable-antenna multi-beam optimization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a scenario for each scheme and seed.
    Run {
        scenario: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Use seeds 0..M instead of the file's seeds.
        #[arg(long)]
        seed_count: Option<u64>,
        /// Comma-separated subset of ra,foa,ia.
        #[arg(long, value_delimiter = ',')]
        schemes: Option<Vec<String>>,
    },
    /// Mean max-min gain over a range of one scenario field.
    Sweep {
        scenario: PathBuf,
        /// num_antennas, spacing_wavelengths or eta_max_db.
        #[arg(long)]
        field: String,
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_hyphen_values = true
        )]
        values: Vec<f64>,
        /// Random scenarios per value; omit to reuse the file's directions.
        #[arg(long)]
        scenarios: Option<usize>,
        /// Base seed for the random scenarios.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Sample the array gain of a saved report over [0°, 180°] as CSV.
    Pattern {
        scenario: PathBuf,
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        step: Option<f64>,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run {
            scenario,
            out,
            seed_count,
            schemes,
        } => {
            let schemes = schemes
                .map(|list| {
                    list.iter()
                        .map(|s| s.parse::<Scheme>())
                        .collect::<Result<Vec<_>>>()
                })
                .transpose()?;
            let outcome = run_scenario(
                &scenario,
                &out,
                &RunOptions {
                    seed_count,
                    schemes,
                },
            )?;
            println!("scheme  best_seed  min_gain_db  frac_full  max_intf  mean_db");
            for s in &outcome.summaries {
                println!(
                    "{:<6}  {:>9}  {:>11.3}  {:>9.4}  {:>8.4}  {:>7.3}",
                    s.scheme,
                    s.best_seed,
                    s.min_desired_gain_db,
                    s.fraction_of_full_gain,
                    s.max_interference_gain_linear,
                    s.mean_min_desired_gain_db
                );
            }
            println!("wrote {} files to {}", outcome.files.len(), out.display());
        }
        Command::Sweep {
            scenario,
            field,
            values,
            scenarios,
            seed,
            out,
        } => {
            let spec = SweepSpec {
                field: field.parse::<SweepField>()?,
                values,
                random_scenarios: scenarios,
                base_seed: seed,
            };
            let rows = run_sweep(&scenario, &spec, &out)?;
            print!("{}", sweep_csv(&rows));
        }
        Command::Pattern {
            scenario,
            state,
            step,
            out,
        } => {
            let csv = pattern_csv(&pattern_from_report(&scenario, &state, step)?);
            match out {
                Some(path) => std::fs::write(path, csv).map_err(Error::from)?,
                None => print!("{csv}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage_error = e.use_stderr();
            let _ = e.print();
            // exit code 2 is reserved for solver failures
            return if usage_error {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
