use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qfisher_cli::{
    analyze, json, oracle, sweep_csv, write_output, CliError, OracleCheck, StateSpec, SweepRequest,
    DEFAULT_RESTARTS, DEFAULT_SEED,
};

#[derive(Parser)]
#[command(
    name = "qfisher",
    version,
    about = "Quantum Fisher information of N-qubit states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "ghz_q", alias = "ghz-q")]
    GhzQ,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    #[value(name = "grid_lu", alias = "grid-lu")]
    GridLu,
    #[value(name = "dense_reduction", alias = "dense-reduction")]
    DenseReduction,
    #[value(name = "stabilizer_sum", alias = "stabilizer-sum")]
    StabilizerSum,
}

#[derive(Subcommand)]
enum Command {
    /// Covariances, optimal generators and usefulness verdict of one state.
    Analyze {
        /// State spec as inline JSON or a path to a JSON file.
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = DEFAULT_RESTARTS)]
        restarts: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Tabulate F_Q across a one-parameter family as CSV.
    Sweep {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_RESTARTS)]
        restarts: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Compare the library against a brute-force oracle.
    Oracle {
        #[arg(long)]
        spec: String,
        #[arg(long, value_enum)]
        check: Check,
        /// Grid spacing in degrees for grid_lu.
        #[arg(long, default_value_t = 2.0)]
        resolution: f64,
        #[arg(long, default_value_t = DEFAULT_RESTARTS)]
        restarts: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Analyze {
            spec,
            restarts,
            seed,
            format,
        } => {
            let report = analyze(&StateSpec::load(&spec)?, restarts, seed)?;
            match format {
                Format::Json => print!("{}", json::to_string(&report)),
                Format::Table => print!("{}", report.to_table()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep {
            family: Family::GhzQ,
            n,
            from,
            to,
            steps,
            out,
            restarts,
            seed,
        } => {
            let csv = sweep_csv(&SweepRequest {
                n,
                from,
                to,
                steps,
                restarts,
                seed,
            })?;
            write_output(&out, &csv)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle {
            spec,
            check,
            resolution,
            restarts,
            seed,
        } => {
            let check = match check {
                Check::GridLu => OracleCheck::GridLu,
                Check::DenseReduction => OracleCheck::DenseReduction,
                Check::StabilizerSum => OracleCheck::StabilizerSum,
            };
            let report = oracle(&StateSpec::load(&spec)?, check, resolution, restarts, seed)?;
            print!("{}", json::to_string(&report));
            if report.pass {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!(
                    "{} failed: gap {:e} exceeds {:e}",
                    report.check, report.gap, report.tolerance
                );
                Ok(ExitCode::FAILURE)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qfisher: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
