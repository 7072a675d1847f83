use std::path::PathBuf;

use clap::{Parser, Subcommand};

use isopencil_cli::{
    emit_support_csv, parse_matrix, run_analyze, run_lax, run_similar, CliError, Config,
};

#[derive(Parser)]
#[command(
    name = "isopencil",
    version,
    about = "Decide whether the Hermitian family cos t * Re B + sin t * Im B keeps a constant spectrum, and certify the verdict"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check on a matrix file and emit the JSON report.
    Analyze {
        file: PathBuf,
        /// Angle samples per sweep.
        #[arg(long, default_value_t = 720)]
        samples: usize,
        /// Base tolerance for all verdicts.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the k-th support values over the angle grid as CSV.
    Range {
        file: PathBuf,
        /// Which support value (1 = largest eigenvalue).
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 720)]
        samples: usize,
        /// CSV destination.
        #[arg(long)]
        csv: PathBuf,
    },
    /// Integrate the unitary flow and append its error metrics to the report.
    Lax {
        file: PathBuf,
        /// Runge-Kutta steps over one period.
        #[arg(long, default_value_t = 2000)]
        steps: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve for a rotational witness generator and verify the conjugation.
    Similar {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze {
            file,
            samples,
            tol,
            out,
        } => {
            let b = parse_matrix(&file)?;
            let report = run_analyze(&b, &Config { samples, tol })?;
            emit(report.to_json(), out)?;
        }
        Command::Range {
            file,
            k,
            samples,
            csv,
        } => {
            let b = parse_matrix(&file)?;
            emit_support_csv(&b, k, samples, &csv)?;
        }
        Command::Lax { file, steps, out } => {
            let b = parse_matrix(&file)?;
            let report = run_lax(&b, &Config::default(), steps)?;
            emit(report.to_json(), out)?;
        }
        Command::Similar { file, tol } => {
            let b = parse_matrix(&file)?;
            let config = Config {
                tol,
                ..Config::default()
            };
            match run_similar(&b, &config)? {
                (Some(k), err) => {
                    println!("witness generator K:");
                    print!("{k}");
                    println!("verified conjugation error over the angle grid: {err:.3e}");
                }
                (None, residual) => {
                    println!("no witness: least-squares residual {residual:.6} exceeds the bound");
                }
            }
        }
    }
    Ok(())
}

fn emit(text: String, out: Option<PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            let _ = e.print();
            return;
        }
        Err(e) => {
            let _ = e.print();
            std::process::exit(1);
        }
    };
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
