use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use star_solve::batch::{self, BatchError, Format, Outcome, SynthOptions};

/// Line voltages of three-phase star circuits from phase-to-phase measurements.
#[derive(Parser)]
#[command(name = "star-solve", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve every record of a CSV or JSON-lines file (`-` for stdin).
    Solve {
        path: String,
        /// Output format; defaults to the input format.
        #[arg(long)]
        format: Option<Format>,
        /// Solve records concurrently; output order is unchanged.
        #[arg(long)]
        parallel: bool,
        /// Relative closure tolerance (default 1e-8, or STAR_SOLVE_TOLERANCE).
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Check solver output against closure and independent oracles.
    Verify {
        path: String,
        /// Closure tolerance, resolved as for `solve`.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Emit synthetic measurements with planted line voltages.
    Synth {
        /// Number of records.
        #[arg(long)]
        count: usize,
        /// Same seed, same bytes.
        #[arg(long)]
        seed: u64,
        /// Balanced load: phase differences of 120 degrees, psi columns empty.
        #[arg(long)]
        symmetric: bool,
        #[arg(long, default_value = "csv")]
        format: Format,
        /// Multiplies every voltage.
        #[arg(long, default_value_t = 100.0)]
        scale: f64,
    },
}

fn run(cli: Cli) -> Result<Outcome, BatchError> {
    let stdout = io::stdout().lock();
    match cli.command {
        Command::Solve {
            path,
            format,
            parallel,
            tolerance,
        } => {
            let tol = batch::resolve_tolerance(tolerance)?;
            batch::run_solve(&path, format, parallel, tol, stdout)
        }
        Command::Verify { path, tolerance } => {
            let tol = batch::resolve_tolerance(tolerance)?;
            let (outcome, total, failed) = batch::run_verify(&path, tol, stdout)?;
            eprintln!("verified {total} records: {} passed, {failed} failed", total - failed);
            Ok(outcome)
        }
        Command::Synth {
            count,
            seed,
            symmetric,
            format,
            scale,
        } => {
            let opts = SynthOptions {
                count,
                seed,
                balanced: symmetric,
                scale,
            };
            batch::run_synth(opts, format, stdout)
        }
    }
}

fn main() -> ExitCode {
    // Usage errors exit with 1; clap would use 2, which is reserved for
    // failed records.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(outcome) => ExitCode::from(outcome.exit_code()),
        Err(BatchError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(io::stderr(), "star-solve: {e}");
            ExitCode::from(1)
        }
    }
}
