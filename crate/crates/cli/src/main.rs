//! `hyperholo`: field grids, jump reports and claim certification from JSON
//! scenario files.
//!
//! Exit codes: 0 success, 1 a check failed, 2 configuration or I/O error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "hyperholo", version, about = "Quaternionic Cauchy-type integrals in the plane")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the Cauchy-type integral on the scenario grid and write CSV.
    Field {
        /// Scenario JSON file with a `grid` section.
        config: PathBuf,
        /// Output path; defaults to `output.field_csv`, then stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the boundary jump formulas at equispaced boundary points.
    Jump {
        config: PathBuf,
        #[arg(long, default_value_t = 16)]
        points: usize,
        /// Output path; defaults to `output.jump_json`, then stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify the claim suite on a scenario set.
    Certify {
        /// `reference` or a path to a scenario (set) JSON file.
        input: String,
        /// Run a single claim, e.g. `lemma3`.
        #[arg(long)]
        claim: Option<String>,
        /// JSON report path; a `.meta.json` sidecar is written next to it.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Markdown summary path.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Print θ_α and K_α at a single point.
    KernelEval {
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        alpha_re: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        alpha_im: f64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
    },
}

fn init_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("HYPERHOLO_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| anyhow::anyhow!("HYPERHOLO_THREADS must be a positive integer, got {v:?}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    let outcome = match cli.command {
        Command::Field { config, out } => commands::field(&config, out.as_deref()),
        Command::Jump { config, points, out } => commands::jump(&config, points, out.as_deref()),
        Command::Certify { input, claim, out, summary } => {
            commands::certify(&input, claim.as_deref(), out.as_deref(), summary.as_deref())
        }
        Command::KernelEval { alpha_re, alpha_im, x, y } => commands::kernel_eval(alpha_re, alpha_im, x, y),
    };
    match outcome {
        Ok(commands::Status::Pass) => ExitCode::SUCCESS,
        Ok(commands::Status::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
