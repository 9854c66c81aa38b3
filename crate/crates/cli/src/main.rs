use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use rumin_cli::{cmd_cantor, cmd_mass, cmd_sweep, cmd_tables, cmd_verify, emit, VerifyArgs};
use rumin_core::currents::cantor::DEFAULT_GAP_EXPONENT;

#[derive(Parser)]
#[command(name = "rumin", version, about = "Rumin complex and currents on Heisenberg groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dimensions and weights of Λ^h and E₀^h.
    Tables {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        csv: bool,
    },
    /// Exact identity suite; exits non-zero if any row fails.
    Verify {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        degree_bound: u32,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        instances: usize,
        #[arg(long)]
        json: bool,
        /// Flip the sign of dθ in the complex under test.
        #[arg(long, hide = true)]
        corrupt_dtheta: bool,
    },
    /// Masses of a chain read from a JSON config.
    Mass {
        config: PathBuf,
        #[arg(long)]
        oblique: bool,
        #[arg(long)]
        rumin: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Masses of the dilated chain for each scale factor.
    Sweep {
        config: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = ["1".to_string(), "2".into(), "4".into(), "8".into(), "64".into()])]
        lambdas: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stage table for the fat Cantor curve.
    Cantor {
        #[arg(long, default_value_t = 13)]
        levels: usize,
        #[arg(long, default_value_t = DEFAULT_GAP_EXPONENT)]
        gap_exponent: f64,
        #[arg(long)]
        degenerate: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run() -> Result<ExitCode> {
    let (text, ok) = match Cli::parse().cmd {
        Cmd::Tables { n, csv } => (Some(cmd_tables(n, csv)?), true),
        Cmd::Verify {
            n,
            degree_bound,
            seed,
            instances,
            json,
            corrupt_dtheta,
        } => {
            let args = VerifyArgs {
                n,
                degree_bound,
                seed,
                instances,
                corrupt_dtheta,
            };
            let (text, ok) = cmd_verify(&args, json)?;
            (Some(text), ok)
        }
        Cmd::Mass {
            config,
            oblique,
            rumin,
            csv,
        } => (Some(cmd_mass(&config, oblique, rumin, csv)?), true),
        Cmd::Sweep { config, lambdas, out } => (emit(cmd_sweep(&config, &lambdas)?, out.as_deref())?, true),
        Cmd::Cantor {
            levels,
            gap_exponent,
            degenerate,
            out,
        } => (emit(cmd_cantor(levels, gap_exponent, degenerate)?, out.as_deref())?, true),
    };
    if let Some(t) = text {
        print!("{t}");
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
