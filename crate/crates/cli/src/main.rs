use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wallspan_cli::commands::{self, render};
use wallspan_cli::config::DEFAULT_SEED;
use wallspan_cli::{run_acceptance, run_campaign, CampaignConfig, CliError, OutputFormat, Span};
use wallspan_core::fields::Tolerances;
use wallspan_core::WallParams;

/// Checks of pspan(Q(m, n)), the maximal number of independent line fields on a Wall manifold.
///
/// Exit codes: 0 success, 1 a check or criterion failed, 2 usage error.
#[derive(Parser)]
#[command(name = "wallspan", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form invariants of Q(m, n)
    Invariants {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
    /// Total Stiefel-Whitney class and the virtual-class obstruction
    Cohomology {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        /// largest k to test (default: dim)
        #[arg(long)]
        k_max: Option<u64>,
    },
    /// Clifford family for CP^n and its exact identity checks
    Clifford {
        #[arg(long)]
        n: u64,
        /// list matrices only up to this size
        #[arg(long, default_value_t = 16)]
        max_listed: usize,
    },
    /// Sampling campaign over a grid, with a full report
    Fields(GridArgs),
    /// Run the acceptance criteria
    Accept(GridArgs),
}

#[derive(Args)]
struct GridArgs {
    /// m range, `A` or `A..B` (inclusive)
    #[arg(long, default_value = "1..4")]
    m: Span,
    /// n range, `A` or `A..B` (inclusive)
    #[arg(long, default_value = "0..8")]
    n: Span,
    #[arg(long, env = "WALLSPAN_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    samples: u64,
    #[arg(long, default_value_t = Tolerances::default().algebraic)]
    tol_algebraic: f64,
    #[arg(long, default_value_t = Tolerances::default().invariance)]
    tol_invariance: f64,
    #[arg(long, default_value_t = Tolerances::default().rank)]
    tol_rank: f64,
}

impl GridArgs {
    fn config(&self, format: OutputFormat) -> CampaignConfig {
        CampaignConfig {
            m_range: self.m,
            n_range: self.n,
            samples_per_case: self.samples,
            seed: self.seed,
            tolerances: Tolerances {
                algebraic: self.tol_algebraic,
                invariance: self.tol_invariance,
                rank: self.tol_rank,
            },
            output_format: format,
        }
    }
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    let format = cli.format;
    match cli.command {
        Command::Invariants { m, n } => {
            let r = commands::invariants(WallParams::new(m, n)?)?;
            Ok((render(&r, format, commands::invariants_text)?, r.consistent))
        }
        Command::Cohomology { m, n, k_max } => {
            let r = commands::cohomology(WallParams::new(m, n)?, k_max)?;
            let ok = r.sw_upper_bound >= r.pspan;
            Ok((render(&r, format, commands::cohomology_text)?, ok))
        }
        Command::Clifford { n, max_listed } => {
            let r = commands::clifford(n, max_listed)?;
            Ok((render(&r, format, commands::clifford_text)?, r.passed))
        }
        Command::Fields(args) => {
            let r = run_campaign(&args.config(format))?;
            Ok((render(&r, format, commands::campaign_text)?, r.all_passed))
        }
        Command::Accept(args) => {
            let r = run_acceptance(&args.config(format))?;
            Ok((render(&r, format, |r| r.text())?, r.all_passed))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
