//! `nullify`: nullification numbers and related invariants from the
//! command line.

mod cache;
mod commands;
mod config;
mod failure;
mod input;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Format, Settings};
use failure::Failure;

#[derive(Parser, Debug)]
#[command(
    name = "nullify",
    version,
    about = "Nullification numbers of knots and links"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by every subcommand; each overrides the config file.
#[derive(Args, Debug, Default)]
pub struct Global {
    /// Output format [default: json]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for random instances [default: 0]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for batch input [default: 1]
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// key=value settings file (also $NULLIFY_CONFIG)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Longest witness tried by the general search [default: 4]
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Largest diagram the exhaustive search accepts [default: 14]
    #[arg(long, global = true)]
    pub limit: Option<usize>,
    /// Reidemeister III lookahead in simplification [default: 2]
    #[arg(long, global = true)]
    pub r3_depth: Option<usize>,
    /// Recursion budget for the HOMFLY computation [default: 2000000]
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Do not add Reidemeister II moves to the general search
    #[arg(long, global = true)]
    pub no_r2: bool,
    /// Memoize search results under $NULLIFY_CACHE_DIR
    #[arg(long, global = true)]
    pub cache: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a diagram and print it as PD and Gauss code
    Parse(input::Input),
    /// Polynomials, signature, genus, Seifert circles, writhe
    Invariants(input::Input),
    /// Diagram nullification number by exhaustive search
    Nulldiag(commands::NulldiagArgs),
    /// Interval for the nullification number of the link
    Nullbound(input::Input),
    /// Closed forms for a 4-plat given by a fraction or vector
    Fourplat(commands::FourplatArgs),
    /// Build Montesinos diagrams and check the Seifert circle formula
    Montesinos(commands::MontesinosArgs),
    /// Nullification-number-one tables and counts
    #[command(subcommand)]
    Enumerate(commands::EnumerateCmd),
    /// Run the acceptance checks
    Verify(commands::VerifyArgs),
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    let s = Settings::resolve(&cli.global)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(s.jobs)
        .build()
        .map_err(|e| Failure::Compute(format!("thread pool: {e}")))?;
    pool.install(|| {
        let report = match &cli.command {
            Command::Parse(i) => commands::parse(i, &s)?,
            Command::Invariants(i) => commands::invariants(i, &s)?,
            Command::Nulldiag(a) => commands::nulldiag(a, &s)?,
            Command::Nullbound(i) => commands::nullbound(i, &s)?,
            Command::Fourplat(a) => commands::fourplat(a, &s)?,
            Command::Montesinos(a) => commands::montesinos(a, &s)?,
            Command::Enumerate(e) => commands::enumerate(e, &s)?,
            Command::Verify(a) => commands::verify(a, &s)?,
        };
        let text = match report.raw {
            Some(t) => t,
            None => output::render(s.format, &report.items, report.batch),
        };
        Ok((text, report.failed))
    })
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, failed)) => {
            let mut out = std::io::stdout().lock();
            if out
                .write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            eprintln!("nullify: {f}");
            ExitCode::from(f.code())
        }
    }
}
