//! `mmis`: exact MMIS entanglement tables, slope fits and channel simulations
//! from the command line.

mod commands;
mod config;
mod error;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::Config;
use crate::error::{CliError, EXIT_CONFIG};

#[derive(Parser, Debug)]
#[command(name = "mmis", version, about = "Entanglement of maximally mixed invariant states")]
struct Cli {
    /// JSON file whose keys are flag names; explicit flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact multiplicity of an irrep in the N-fold tensor power.
    Mult(MultArgs),
    /// Bipartite entanglement measures of the MMIS.
    Ent(EntArgs),
    /// Least-squares slope of a column against ln N.
    SlopeFit(SlopeFitArgs),
    /// Evolve a model channel to its steady state.
    Simulate(SimulateArgs),
    /// Superoperator fixed-point analysis within one symmetry sector.
    SteadyCheck(SteadyArgs),
    /// Two-point correlators of the MMIS.
    Correlator(CorrelatorArgs),
    /// Entanglement of the SU(2) invariant thermal state.
    FiniteT(FiniteTArgs),
    /// Exact k-site reduced spectrum of the MMIS.
    Reduced(ReducedArgs),
    /// SU(2) fidelity correlator.
    Fidelity(FidelityArgs),
    /// MPDO bond dimension and purification bounds.
    MpdoBounds(MpdoArgs),
}

#[derive(Args, Debug)]
pub struct MultArgs {
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub irrep: Option<String>,
    /// N, A..B or A:B[:STEP].
    #[arg(long)]
    pub sites: Option<String>,
}

#[derive(Args, Debug)]
pub struct EntArgs {
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub sites: Option<String>,
    /// Sites in block A; defaults to N/2.
    #[arg(long)]
    pub cut: Option<String>,
    /// Logarithm base, e or 2.
    #[arg(long)]
    pub base: Option<String>,
}

#[derive(Args, Debug)]
pub struct SlopeFitArgs {
    /// CSV file with an `N` column, or `-` for stdin.
    #[arg(long)]
    pub input: Option<String>,
    #[arg(long)]
    pub column: Option<String>,
    /// Compare against the predicted slope of this Lie group.
    #[arg(long)]
    pub group: Option<String>,
    /// Fail (exit 3) if the slope is further than this from the prediction.
    #[arg(long)]
    pub tolerance: Option<String>,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long)]
    pub sites: Option<String>,
    /// periodic or open; defaults to the model's own choice.
    #[arg(long)]
    pub boundary: Option<String>,
    /// Timestep cap.
    #[arg(long)]
    pub steps: Option<String>,
    /// Stop once f(t) falls below this.
    #[arg(long)]
    pub tol: Option<String>,
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long)]
    pub phi1: Option<String>,
    #[arg(long)]
    pub phi2: Option<String>,
    /// Seed for trajectory sampling.
    #[arg(long)]
    pub seed: Option<String>,
    /// Write the final density matrix here (binary, single N only).
    #[arg(long)]
    pub dump: Option<PathBuf>,
    /// Sample one pure-state trajectory instead of evolving the density matrix.
    #[arg(long)]
    pub trajectory: bool,
}

#[derive(Args, Debug)]
pub struct SteadyArgs {
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long)]
    pub sites: Option<String>,
    /// Irrep label such as j=0 or inv, or `all` for the whole space.
    #[arg(long)]
    pub sector: Option<String>,
    /// Restrict an SU(2) sector to one magnetization, e.g. 0 or -1/2.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<String>,
    #[arg(long)]
    pub boundary: Option<String>,
}

#[derive(Args, Debug)]
pub struct CorrelatorArgs {
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub sites: Option<String>,
    /// spin-spin, zz, xxyy, zz-quadratic or xxyy-quadratic.
    #[arg(long)]
    pub kind: Option<String>,
    /// Also evaluate on the dense MMIS and check against the exact value.
    #[arg(long)]
    pub numeric: bool,
}

#[derive(Args, Debug)]
pub struct FiniteTArgs {
    /// Sites in A; a range sweeps, with N_B following N_A unless given.
    #[arg(long)]
    pub na: Option<String>,
    #[arg(long)]
    pub nb: Option<String>,
    /// inf, a positive number, or N for T = N_A + N_B.
    #[arg(long)]
    pub temperature: Option<String>,
    #[arg(long)]
    pub base: Option<String>,
}

#[derive(Args, Debug)]
pub struct ReducedArgs {
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub sites: Option<String>,
    #[arg(long)]
    pub k: Option<String>,
}

#[derive(Args, Debug)]
pub struct FidelityArgs {
    #[arg(long)]
    pub sites: Option<String>,
}

#[derive(Args, Debug)]
pub struct MpdoArgs {
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub sites: Option<String>,
    #[arg(long)]
    pub cut: Option<String>,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = Config::load(cli.config.as_deref())?;
    let mut out: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    commands::init_workers()?;
    let result = match &cli.command {
        Command::Mult(a) => commands::mult(&cfg, a, &mut out),
        Command::Ent(a) => commands::ent(&cfg, a, &mut out),
        Command::SlopeFit(a) => commands::slope_fit(&cfg, a, &mut out),
        Command::Simulate(a) => commands::simulate(&cfg, a, &mut out),
        Command::SteadyCheck(a) => commands::steady_check(&cfg, a, &mut out),
        Command::Correlator(a) => commands::correlator(&cfg, a, &mut out),
        Command::FiniteT(a) => commands::finite_t(&cfg, a, &mut out),
        Command::Reduced(a) => commands::reduced(&cfg, a, &mut out),
        Command::Fidelity(a) => commands::fidelity(&cfg, a, &mut out),
        Command::MpdoBounds(a) => commands::mpdo_bounds(&cfg, a, &mut out),
    };
    // Partial output is still useful when an oracle check fails afterwards.
    out.flush()?;
    result
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
