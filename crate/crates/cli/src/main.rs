//! Command-line front end: single-point QFI evaluation, spectrum and state
//! inspection, parameter sweeps, and the self-verification suite.
//!
//! Exit codes: 0 on success, 1 on verification failure, 2 on usage or
//! parameter errors.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use spinqfi_core::ModelParams;

#[derive(Parser)]
#[command(
    name = "spinqfi",
    version,
    about = "Quantum Fisher information of thermal two-spin XX chains with DM interaction",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Print the chain spectrum (closed form for N = 2, numeric otherwise)
    Spectrum(ParamArgs),
    /// Print the thermal density matrix, closed form against matrix exponential
    State(ParamArgs),
    /// Compute the QFI at a single parameter point
    Qfi(QfiArgs),
    /// Evaluate the QFI over a 2-D parameter grid and write a table
    Sweep(SweepArgs),
    /// Run the self-verification suite
    Verify(VerifyArgs),
}

/// Model parameters; flag names follow the conventional symbols.
#[derive(Args, Debug, Clone)]
struct ParamArgs {
    /// Exchange coupling J (negative = ferromagnetic)
    #[arg(long = "J", default_value_t = -1.0, allow_negative_numbers = true)]
    coupling: f64,
    /// Homogeneous magnetic field B
    #[arg(long = "B", default_value_t = 0.0, allow_negative_numbers = true)]
    homogeneous_field: f64,
    /// Staggered magnetic field b
    #[arg(long = "b", default_value_t = 0.0, allow_negative_numbers = true)]
    staggered_field: f64,
    /// Dzyaloshinskii-Moriya strength D
    #[arg(long = "D", default_value_t = 0.0, allow_negative_numbers = true)]
    dm_coupling: f64,
    /// Temperature T (k = 1)
    #[arg(long = "T", default_value_t = 0.7, allow_negative_numbers = true)]
    temperature: f64,
    /// Number of spins N
    #[arg(long = "N", default_value_t = 2)]
    sites: usize,
}

impl ParamArgs {
    fn to_params(&self) -> ModelParams {
        ModelParams {
            coupling: self.coupling,
            homogeneous_field: self.homogeneous_field,
            staggered_field: self.staggered_field,
            dm_coupling: self.dm_coupling,
            temperature: self.temperature,
            sites: self.sites,
        }
    }
}

#[derive(Args)]
struct QfiArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Evaluate the ground-state (T -> 0) limit instead of the thermal state
    #[arg(long)]
    zero_temperature: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Fixed values for the parameters that are not swept
    #[command(flatten)]
    params: ParamArgs,
    /// Named sweep: fig1_TD, fig1_TB, fig1_Tb, fig2_Db or fig2_bB
    #[arg(long)]
    preset: Option<String>,
    /// Coupling sign for presets: ferro (J = -1) or antiferro (J = +1)
    #[arg(long, default_value = "ferro")]
    sign: String,
    /// First axis parameter for a custom sweep (T, B, b, D or J)
    #[arg(long)]
    axis1: Option<String>,
    /// Second axis parameter for a custom sweep
    #[arg(long)]
    axis2: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    min1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    max1: Option<f64>,
    #[arg(long)]
    count1: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    min2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    max2: Option<f64>,
    #[arg(long)]
    count2: Option<usize>,
    /// Output format: csv or json
    #[arg(long, default_value = "csv")]
    format: String,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for the grid evaluation (default: available parallelism)
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run the reduced subset (finishes in a few seconds)
    #[arg(long)]
    quick: bool,
    /// Test hook: perturb the spectral weights so the suite must fail
    #[arg(long, hide = true)]
    inject_fault: bool,
}

/// Failures carrying their process exit code.
enum Failure {
    /// Bad flags or parameter values.
    Usage(String),
    /// The computation or an I/O step failed after valid input.
    Runtime(String),
}

impl From<spinqfi_core::Error> for Failure {
    fn from(err: spinqfi_core::Error) -> Self {
        Failure::Usage(err.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        Failure::Runtime(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Spectrum(args) => commands::spectrum(&args),
        Command::State(args) => commands::state(&args),
        Command::Qfi(args) => commands::qfi(&args),
        Command::Sweep(args) => commands::sweep(&args),
        Command::Verify(args) => commands::verify(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
