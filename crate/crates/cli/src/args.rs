use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Wave packets of the hyperbolic (u, v) quantization: grids, figures and checks.
#[derive(Debug, Parser)]
#[command(name = "hyperwave", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Free packet sampled on a grid.
    Free(FreeArgs),
    /// Particle-in-a-box packet sampled on a grid.
    Box(BoxArgs),
    /// Initial data Ψ(u, 0) and Im ∂vΨ(u, 0) along u.
    Slope(SlopeArgs),
    /// Run the validation suite and write the erratum report.
    Validate(ValidateArgs),
    /// Half-line uncertainty moments of the initial data.
    Moments(MomentArgs),
    /// Classical trajectories u(v).
    Classical(ClassicalArgs),
}

/// Real reduction of a complex field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Abs2,
    Re2,
    Im2,
    Re,
    Im,
    Phase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Pgm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closed,
    Spectral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Orbit {
    Free,
    Box,
    Oscillator,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub umin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub umax: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub vmin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub vmax: Option<f64>,
    #[arg(long, default_value_t = 241)]
    pub nu: usize,
    #[arg(long, default_value_t = 241)]
    pub nv: usize,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Quantity::Abs2)]
    pub quantity: Quantity,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FreeArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub d: f64,
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    pub method: Method,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BoxArgs {
    /// Box width; the walls sit at ±L/2.
    #[arg(long = "L", default_value_t = 4.0, allow_negative_numbers = true)]
    pub width: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.5, allow_negative_numbers = true)]
    pub d: f64,
    #[arg(long, default_value_t = 400)]
    pub nmax: usize,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SlopeArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
    pub d: f64,
    #[arg(long, default_value_t = -8.0, allow_negative_numbers = true)]
    pub umin: f64,
    #[arg(long, default_value_t = 8.0, allow_negative_numbers = true)]
    pub umax: f64,
    #[arg(long, default_value_t = 801)]
    pub nu: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct MomentArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
    pub d: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub hbar: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ClassicalArgs {
    #[arg(long, value_enum, default_value_t = Orbit::Free)]
    pub orbit: Orbit,
    /// Starting offset ±d of the free and box paths.
    #[arg(long, default_value_t = 1.5, allow_negative_numbers = true)]
    pub d: f64,
    #[arg(long = "L", default_value_t = 4.0, allow_negative_numbers = true)]
    pub width: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub amplitude: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub delta1: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub delta2: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub omega: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub vmin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub vmax: Option<f64>,
    #[arg(long, default_value_t = 241)]
    pub nv: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
