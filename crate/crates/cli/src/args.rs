use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use wiretap_core::ChannelPair;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "wiretap",
    version,
    about = "Secrecy capacity of the amplitude-constrained Gaussian wiretap channel"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve at one amplitude.
    Solve(SolveArgs),
    /// Solve on an increasing grid of amplitudes with warm starts.
    Sweep(SweepArgs),
    /// Check a distribution from an `input_pmf.csv` file against the KKT
    /// conditions.
    KktCheck(KktArgs),
    /// Render SVG figures from the files of a previous solve or sweep.
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ChannelArgs {
    /// Noise standard deviation of the legitimate receiver.
    #[arg(long, allow_negative_numbers = true)]
    pub sigma1: f64,
    /// Noise standard deviation of the eavesdropper.
    #[arg(long, allow_negative_numbers = true)]
    pub sigma2: f64,
}

impl ChannelArgs {
    pub fn channel(&self) -> Result<ChannelPair, CliError> {
        if !self.sigma1.is_finite() || !self.sigma2.is_finite() {
            return Err(CliError::Usage("noise levels must be finite".into()));
        }
        ChannelPair::new(self.sigma1, self.sigma2).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Clone, Args)]
pub struct TuningArgs {
    /// KKT tolerance in nats.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Flat JSON file of solver settings; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Leave inner loops early once the support is stationary.
    #[arg(long)]
    pub early_exit: bool,
}

impl TuningArgs {
    pub fn flags(&self) -> Vec<(&'static str, Option<Value>)> {
        vec![
            ("epsilon", self.epsilon.map(|e| json!(e))),
            ("early_exit", self.early_exit.then_some(json!(true))),
        ]
    }
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    /// Peak amplitude constraint.
    #[arg(short = 'A', long = "amplitude", allow_negative_numbers = true)]
    pub amplitude: f64,
    #[command(flatten)]
    pub tuning: TuningArgs,
    /// Output directory.
    #[arg(short = 'o', long = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub a_from: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub a_to: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub a_step: f64,
    #[command(flatten)]
    pub tuning: TuningArgs,
    #[arg(short = 'o', long = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct KktArgs {
    /// Distribution in `input_pmf.csv` format (columns `x`, `probability`).
    #[arg(long)]
    pub pmf: PathBuf,
    #[command(flatten)]
    pub channel: ChannelArgs,
    /// KKT tolerance in nats.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Profile grid step; defaults to `min(σ₁, A)/50`.
    #[arg(long)]
    pub grid_step: Option<f64>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Directory for `kkt.json`.
    #[arg(short = 'o', long = "out", default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct PlotArgs {
    /// Directory holding the output of `solve` or `sweep`.
    #[arg(short = 'i', long = "input")]
    pub input: PathBuf,
    #[arg(short = 'o', long = "out")]
    pub out: PathBuf,
}
