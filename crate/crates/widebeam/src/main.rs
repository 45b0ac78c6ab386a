//! Command-line front end for the widebeam toolkit.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use widebeam::cli::{
    run_array_factor, run_compare, run_metrics, run_patch, run_resonance, run_synthesize,
    ArrayFactorArgs, CompareArgs, DataFormat, MetricsArgs, OutputOpts, PatchArgs, ResonanceArgs,
    SynthesizeArgs,
};

#[derive(Parser, Debug)]
#[command(
    name = "widebeam",
    version,
    about = "Array-factor synthesis, patch radiation models, and pattern metrics"
)]
struct Cli {
    /// Directory for all output files.
    #[arg(long, global = true, default_value = ".")]
    output_dir: PathBuf,

    /// Data table format; reports are always JSON.
    #[arg(long, global = true, value_enum, default_value_t = DataFormat::Csv)]
    format: DataFormat,

    /// Polar angle step for generated grids, degrees.
    #[arg(long, global = true, default_value_t = 0.25)]
    theta_step_deg: f64,

    /// Azimuth step for generated grids, degrees.
    #[arg(long, global = true, default_value_t = 1.0)]
    phi_step_deg: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Synthesize array coefficients that widen an element pattern.
    Synthesize(SynthesizeArgs),
    /// Evaluate the array factor of an excitation file.
    ArrayFactor(ArrayFactorArgs),
    /// Radiate a patch mode from its equivalent currents.
    Patch(PatchArgs),
    /// Compare two pattern cuts.
    Compare(CompareArgs),
    /// Estimate patch resonance and relative bandwidth.
    Resonance(ResonanceArgs),
    /// Metrics of a stored pattern file.
    Metrics(MetricsArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    let out = OutputOpts {
        output_dir: cli.output_dir,
        format: cli.format,
        theta_step_deg: cli.theta_step_deg,
        phi_step_deg: cli.phi_step_deg,
    };
    let result = match &cli.command {
        Command::Synthesize(args) => run_synthesize(args, &out),
        Command::ArrayFactor(args) => run_array_factor(args, &out),
        Command::Patch(args) => run_patch(args, &out),
        Command::Compare(args) => run_compare(args, &out),
        Command::Resonance(args) => run_resonance(args, &out),
        Command::Metrics(args) => run_metrics(args, &out),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
