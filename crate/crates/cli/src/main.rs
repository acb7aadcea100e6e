use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod generate;
mod report;
mod run;

#[derive(Parser)]
#[command(
    name = "mono3d",
    version,
    about = "Monocular 3D localization: synthetic data, pipeline runs and reports"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Render a synthetic vehicle-following dataset.
    Generate(GenerateArgs),
    /// Run depth configurations over a dataset and score them.
    Run(RunConfig),
    /// Merge the traces of one or more runs into a single CSV.
    Report(ReportArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TrackPreset {
    Straight,
    LeftRightStraight,
}

impl TrackPreset {
    fn name(self) -> &'static str {
        match self {
            TrackPreset::Straight => "straight",
            TrackPreset::LeftRightStraight => "left-right-straight",
        }
    }
}

#[derive(Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum, default_value = "straight")]
    pub track: TrackPreset,
    /// Arc-length gap between ego and object vehicle.
    #[arg(long, default_value_t = 20.0)]
    pub gap_m: f64,
    #[arg(long, default_value_t = 355)]
    pub frames: usize,
    /// Seed for the random object yaw offsets.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Draw a per-frame object yaw offset in [-90, 90] degrees.
    #[arg(long)]
    pub random_yaw: bool,
    #[arg(long, default_value_t = 50.0)]
    pub radius_m: f64,
    #[arg(long, default_value_t = 10.0)]
    pub speed_mps: f64,
    #[arg(long, default_value_t = 10.0)]
    pub rate_hz: f64,
    /// Object pitch, positive nose down.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub object_pitch_deg: f64,
    #[arg(long, default_value_t = 1280)]
    pub width_px: u32,
    #[arg(long, default_value_t = 720)]
    pub height_px: u32,
    #[arg(long, default_value_t = 900.0)]
    pub focal_px: f64,
    #[arg(long, default_value_t = 1.0)]
    pub camera_height_m: f64,
    #[arg(long, default_value_t = 4.8)]
    pub object_length_m: f64,
    #[arg(long, default_value_t = 2.0)]
    pub object_width_m: f64,
    #[arg(long, default_value_t = 1.2)]
    pub object_height_m: f64,
    /// Skip depth rendering (boxes and poses only).
    #[arg(long)]
    pub no_depth: bool,
    /// Dataset name stored in the manifest; defaults to the directory name.
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoxSourceArg {
    /// Exact projected boxes.
    Gt,
    /// Projected boxes snapped to integer pixels.
    GtRounded,
    /// Boxes from `--box-file`.
    File,
}

#[derive(Args)]
pub struct RunConfig {
    #[arg(long)]
    pub dataset: PathBuf,
    /// Depth configuration: kh, gt_depth, ext:NAME or ext:NAME=DIR.
    /// Repeat or separate with commas.
    #[arg(long = "config", required = true, value_delimiter = ',')]
    pub configs: Vec<String>,
    #[arg(long, default_value_t = mono3d_core::metrics::DEFAULT_MATCH_THRESHOLD)]
    pub threshold_m: f64,
    #[arg(long, value_enum, default_value = "gt")]
    pub box_source: BoxSourceArg,
    /// CSV with columns frame_id,u_min,v_min,u_max,v_max.
    #[arg(long)]
    pub box_file: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct ReportArgs {
    /// Run output directories or summary.json files.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    /// Merged CSV path; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// An argument problem found after parsing.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<mono3d_core::Error>() {
            if e.is_usage_error() {
                return 2;
            }
            if e.is_data_error() {
                return 3;
            }
            return 4;
        }
        if cause.downcast_ref::<std::io::Error>().is_some()
            || cause.downcast_ref::<serde_json::Error>().is_some()
        {
            return 3;
        }
        if cause.downcast_ref::<csv::Error>().is_some() {
            return 3;
        }
    }
    4
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => generate::cmd_generate(&a),
        Command::Run(a) => run::cmd_run(&a),
        Command::Report(a) => report::cmd_report(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
