//! Command-line surface: `fairqa score | augment | hist-dist | edc`.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fairqa_core::histmetrics::Chi2Variant;

use crate::scores::RegionKind;

#[derive(Debug, Parser)]
#[command(
    name = "fairqa",
    version,
    about = "Region-based face image quality scoring and fairness evaluation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score the manifest's samples per region and write a scores CSV.
    Score(ScoreArgs),
    /// Write augmented image variants plus an extended manifest.
    Augment(AugmentArgs),
    /// Histogram distances between two masked regions.
    HistDist(HistDistArgs),
    /// Error-vs-discard curve and pAUC for a region, component, and group.
    Edc(EdcArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegionChoice {
    Skin,
    Sclera,
    Both,
}

impl RegionChoice {
    pub fn kinds(&self) -> Vec<RegionKind> {
        match self {
            RegionChoice::Skin => vec![RegionKind::Skin],
            RegionChoice::Sclera => vec![RegionKind::Sclera],
            RegionChoice::Both => vec![RegionKind::Skin, RegionKind::Sclera],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComponentChoice {
    DynamicRange,
    UnderExposure,
    OverExposure,
}

impl ComponentChoice {
    pub fn name(&self) -> &'static str {
        match self {
            ComponentChoice::DynamicRange => "dynamic_range",
            ComponentChoice::UnderExposure => "under_exposure",
            ComponentChoice::OverExposure => "over_exposure",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Chi2Choice {
    Symmetric,
    Pearson,
}

impl From<Chi2Choice> for Chi2Variant {
    fn from(c: Chi2Choice) -> Self {
        match c {
            Chi2Choice::Symmetric => Chi2Variant::Symmetric,
            Chi2Choice::Pearson => Chi2Variant::Pearson,
        }
    }
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    /// Dataset manifest JSON.
    #[arg(long)]
    pub manifest: PathBuf,
    /// Which region source(s) to score per sample.
    #[arg(long, value_enum, default_value_t = RegionChoice::Both)]
    pub region: RegionChoice,
    /// Minimum selected pixels for any region; overrides the per-region
    /// defaults (256 for skin, 32 for sclera).
    #[arg(long)]
    pub min_region_pixels: Option<usize>,
    /// Output scores CSV.
    #[arg(long)]
    pub out: PathBuf,
    /// Rejected-sample CSV; defaults to `<out>.rejects.csv`.
    #[arg(long)]
    pub rejects: Option<PathBuf>,
    /// Fail (exit 1) when more than this fraction of rows is rejected.
    #[arg(long, default_value_t = 0.5)]
    pub max_reject_rate: f64,
}

#[derive(Debug, Args)]
pub struct AugmentArgs {
    /// Dataset manifest JSON.
    #[arg(long)]
    pub manifest: PathBuf,
    /// Augmentation config: a JSON list of {kind, parameter, tag}.
    /// Without it the stock degradation ladder is applied.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Directory for variant images and the extended manifest.
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct HistDistArgs {
    #[arg(long)]
    pub image_a: PathBuf,
    #[arg(long)]
    pub mask_a: PathBuf,
    #[arg(long)]
    pub image_b: PathBuf,
    #[arg(long)]
    pub mask_b: PathBuf,
    /// Which chi-squared form to report.
    #[arg(long, value_enum, default_value_t = Chi2Choice::Symmetric)]
    pub chi2_variant: Chi2Choice,
    /// Minimum selected pixels per region.
    #[arg(long, default_value_t = 1)]
    pub min_region_pixels: usize,
}

#[derive(Debug, Args)]
pub struct EdcArgs {
    /// Dataset manifest JSON.
    #[arg(long)]
    pub manifest: PathBuf,
    /// Scores CSV produced by `fairqa score`.
    #[arg(long)]
    pub scores: PathBuf,
    /// Embeddings CSV (`embedding_id,v0,v1,...`).
    #[arg(long)]
    pub embeddings: PathBuf,
    /// Region source(s) whose quality drives discarding.
    #[arg(long, value_enum, default_value_t = RegionChoice::Both)]
    pub region: RegionChoice,
    /// Quality component that orders the discard sweep.
    #[arg(long, value_enum)]
    pub component: ComponentChoice,
    /// Group label to evaluate; "all" selects every sample.
    #[arg(long, default_value = "all")]
    pub group: String,
    /// Target false non-match rate at zero discard.
    #[arg(long, default_value_t = 0.05)]
    pub starting_error: f64,
    /// pAUC upper integration bound.
    #[arg(long, default_value_t = 0.20)]
    pub pauc_limit: f64,
    /// Spacing of the discard grid over [0, 1).
    #[arg(long, default_value_t = 0.05)]
    pub grid_step: f64,
    /// Stop the curve before any point retaining fewer pairs than this.
    #[arg(long, default_value_t = 10)]
    pub min_retained: usize,
    /// Output prefix; writes `<prefix>.<region>.csv` and `.json`.
    #[arg(long)]
    pub out_prefix: PathBuf,
}
