use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hydrofold::{
    ConventionSet, EnergyVariant, GenerationMode, HydrophobicSet, MaskAlignment, OriginPolicy,
    UnfoldedInput,
};

#[derive(Debug, Parser)]
#[command(
    name = "hydrofold",
    version,
    about = "Hydrophobicity-driven lattice fold scoring"
)]
pub struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the binary hydrophobicity profile of a sequence.
    Encode(EncodeArgs),
    /// Score the deterministic fold family of a sequence.
    FamilyEnergy(FamilyArgs),
    /// Find the convention set that best reproduces reference energies.
    Compat(CompatArgs),
    /// Search for a minimum-energy self-avoiding fold.
    Search(SearchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Raw,
    Fasta,
    /// H (hydrophobic) / P (polar) profile string.
    Hp,
}

#[derive(Debug, Args)]
#[group(id = "source", required = true, multiple = false)]
pub struct SourceArgs {
    /// Read the sequence from a file.
    #[arg(long, short = 'i', group = "source")]
    pub input: Option<PathBuf>,
    /// Inline sequence text.
    #[arg(long, short = 's', group = "source")]
    pub sequence: Option<String>,
    /// Use the bundled 104-residue 5CYT sequence.
    #[arg(long, group = "source")]
    pub fixture: bool,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_enum, default_value = "raw")]
    pub format: InputFormat,
    /// Hydropathy scale TSV (CODE<TAB>value rows).
    #[arg(long, env = "HYDROFOLD_SCALE_PATH")]
    pub scale: Option<PathBuf>,
    /// Hydrophobic when the scale value exceeds this.
    #[arg(long, allow_negative_numbers = true)]
    pub threshold: Option<f64>,
    /// Reject residues the scale does not cover instead of treating them as hydrophilic.
    #[arg(long)]
    pub reject_unknown: bool,
}

impl InputArgs {
    pub fn custom_scale(&self) -> bool {
        self.scale.is_some() || self.threshold.is_some() || self.reject_unknown
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum VariantArg {
    ConsecutiveH,
    AllPairsH,
    MaskedAdjacent,
    HpContact,
}

impl From<VariantArg> for EnergyVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::ConsecutiveH => EnergyVariant::ConsecutiveH,
            VariantArg::AllPairsH => EnergyVariant::AllPairsH,
            VariantArg::MaskedAdjacent => EnergyVariant::MaskedAdjacent,
            VariantArg::HpContact => EnergyVariant::HpContact,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum OriginArg {
    PrependOrigin,
    NoPrepend,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
#[allow(clippy::enum_variant_names)]
pub enum AlignmentArg {
    AlignDropFirstBit,
    AlignDropLastBit,
    AlignEqual,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum SetArg {
    KdPositive,
    #[value(name = "kd_including_G")]
    KdIncludingG,
    NonpolarEleven,
}

impl From<SetArg> for HydrophobicSet {
    fn from(s: SetArg) -> Self {
        match s {
            SetArg::KdPositive => HydrophobicSet::KdPositive,
            SetArg::KdIncludingG => HydrophobicSet::KdIncludingG,
            SetArg::NonpolarEleven => HydrophobicSet::NonpolarEleven,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum UnfoldedArg {
    RawSteps,
    EmbeddedPositions,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum ModeArg {
    FromK1,
    StraightPlusFromK2,
}

#[derive(Debug, Args)]
pub struct ConventionArgs {
    #[arg(long, value_enum, default_value = "consecutive_h")]
    pub variant: VariantArg,
    #[arg(long, value_enum, default_value = "prepend_origin")]
    pub origin_policy: OriginArg,
    #[arg(long, value_enum, default_value = "align_equal")]
    pub mask_alignment: AlignmentArg,
    #[arg(long, value_enum, default_value = "kd_positive")]
    pub hydrophobic_set: SetArg,
    #[arg(long, value_enum, default_value = "embedded_positions")]
    pub unfolded_input: UnfoldedArg,
    #[arg(long, value_enum, default_value = "from_k1")]
    pub generation_mode: ModeArg,
}

impl ConventionArgs {
    pub fn to_conventions(&self) -> ConventionSet {
        ConventionSet {
            variant: self.variant.into(),
            origin_policy: match self.origin_policy {
                OriginArg::PrependOrigin => OriginPolicy::PrependOrigin,
                OriginArg::NoPrepend => OriginPolicy::NoPrepend,
            },
            mask_alignment: match self.mask_alignment {
                AlignmentArg::AlignDropFirstBit => MaskAlignment::AlignDropFirstBit,
                AlignmentArg::AlignDropLastBit => MaskAlignment::AlignDropLastBit,
                AlignmentArg::AlignEqual => MaskAlignment::AlignEqual,
            },
            hydrophobic_set: self.hydrophobic_set.into(),
            unfolded_input: match self.unfolded_input {
                UnfoldedArg::RawSteps => UnfoldedInput::RawSteps,
                UnfoldedArg::EmbeddedPositions => UnfoldedInput::EmbeddedPositions,
            },
            generation_mode: match self.generation_mode {
                ModeArg::FromK1 => GenerationMode::FromK1,
                ModeArg::StraightPlusFromK2 => GenerationMode::StraightPlusFromK2,
            },
        }
    }
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SvgKind {
    /// Lattice drawings of the selected folds.
    Folds,
    /// Energy against fold index.
    Energy,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub conventions: ConventionArgs,
    /// Use the convention set that best reproduces the published 5CYT energies.
    #[arg(long)]
    pub paper_compat: bool,
    #[arg(long, value_enum, default_value = "csv")]
    pub output_format: OutputFormat,
    #[arg(long, value_enum, default_value = "folds")]
    pub svg_kind: SvgKind,
    /// 1-based fold indices to draw (default: all).
    #[arg(long, value_delimiter = ',')]
    pub folds: Vec<usize>,
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompatArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Target unfolded energy (required, with --target-e1/--target-e2, for non-fixture input).
    #[arg(long, requires_all = ["target_e1", "target_e2"])]
    pub target_e: Option<f64>,
    #[arg(long, requires_all = ["target_e", "target_e2"])]
    pub target_e1: Option<f64>,
    #[arg(long, requires_all = ["target_e", "target_e1"])]
    pub target_e2: Option<f64>,
    /// Use targets computed by this tool under the convention flags.
    #[arg(long, conflicts_with = "target_e")]
    pub self_consistency: bool,
    #[command(flatten)]
    pub conventions: ConventionArgs,
    /// Rows of the ranked table to print (default: all).
    #[arg(long)]
    pub rows: Option<usize>,
    /// Write the full result as JSON.
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Exhaustive,
    Anneal,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "hp_contact")]
    pub variant: VariantArg,
    /// Hydrophobic set used for amino-acid input without a custom scale.
    #[arg(long, value_enum, default_value = "kd_positive")]
    pub hydrophobic_set: SetArg,
    #[arg(long, value_enum, default_value = "exhaustive")]
    pub method: MethodArg,
    /// Longest walk enumerated exhaustively.
    #[arg(long, default_value_t = hydrofold::search::DEFAULT_STEPS_GUARD)]
    pub guard: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 2.0)]
    pub initial_temp: f64,
    #[arg(long, default_value_t = 0.999)]
    pub cooling_factor: f64,
    #[arg(long, default_value_t = 20_000)]
    pub steps: u64,
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}
