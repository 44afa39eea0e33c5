//! Distance-based fold energies over hydrophobic residues, the HP contact
//! energy, folding free-energy differences, and per-family energy reports.

mod compat;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fold::{
    detect_self_intersections, embed, straight_steps, FoldError, FoldFamily, GenerationMode,
    LatticeEmbedding, OriginPolicy, Point, StepVector,
};
use crate::seq::{encode_binary, BinaryProfile, HydropathyScale, SeqError, Sequence};

pub use compat::{
    compat_search, targets_for, CompatCandidate, CompatResult, CompatTargets, Residuals,
    PAPER_TARGETS,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnergyError {
    #[error("{bits} profile bits do not line up with {points} points under {alignment:?}")]
    LengthMismatch {
        bits: usize,
        points: usize,
        alignment: MaskAlignment,
    },
    #[error("contact energy is undefined for a self-intersecting embedding")]
    SelfIntersecting,
    #[error("sequence of {0} residues is too short for this operation")]
    TooShort(usize),
    #[error(transparent)]
    Fold(#[from] FoldError),
    #[error(transparent)]
    Seq(#[from] SeqError),
}

/// Which reading of "free energy" to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergyVariant {
    /// Sum of distances between successive hydrophobic residues.
    ConsecutiveH,
    /// Sum of distances over all hydrophobic pairs.
    AllPairsH,
    /// Hydrophilic points zeroed, then adjacent differences summed.
    MaskedAdjacent,
    /// Negative count of non-bonded hydrophobic lattice contacts.
    HpContact,
}

impl EnergyVariant {
    pub const ALL: [EnergyVariant; 4] = [
        EnergyVariant::ConsecutiveH,
        EnergyVariant::AllPairsH,
        EnergyVariant::MaskedAdjacent,
        EnergyVariant::HpContact,
    ];

    pub const DISTANCE: [EnergyVariant; 3] = [
        EnergyVariant::ConsecutiveH,
        EnergyVariant::AllPairsH,
        EnergyVariant::MaskedAdjacent,
    ];
}

/// How a profile is lined up against embedded points when their counts differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaskAlignment {
    AlignDropFirstBit,
    AlignDropLastBit,
    AlignEqual,
}

impl MaskAlignment {
    pub const ALL: [MaskAlignment; 3] = [
        MaskAlignment::AlignDropFirstBit,
        MaskAlignment::AlignDropLastBit,
        MaskAlignment::AlignEqual,
    ];

    /// Number of bits left after alignment, or `None` for an empty profile.
    pub fn aligned_len(self, bits: usize) -> Option<usize> {
        match self {
            MaskAlignment::AlignEqual => Some(bits),
            _ => bits.checked_sub(1),
        }
    }

    fn apply(self, bits: &[bool]) -> &[bool] {
        match self {
            MaskAlignment::AlignEqual => bits,
            MaskAlignment::AlignDropFirstBit => bits.get(1..).unwrap_or(&[]),
            MaskAlignment::AlignDropLastBit => &bits[..bits.len().saturating_sub(1)],
        }
    }
}

/// Candidate hydrophobic residue sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HydrophobicSet {
    /// Kyte-Doolittle value above zero: A C F I L M V.
    KdPositive,
    /// The positive set plus glycine.
    #[serde(rename = "kd_including_G")]
    KdIncludingG,
    /// A C F G I L M P V W Y.
    NonpolarEleven,
}

impl HydrophobicSet {
    pub const ALL: [HydrophobicSet; 3] = [
        HydrophobicSet::KdPositive,
        HydrophobicSet::KdIncludingG,
        HydrophobicSet::NonpolarEleven,
    ];

    pub fn members(self) -> &'static str {
        match self {
            HydrophobicSet::KdPositive => "ACFILMV",
            HydrophobicSet::KdIncludingG => "ACFGILMV",
            HydrophobicSet::NonpolarEleven => "ACFGILMPVWY",
        }
    }

    pub fn scale(self) -> HydropathyScale {
        match self {
            HydrophobicSet::KdPositive => HydropathyScale::kyte_doolittle(),
            other => {
                let members = other.members();
                let values: BTreeMap<char, f64> = crate::seq::STANDARD_RESIDUES
                    .iter()
                    .map(|&c| (c, if members.contains(c) { 1.0 } else { -1.0 }))
                    .collect();
                let name = match other {
                    HydrophobicSet::KdIncludingG => "kd_including_G",
                    _ => "nonpolar_eleven",
                };
                HydropathyScale {
                    name: name.to_string(),
                    values,
                    threshold: 0.0,
                    unknown_policy: Default::default(),
                }
            }
        }
    }

    pub fn encode(self, seq: &Sequence) -> Result<BinaryProfile, SeqError> {
        encode_binary(seq, &self.scale())
    }
}

/// Which straight configuration the unfolded energy is computed from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnfoldedInput {
    /// The straight step values themselves, read as lattice points.
    RawSteps,
    /// The cumulative-sum embedding of the straight fold.
    EmbeddedPositions,
}

impl UnfoldedInput {
    pub const ALL: [UnfoldedInput; 2] = [UnfoldedInput::RawSteps, UnfoldedInput::EmbeddedPositions];
}

/// Every free choice needed to turn a profile and a fold family into energies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConventionSet {
    pub variant: EnergyVariant,
    pub origin_policy: OriginPolicy,
    pub mask_alignment: MaskAlignment,
    pub hydrophobic_set: HydrophobicSet,
    pub unfolded_input: UnfoldedInput,
    pub generation_mode: GenerationMode,
}

impl Default for ConventionSet {
    fn default() -> Self {
        Self {
            variant: EnergyVariant::ConsecutiveH,
            origin_policy: OriginPolicy::PrependOrigin,
            mask_alignment: MaskAlignment::AlignEqual,
            hydrophobic_set: HydrophobicSet::KdPositive,
            unfolded_input: UnfoldedInput::EmbeddedPositions,
            generation_mode: GenerationMode::FromK1,
        }
    }
}

impl ConventionSet {
    /// The full 3 x 2 x 3 x 3 x 2 x 2 grid over the distance variants, in a
    /// fixed nesting order.
    pub fn grid() -> Vec<ConventionSet> {
        let mut out = Vec::with_capacity(216);
        for variant in EnergyVariant::DISTANCE {
            for origin_policy in OriginPolicy::ALL {
                for mask_alignment in MaskAlignment::ALL {
                    for hydrophobic_set in HydrophobicSet::ALL {
                        for unfolded_input in UnfoldedInput::ALL {
                            for generation_mode in GenerationMode::ALL {
                                out.push(ConventionSet {
                                    variant,
                                    origin_policy,
                                    mask_alignment,
                                    hydrophobic_set,
                                    unfolded_input,
                                    generation_mode,
                                });
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Whether a profile of `n_bits` lines up with folds of `n_steps` steps.
    pub fn is_feasible(&self, n_bits: usize, n_steps: usize) -> bool {
        self.mask_alignment.aligned_len(n_bits) == Some(self.origin_policy.point_count(n_steps))
    }

    /// One-line `key=value` rendering.
    pub fn label(&self) -> String {
        let v = serde_json::to_value(self).expect("plain enum fields");
        let mut out = String::new();
        for key in [
            "variant",
            "origin_policy",
            "mask_alignment",
            "hydrophobic_set",
            "unfolded_input",
            "generation_mode",
        ] {
            if !out.is_empty() {
                out.push(' ');
            }
            let _ = write!(out, "{key}={}", v[key].as_str().unwrap_or("?"));
        }
        out
    }
}

/// Folding free-energy change; negative means the folded state is more stable.
pub fn delta_g(folded: f64, unfolded: f64) -> f64 {
    folded - unfolded
}

/// Scores one embedding. Terms are summed in index order, so results are
/// reproducible bit for bit.
pub fn free_energy(
    emb: &LatticeEmbedding,
    profile: &BinaryProfile,
    variant: EnergyVariant,
    alignment: MaskAlignment,
) -> Result<f64, EnergyError> {
    score_points(&emb.points, profile.bits(), variant, alignment)
}

pub(crate) fn score_points(
    points: &[Point],
    bits: &[bool],
    variant: EnergyVariant,
    alignment: MaskAlignment,
) -> Result<f64, EnergyError> {
    if alignment.aligned_len(bits.len()) != Some(points.len()) {
        return Err(EnergyError::LengthMismatch {
            bits: bits.len(),
            points: points.len(),
            alignment,
        });
    }
    let bits = alignment.apply(bits);
    if variant == EnergyVariant::HpContact {
        let emb = LatticeEmbedding {
            points: points.to_vec(),
            origin_policy: OriginPolicy::PrependOrigin,
        };
        if !detect_self_intersections(&emb).is_self_avoiding {
            return Err(EnergyError::SelfIntersecting);
        }
    }
    Ok(score_aligned(points, bits, variant))
}

/// Scores points against bits of equal length. The caller guarantees the
/// points are self-avoiding when `variant` is `HpContact`.
pub(crate) fn score_aligned(points: &[Point], bits: &[bool], variant: EnergyVariant) -> f64 {
    debug_assert_eq!(points.len(), bits.len());
    let n = points.len();
    match variant {
        EnergyVariant::ConsecutiveH => {
            let mut sum = 0.0;
            let mut prev: Option<Point> = None;
            for (&p, _) in points.iter().zip(bits).filter(|(_, &b)| b) {
                if let Some(q) = prev {
                    sum += q.distance(p);
                }
                prev = Some(p);
            }
            sum
        }
        EnergyVariant::AllPairsH => {
            let mut sum = 0.0;
            for i in (0..n).filter(|&i| bits[i]) {
                for j in (i + 1..n).filter(|&j| bits[j]) {
                    sum += points[i].distance(points[j]);
                }
            }
            sum
        }
        EnergyVariant::MaskedAdjacent => {
            let masked = |x: usize| if bits[x] { points[x] } else { Point::ORIGIN };
            let mut sum = 0.0;
            for x in 1..n {
                sum += masked(x - 1).distance(masked(x));
            }
            sum
        }
        EnergyVariant::HpContact => {
            let mut contacts = 0usize;
            for i in (0..n).filter(|&i| bits[i]) {
                for j in (i + 2..n).filter(|&j| bits[j]) {
                    if points[i].is_lattice_neighbor(points[j]) {
                        contacts += 1;
                    }
                }
            }
            0.0 - contacts as f64
        }
    }
}

/// Energy of one family member.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FoldEnergy {
    /// 1-based position in the family.
    pub fold_index: usize,
    pub energy: f64,
    pub self_avoiding: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub conventions: ConventionSet,
    pub unfolded_energy: f64,
    #[serde(rename = "folds")]
    pub per_fold: Vec<FoldEnergy>,
}

impl EnergyReport {
    pub fn len(&self) -> usize {
        self.per_fold.len()
    }

    pub fn is_empty(&self) -> bool {
        self.per_fold.is_empty()
    }

    pub fn energies(&self) -> Vec<f64> {
        self.per_fold.iter().map(|f| f.energy).collect()
    }

    /// CSV with a leading `# unfolded_energy=` comment line. Floats carry 10
    /// decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# unfolded_energy={:.10}", self.unfolded_energy);
        out.push_str("fold_index,energy,self_avoiding\n");
        for f in &self.per_fold {
            let _ = writeln!(out, "{},{:.10},{}", f.fold_index, f.energy, f.self_avoiding);
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is always serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// The straight configuration as scored for the unfolded baseline.
pub(crate) fn unfolded_points(
    n_steps: usize,
    conventions: &ConventionSet,
) -> Result<Vec<Point>, FoldError> {
    let straight = straight_steps(n_steps)?;
    Ok(match conventions.unfolded_input {
        UnfoldedInput::EmbeddedPositions => embed(&straight, conventions.origin_policy).points,
        UnfoldedInput::RawSteps => {
            let mut points = Vec::with_capacity(n_steps + 1);
            if conventions.origin_policy == OriginPolicy::PrependOrigin {
                points.push(Point::ORIGIN);
            }
            points.extend(straight.steps().iter().map(|s| s.delta()));
            points
        }
    })
}

fn score_member(
    index: usize,
    steps: &StepVector,
    profile: &BinaryProfile,
    conventions: &ConventionSet,
) -> Result<FoldEnergy, EnergyError> {
    let emb = embed(steps, conventions.origin_policy);
    let self_avoiding = detect_self_intersections(&emb).is_self_avoiding;
    let energy = free_energy(
        &emb,
        profile,
        conventions.variant,
        conventions.mask_alignment,
    )?;
    Ok(FoldEnergy {
        fold_index: index + 1,
        energy,
        self_avoiding,
    })
}

/// Scores every member of `family` plus the straight unfolded baseline.
/// Members are scored in parallel; output order follows the family.
pub fn family_energies(
    family: &FoldFamily,
    profile: &BinaryProfile,
    conventions: &ConventionSet,
) -> Result<EnergyReport, EnergyError> {
    let n_steps = family.n_steps();
    let unfolded = unfolded_points(n_steps, conventions)?;
    let unfolded_energy = score_points(
        &unfolded,
        profile.bits(),
        conventions.variant,
        conventions.mask_alignment,
    )?;
    let per_fold = family
        .members
        .par_iter()
        .enumerate()
        .map(|(i, steps)| score_member(i, steps, profile, conventions))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(EnergyReport {
        conventions: *conventions,
        unfolded_energy,
        per_fold,
    })
}
