//! Hydrophobicity-driven protein fold scoring on the square lattice.
//!
//! The pipeline turns an amino-acid sequence into a binary hydrophobic
//! profile ([`seq`]), generates a deterministic family of lattice folds by
//! fourth-root-of-unity step algebra ([`fold`]), scores each fold with a
//! distance-based free energy ([`energy`]), and ranks or searches
//! conformations by that energy ([`search`]).

pub mod energy;
pub mod fold;
pub mod render;
pub mod search;
pub mod seq;

use thiserror::Error;

pub use energy::{
    compat_search, delta_g, family_energies, free_energy, CompatResult, CompatTargets,
    ConventionSet, EnergyError, EnergyReport, EnergyVariant, HydrophobicSet, MaskAlignment,
    UnfoldedInput, PAPER_TARGETS,
};
pub use fold::{
    detect_self_intersections, embed, family_generate, parse_direction_string, straight_steps,
    FoldError, FoldFamily, GenerationMode, LatticeEmbedding, OriginPolicy, Point, StepVector,
    UnitStep,
};
pub use search::{
    anneal, enumerate_saw, rank_folds, AnnealSchedule, Ranking, SearchError, SearchMethod,
    SearchResult,
};
pub use seq::{
    encode_binary, load_scale, parse_sequence, BinaryProfile, HydropathyScale, ScaleSource,
    SeqError, Sequence, SequenceFormat, UnknownPolicy,
};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error(transparent)]
    Fold(#[from] FoldError),
    #[error(transparent)]
    Energy(#[from] EnergyError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Runs `op` inside a dedicated rayon pool of `workers` threads.
pub fn with_workers<R, F>(workers: usize, op: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool")
        .install(op)
}
