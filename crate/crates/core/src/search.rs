//! Ranking of scored folds, exhaustive self-avoiding-walk enumeration and
//! simulated annealing over self-avoiding walks.

use std::cmp::Ordering;
use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::energy::{score_aligned, EnergyReport, EnergyVariant};
use crate::fold::{embed, straight_steps, OriginPolicy, Point, StepVector, UnitStep};
use crate::seq::BinaryProfile;

/// Largest walk length enumerated unless the caller raises it.
pub const DEFAULT_STEPS_GUARD: usize = 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SearchError {
    #[error("k must be positive")]
    ZeroK,
    #[error("k = {k} exceeds the {available} scored folds")]
    KTooLarge { k: usize, available: usize },
    #[error("walk of {n_steps} steps exceeds the enumeration guard of {guard}")]
    GuardExceeded { n_steps: usize, guard: usize },
    #[error("profile needs at least two residues, got {0}")]
    TooShort(usize),
    #[error("invalid annealing schedule: {0}")]
    InvalidSchedule(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankedFold {
    pub fold_index: usize,
    pub energy: f64,
}

/// Lowest energies first; equal energies keep ascending fold index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ranking {
    pub entries: Vec<RankedFold>,
}

pub fn rank_folds(report: &EnergyReport, k: usize) -> Result<Ranking, SearchError> {
    if k == 0 {
        return Err(SearchError::ZeroK);
    }
    if k > report.per_fold.len() {
        return Err(SearchError::KTooLarge {
            k,
            available: report.per_fold.len(),
        });
    }
    let mut entries: Vec<RankedFold> = report
        .per_fold
        .iter()
        .map(|f| RankedFold {
            fold_index: f.fold_index,
            energy: f.energy,
        })
        .collect();
    entries.sort_by(|a, b| {
        a.energy
            .total_cmp(&b.energy)
            .then(a.fold_index.cmp(&b.fold_index))
    });
    entries.truncate(k);
    Ok(Ranking { entries })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMethod {
    Exhaustive,
    Anneal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub best_steps: StepVector,
    pub best_energy: f64,
    pub visited: u64,
    pub method: SearchMethod,
    pub seed: Option<u64>,
}

impl SearchResult {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("result is always serializable");
        s.push('\n');
        s
    }
}

/// Steps in lexicographic order of their direction characters.
const LEX_STEPS: [UnitStep; 4] = [
    UnitStep::NegY,
    UnitStep::NegX,
    UnitStep::PosX,
    UnitStep::PosY,
];

/// Prefix length at which the enumeration tree is split across workers.
const SPLIT_DEPTH: usize = 6;

#[derive(Debug, Clone)]
struct Best {
    energy: f64,
    walk: Vec<UnitStep>,
    visited: u64,
}

impl Best {
    fn better_than(&self, other: &Best) -> bool {
        match self.energy.total_cmp(&other.energy) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => lex_key(&self.walk) < lex_key(&other.walk),
        }
    }
}

fn lex_key(walk: &[UnitStep]) -> Vec<char> {
    walk.iter().map(|s| s.to_char()).collect()
}

/// Depth-first walker over symmetry-reduced self-avoiding walks: the first
/// step is `R` and the first step that is not `R` is `U`.
struct Walker<'a> {
    bits: &'a [bool],
    variant: EnergyVariant,
    n_steps: usize,
    points: Vec<Point>,
    steps: Vec<UnitStep>,
    occupied: HashSet<Point>,
    best: Option<Best>,
    visited: u64,
}

impl<'a> Walker<'a> {
    fn new(bits: &'a [bool], variant: EnergyVariant) -> Self {
        let n_steps = bits.len() - 1;
        let mut occupied = HashSet::with_capacity(bits.len());
        occupied.insert(Point::ORIGIN);
        Self {
            bits,
            variant,
            n_steps,
            points: vec![Point::ORIGIN],
            steps: Vec::with_capacity(n_steps),
            occupied,
            best: None,
            visited: 0,
        }
    }

    fn allowed(&self, step: UnitStep) -> bool {
        if self.steps.is_empty() {
            return step == UnitStep::PosX;
        }
        let turned = self.steps.iter().any(|&s| s != UnitStep::PosX);
        turned || step == UnitStep::PosX || step == UnitStep::PosY
    }

    fn push(&mut self, step: UnitStep) -> bool {
        let next = *self.points.last().expect("origin is always present") + step.delta();
        if !self.occupied.insert(next) {
            return false;
        }
        self.points.push(next);
        self.steps.push(step);
        true
    }

    fn pop(&mut self) {
        if let Some(p) = self.points.pop() {
            self.occupied.remove(&p);
        }
        self.steps.pop();
    }

    /// Pushes `prefix` if it is a valid reduced prefix.
    fn seed(&mut self, prefix: &[UnitStep]) -> bool {
        for &s in prefix {
            if !self.allowed(s) || !self.push(s) {
                return false;
            }
        }
        true
    }

    fn descend(&mut self) {
        if self.steps.len() == self.n_steps {
            self.visited += 1;
            let energy = score_aligned(&self.points, self.bits, self.variant);
            let improves = match &self.best {
                None => true,
                // Leaves arrive in lexicographic order, so ties keep the incumbent.
                Some(b) => energy < b.energy,
            };
            if improves {
                self.best = Some(Best {
                    energy,
                    walk: self.steps.clone(),
                    visited: 0,
                });
            }
            return;
        }
        for step in LEX_STEPS {
            if self.allowed(step) && self.push(step) {
                self.descend();
                self.pop();
            }
        }
    }

    fn finish(self) -> Option<Best> {
        let visited = self.visited;
        self.best.map(|b| Best { visited, ..b })
    }
}

/// Every reduced walk prefix of exactly `depth` steps, lexicographic order.
fn reduced_prefixes(bits: &[bool], variant: EnergyVariant, depth: usize) -> Vec<Vec<UnitStep>> {
    let mut out = Vec::new();
    let mut w = Walker::new(bits, variant);
    fn rec(w: &mut Walker<'_>, depth: usize, out: &mut Vec<Vec<UnitStep>>) {
        if w.steps.len() == depth {
            out.push(w.steps.clone());
            return;
        }
        for step in LEX_STEPS {
            if w.allowed(step) && w.push(step) {
                rec(w, depth, out);
                w.pop();
            }
        }
    }
    rec(&mut w, depth, &mut out);
    out
}

/// Finds a minimum-energy self-avoiding walk by exhaustive enumeration.
/// Ties go to the lexicographically smallest direction string. The tree is
/// split across the current rayon pool; the result does not depend on the
/// number of workers.
pub fn enumerate_saw(
    profile: &BinaryProfile,
    variant: EnergyVariant,
    max_steps_guard: usize,
) -> Result<SearchResult, SearchError> {
    if profile.len() < 2 {
        return Err(SearchError::TooShort(profile.len()));
    }
    let n_steps = profile.len() - 1;
    if n_steps > max_steps_guard {
        return Err(SearchError::GuardExceeded {
            n_steps,
            guard: max_steps_guard,
        });
    }
    let bits = profile.bits();
    let depth = n_steps.min(SPLIT_DEPTH);
    let prefixes = reduced_prefixes(bits, variant, depth);

    let partials: Vec<Option<Best>> = prefixes
        .par_iter()
        .map(|prefix| {
            let mut w = Walker::new(bits, variant);
            if !w.seed(prefix) {
                return None;
            }
            w.descend();
            w.finish()
        })
        .collect();

    let mut visited = 0;
    let mut best: Option<Best> = None;
    for b in partials.into_iter().flatten() {
        visited += b.visited;
        if best.as_ref().is_none_or(|cur| b.better_than(cur)) {
            best = Some(b);
        }
    }
    let best = best.expect("the straight walk is always self-avoiding");
    Ok(SearchResult {
        best_steps: StepVector::new(best.walk).expect("walk has n_steps >= 1 entries"),
        best_energy: best.energy,
        visited,
        method: SearchMethod::Exhaustive,
        seed: None,
    })
}

/// Geometric cooling schedule: the temperature at move `t` is
/// `initial_temp * cooling_factor^t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnealSchedule {
    pub initial_temp: f64,
    pub cooling_factor: f64,
    pub steps: u64,
}

impl Default for AnnealSchedule {
    fn default() -> Self {
        Self {
            initial_temp: 2.0,
            cooling_factor: 0.999,
            steps: 20_000,
        }
    }
}

impl AnnealSchedule {
    fn validate(&self) -> Result<(), SearchError> {
        if !(self.initial_temp.is_finite() && self.initial_temp > 0.0) {
            return Err(SearchError::InvalidSchedule(
                "initial_temp must be positive",
            ));
        }
        if !(self.cooling_factor > 0.0 && self.cooling_factor < 1.0) {
            return Err(SearchError::InvalidSchedule(
                "cooling_factor must lie in (0, 1)",
            ));
        }
        if self.steps == 0 {
            return Err(SearchError::InvalidSchedule("steps must be positive"));
        }
        Ok(())
    }
}

const ROTATIONS: [UnitStep; 3] = [UnitStep::PosY, UnitStep::NegX, UnitStep::NegY];

fn walk_points(steps: &StepVector) -> Option<Vec<Point>> {
    let points = embed(steps, OriginPolicy::PrependOrigin).points;
    let mut seen = HashSet::with_capacity(points.len());
    points.iter().all(|p| seen.insert(*p)).then_some(points)
}

/// Simulated annealing with suffix-rotation moves, starting from the
/// straight walk. Self-intersecting proposals are discarded unscored.
pub fn anneal(
    profile: &BinaryProfile,
    variant: EnergyVariant,
    schedule: &AnnealSchedule,
    seed: u64,
) -> Result<SearchResult, SearchError> {
    anneal_observed(profile, variant, schedule, seed, |_, _| {})
}

/// [`anneal`], calling `observe` with every scored conformation, the
/// starting walk included.
pub fn anneal_observed<F>(
    profile: &BinaryProfile,
    variant: EnergyVariant,
    schedule: &AnnealSchedule,
    seed: u64,
    mut observe: F,
) -> Result<SearchResult, SearchError>
where
    F: FnMut(&StepVector, f64),
{
    if profile.len() < 2 {
        return Err(SearchError::TooShort(profile.len()));
    }
    schedule.validate()?;
    let bits = profile.bits();
    let n_steps = profile.len() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut current = straight_steps(n_steps).expect("n_steps >= 1");
    let mut current_energy = score_aligned(
        &walk_points(&current).expect("straight walk"),
        bits,
        variant,
    );
    observe(&current, current_energy);
    let mut best = current.clone();
    let mut best_energy = current_energy;
    let mut visited = 1u64;
    let mut temp = schedule.initial_temp;

    for _ in 0..schedule.steps {
        let pivot = rng.gen_range(0..n_steps);
        let rotation = ROTATIONS[rng.gen_range(0..ROTATIONS.len())];
        let proposal = current.rotate_suffix(pivot, rotation);
        let accept_draw: f64 = rng.gen();
        if let Some(points) = walk_points(&proposal) {
            let energy = score_aligned(&points, bits, variant);
            visited += 1;
            observe(&proposal, energy);
            let delta = energy - current_energy;
            if delta <= 0.0 || accept_draw < (-delta / temp).exp() {
                current = proposal;
                current_energy = energy;
                if current_energy < best_energy {
                    best = current.clone();
                    best_energy = current_energy;
                }
            }
        }
        temp *= schedule.cooling_factor;
    }

    Ok(SearchResult {
        best_steps: best,
        best_energy,
        visited,
        method: SearchMethod::Anneal,
        seed: Some(seed),
    })
}
