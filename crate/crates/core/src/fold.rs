//! Square-lattice folds: unit steps as fourth roots of unity, the
//! multiplicative fold family, and cumulative-sum embeddings.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FoldError {
    #[error("a fold needs at least one step")]
    NoSteps,
    #[error("illegal direction character {ch:?} at position {position}")]
    IllegalDirection { ch: char, position: usize },
}

/// A unit lattice step, identified with 1, i, -1 and -i in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnitStep {
    PosX,
    PosY,
    NegX,
    NegY,
}

impl UnitStep {
    pub const ALL: [UnitStep; 4] = [
        UnitStep::PosX,
        UnitStep::PosY,
        UnitStep::NegX,
        UnitStep::NegY,
    ];

    /// Power of `i` this step represents.
    fn quarter_turns(self) -> u8 {
        match self {
            UnitStep::PosX => 0,
            UnitStep::PosY => 1,
            UnitStep::NegX => 2,
            UnitStep::NegY => 3,
        }
    }

    fn from_quarter_turns(turns: u8) -> Self {
        Self::ALL[(turns % 4) as usize]
    }

    /// Multiplication by `i`.
    pub fn rotate_ccw(self) -> Self {
        self * UnitStep::PosY
    }

    pub fn delta(self) -> Point {
        match self {
            UnitStep::PosX => Point::new(1, 0),
            UnitStep::PosY => Point::new(0, 1),
            UnitStep::NegX => Point::new(-1, 0),
            UnitStep::NegY => Point::new(0, -1),
        }
    }

    pub fn from_delta(d: Point) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.delta() == d)
    }

    pub fn to_char(self) -> char {
        match self {
            UnitStep::PosX => 'R',
            UnitStep::PosY => 'U',
            UnitStep::NegX => 'L',
            UnitStep::NegY => 'D',
        }
    }

    pub fn from_char(ch: char) -> Option<Self> {
        match ch {
            'R' => Some(UnitStep::PosX),
            'U' => Some(UnitStep::PosY),
            'L' => Some(UnitStep::NegX),
            'D' => Some(UnitStep::NegY),
            _ => None,
        }
    }
}

impl Mul for UnitStep {
    type Output = UnitStep;

    // Powers of i multiply by adding exponents.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: UnitStep) -> UnitStep {
        UnitStep::from_quarter_turns(self.quarter_turns() + rhs.quarter_turns())
    }
}

/// Integer lattice point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        let dx = (self.x - other.x) as f64;
        let dy = (self.y - other.y) as f64;
        (dx * dx + dy * dy).sqrt()
    }

    pub fn is_lattice_neighbor(self, other: Point) -> bool {
        (self.x - other.x).abs() + (self.y - other.y).abs() == 1
    }

    /// Rotation by 90 degrees about the origin.
    pub fn rotate_ccw(self) -> Self {
        Point::new(-self.y, self.x)
    }
}

impl Add for Point {
    type Output = Point;

    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;

    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

/// An ordered, non-empty chain of unit steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StepVector(Vec<UnitStep>);

impl StepVector {
    pub fn new(steps: Vec<UnitStep>) -> Result<Self, FoldError> {
        if steps.is_empty() {
            return Err(FoldError::NoSteps);
        }
        Ok(Self(steps))
    }

    pub fn steps(&self) -> &[UnitStep] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entrywise product with a multiplier of the same length.
    pub fn multiply(&self, multiplier: &[UnitStep]) -> StepVector {
        debug_assert_eq!(self.0.len(), multiplier.len());
        StepVector(
            self.0
                .iter()
                .zip(multiplier)
                .map(|(&a, &b)| a * b)
                .collect(),
        )
    }

    /// Multiplies every step from `pivot` on by `rotation`.
    pub fn rotate_suffix(&self, pivot: usize, rotation: UnitStep) -> StepVector {
        let mut steps = self.0.clone();
        for s in &mut steps[pivot..] {
            *s = *s * rotation;
        }
        StepVector(steps)
    }

    pub fn to_direction_string(&self) -> String {
        self.0.iter().map(|s| s.to_char()).collect()
    }
}

impl fmt::Display for StepVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_direction_string())
    }
}

impl FromStr for StepVector {
    type Err = FoldError;

    fn from_str(s: &str) -> Result<Self, FoldError> {
        parse_direction_string(s)
    }
}

impl Serialize for StepVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_direction_string())
    }
}

impl<'de> Deserialize<'de> for StepVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_direction_string(&s).map_err(serde::de::Error::custom)
    }
}

/// Parses an `R`/`U`/`L`/`D` direction string.
pub fn parse_direction_string(text: &str) -> Result<StepVector, FoldError> {
    let steps = text
        .chars()
        .enumerate()
        .map(|(i, ch)| {
            UnitStep::from_char(ch).ok_or(FoldError::IllegalDirection {
                ch,
                position: i + 1,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    StepVector::new(steps)
}

pub fn straight_steps(n_steps: usize) -> Result<StepVector, FoldError> {
    StepVector::new(vec![UnitStep::PosX; n_steps])
}

/// Which members the multiplicative recurrence contributes to a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenerationMode {
    /// Passes k = 1..=n; the straight fold is not a member.
    FromK1,
    /// The straight fold first, then passes k = 2..=n.
    StraightPlusFromK2,
}

impl GenerationMode {
    pub const ALL: [GenerationMode; 2] =
        [GenerationMode::FromK1, GenerationMode::StraightPlusFromK2];
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldFamily {
    pub members: Vec<StepVector>,
    pub generation_mode: GenerationMode,
}

impl FoldFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn n_steps(&self) -> usize {
        self.members.first().map_or(0, StepVector::len)
    }
}

/// The pass-`k` multiplier: `i` on the first `k` entries, `-1` on the rest.
pub fn pass_multiplier(n_steps: usize, k: usize) -> Vec<UnitStep> {
    (0..n_steps)
        .map(|j| {
            if j < k {
                UnitStep::PosY
            } else {
                UnitStep::NegX
            }
        })
        .collect()
}

/// Builds the fold family by repeated entrywise multiplication, starting
/// from the straight fold and snapshotting after every pass.
pub fn family_generate(n_steps: usize, mode: GenerationMode) -> Result<FoldFamily, FoldError> {
    let mut current = straight_steps(n_steps)?;
    let mut members = Vec::with_capacity(n_steps);
    let first_pass = match mode {
        GenerationMode::FromK1 => 1,
        GenerationMode::StraightPlusFromK2 => {
            members.push(current.clone());
            2
        }
    };
    for k in first_pass..=n_steps {
        current = current.multiply(&pass_multiplier(n_steps, k));
        members.push(current.clone());
    }
    Ok(FoldFamily {
        members,
        generation_mode: mode,
    })
}

/// Whether the origin is included as the first embedded point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OriginPolicy {
    PrependOrigin,
    NoPrepend,
}

impl OriginPolicy {
    pub const ALL: [OriginPolicy; 2] = [OriginPolicy::PrependOrigin, OriginPolicy::NoPrepend];

    /// Number of points produced for `n_steps` steps.
    pub fn point_count(self, n_steps: usize) -> usize {
        match self {
            OriginPolicy::PrependOrigin => n_steps + 1,
            OriginPolicy::NoPrepend => n_steps,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeEmbedding {
    pub points: Vec<Point>,
    pub origin_policy: OriginPolicy,
}

impl LatticeEmbedding {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Steps between consecutive points, including the step out of the
    /// origin when it was not prepended.
    pub fn recover_steps(&self) -> Option<StepVector> {
        let mut prev = match self.origin_policy {
            OriginPolicy::PrependOrigin => *self.points.first()?,
            OriginPolicy::NoPrepend => Point::ORIGIN,
        };
        let skip = usize::from(self.origin_policy == OriginPolicy::PrependOrigin);
        let mut steps = Vec::with_capacity(self.points.len());
        for &p in &self.points[skip..] {
            steps.push(UnitStep::from_delta(p - prev)?);
            prev = p;
        }
        StepVector::new(steps).ok()
    }

    pub fn translated(&self, offset: Point) -> LatticeEmbedding {
        LatticeEmbedding {
            points: self.points.iter().map(|&p| p + offset).collect(),
            origin_policy: self.origin_policy,
        }
    }

    pub fn rotated_ccw(&self) -> LatticeEmbedding {
        LatticeEmbedding {
            points: self.points.iter().map(|p| p.rotate_ccw()).collect(),
            origin_policy: self.origin_policy,
        }
    }
}

/// Running partial sums of the steps, optionally preceded by the origin.
pub fn embed(steps: &StepVector, origin_policy: OriginPolicy) -> LatticeEmbedding {
    let mut points = Vec::with_capacity(origin_policy.point_count(steps.len()));
    if origin_policy == OriginPolicy::PrependOrigin {
        points.push(Point::ORIGIN);
    }
    let mut at = Point::ORIGIN;
    for s in steps.steps() {
        at = at + s.delta();
        points.push(at);
    }
    LatticeEmbedding {
        points,
        origin_policy,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SelfIntersectionReport {
    pub collision_count: usize,
    /// 1-based position of the first point that revisits an earlier site.
    pub first_collision_index: Option<usize>,
    pub is_self_avoiding: bool,
}

pub fn detect_self_intersections(emb: &LatticeEmbedding) -> SelfIntersectionReport {
    let mut seen: HashMap<Point, usize> = HashMap::with_capacity(emb.points.len());
    let mut collision_count = 0;
    let mut first_collision_index = None;
    for (i, &p) in emb.points.iter().enumerate() {
        if seen.insert(p, i).is_some() {
            collision_count += 1;
            first_collision_index.get_or_insert(i + 1);
        }
    }
    SelfIntersectionReport {
        collision_count,
        first_collision_index,
        is_self_avoiding: collision_count == 0,
    }
}

pub fn is_self_avoiding(steps: &StepVector) -> bool {
    detect_self_intersections(&embed(steps, OriginPolicy::PrependOrigin)).is_self_avoiding
}
