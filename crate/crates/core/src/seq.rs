//! Sequence ingestion, hydropathy scales and binary hydrophobicity profiles.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::PathBuf;

use thiserror::Error;

/// Tuna cytochrome c (PDB 5CYT) with the N-terminal acetyl cap written as `X`.
pub const FIXTURE_5CYT: &str = "XGDVAKGKKTFVQKCAQCHTVENGGKHKVGPNLWGLFGRKTGQAEGYSYTDANKSKGIVWNNDTLMEYLENPKKYIPGTKMIFAGIKKKGERQDLVAYLKSATS";

/// The twenty standard one-letter residue codes.
pub const STANDARD_RESIDUES: [char; 20] = [
    'A', 'C', 'D', 'E', 'F', 'G', 'H', 'I', 'K', 'L', 'M', 'N', 'P', 'Q', 'R', 'S', 'T', 'V', 'W',
    'Y',
];

const KYTE_DOOLITTLE: [(char, f64); 20] = [
    ('A', 1.8),
    ('R', -4.5),
    ('N', -3.5),
    ('D', -3.5),
    ('C', 2.5),
    ('Q', -3.5),
    ('E', -3.5),
    ('G', -0.4),
    ('H', -3.2),
    ('I', 4.5),
    ('L', 3.8),
    ('K', -3.9),
    ('M', 1.9),
    ('F', 2.8),
    ('P', -1.6),
    ('S', -0.8),
    ('T', -0.7),
    ('W', -0.9),
    ('Y', -1.3),
    ('V', 4.2),
];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeqError {
    #[error("empty sequence")]
    Empty,
    #[error("illegal residue character {ch:?} at position {position}")]
    IllegalCharacter { ch: char, position: usize },
    #[error("fasta input must start with a '>' header line")]
    MissingHeader,
    #[error("fasta input contains {0} records; exactly one is supported")]
    RecordCount(usize),
    #[error("missing residue {0} in scale")]
    MissingResidue(char),
    #[error("duplicate residue {0} in scale")]
    DuplicateResidue(char),
    #[error("line {line}: cannot parse scale row {text:?}")]
    BadScaleRow { line: usize, text: String },
    #[error("scale threshold must be finite")]
    NonFiniteThreshold,
    #[error("residue {0} is not covered by scale {1}")]
    UnknownResidue(char, String),
    #[error("illegal H/P character {ch:?} at position {position}")]
    IllegalHp { ch: char, position: usize },
    #[error("cannot read scale file {path}: {message}")]
    Io { path: PathBuf, message: String },
}

/// How sequence text is laid out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceFormat {
    Raw,
    Fasta,
}

/// An identified amino-acid sequence in uppercase one-letter codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    id: String,
    residues: String,
}

impl Sequence {
    pub fn new(id: impl Into<String>, residues: &str) -> Result<Self, SeqError> {
        let residues = clean_residues(residues)?;
        Ok(Self {
            id: id.into(),
            residues,
        })
    }

    /// The bundled 104-residue 5CYT fixture.
    pub fn fixture_5cyt() -> Self {
        Self::new("5CYT", FIXTURE_5CYT).expect("fixture is valid")
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn residues(&self) -> &str {
        &self.residues
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.id, self.residues)
    }
}

fn clean_residues(text: &str) -> Result<String, SeqError> {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars().filter(|c| !c.is_whitespace()) {
        let up = ch.to_ascii_uppercase();
        if !up.is_ascii_uppercase() {
            return Err(SeqError::IllegalCharacter {
                ch,
                position: out.len() + 1,
            });
        }
        out.push(up);
    }
    if out.is_empty() {
        return Err(SeqError::Empty);
    }
    Ok(out)
}

/// Parses raw or single-record FASTA text. Whitespace is dropped and
/// lowercase letters are uppercased.
pub fn parse_sequence(text: &str, format: SequenceFormat) -> Result<Sequence, SeqError> {
    match format {
        SequenceFormat::Raw => Sequence::new("seq", text),
        SequenceFormat::Fasta => {
            let body = text.trim_start();
            if body.is_empty() {
                return Err(SeqError::Empty);
            }
            if !body.starts_with('>') {
                return Err(SeqError::MissingHeader);
            }
            let records = body.lines().filter(|l| l.starts_with('>')).count();
            if records != 1 {
                return Err(SeqError::RecordCount(records));
            }
            let mut lines = body.lines();
            let header = lines.next().unwrap_or_default();
            let id = header[1..].trim().to_string();
            let residues: String = lines.collect();
            Sequence::new(id, &residues)
        }
    }
}

/// What to do with residues a scale has no value for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UnknownPolicy {
    #[default]
    TreatAsHydrophilic,
    Reject,
}

/// Per-residue hydropathy values with a classification threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct HydropathyScale {
    pub name: String,
    pub values: BTreeMap<char, f64>,
    pub threshold: f64,
    pub unknown_policy: UnknownPolicy,
}

impl HydropathyScale {
    /// Validates coverage of the standard residues and a finite threshold.
    pub fn new(
        name: impl Into<String>,
        values: BTreeMap<char, f64>,
        threshold: f64,
        unknown_policy: UnknownPolicy,
    ) -> Result<Self, SeqError> {
        if let Some(&missing) = STANDARD_RESIDUES.iter().find(|c| !values.contains_key(c)) {
            return Err(SeqError::MissingResidue(missing));
        }
        if !threshold.is_finite() {
            return Err(SeqError::NonFiniteThreshold);
        }
        Ok(Self {
            name: name.into(),
            values,
            threshold,
            unknown_policy,
        })
    }

    /// Kyte & Doolittle (1982) hydropathy index, threshold 0.0.
    pub fn kyte_doolittle() -> Self {
        Self {
            name: "kyte-doolittle".to_string(),
            values: KYTE_DOOLITTLE.iter().copied().collect(),
            threshold: 0.0,
            unknown_policy: UnknownPolicy::TreatAsHydrophilic,
        }
    }

    pub fn with_threshold(mut self, threshold: f64) -> Result<Self, SeqError> {
        if !threshold.is_finite() {
            return Err(SeqError::NonFiniteThreshold);
        }
        self.threshold = threshold;
        Ok(self)
    }

    pub fn with_unknown_policy(mut self, policy: UnknownPolicy) -> Self {
        self.unknown_policy = policy;
        self
    }

    pub fn value(&self, residue: char) -> Option<f64> {
        self.values.get(&residue).copied()
    }

    pub fn is_hydrophobic(&self, residue: char) -> Result<bool, SeqError> {
        match self.value(residue) {
            Some(v) => Ok(v > self.threshold),
            None => match self.unknown_policy {
                UnknownPolicy::TreatAsHydrophilic => Ok(false),
                UnknownPolicy::Reject => Err(SeqError::UnknownResidue(residue, self.name.clone())),
            },
        }
    }
}

/// Where a hydropathy scale comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScaleSource {
    BuiltinKd,
    File(PathBuf),
}

pub fn load_scale(source: &ScaleSource) -> Result<HydropathyScale, SeqError> {
    match source {
        ScaleSource::BuiltinKd => Ok(HydropathyScale::kyte_doolittle()),
        ScaleSource::File(path) => {
            let text = fs::read_to_string(path).map_err(|e| SeqError::Io {
                path: path.clone(),
                message: e.to_string(),
            })?;
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "custom".to_string());
            parse_scale_tsv(&text, &name)
        }
    }
}

/// Parses `CODE<TAB>value` rows. Blank lines and `#` comments are skipped.
pub fn parse_scale_tsv(text: &str, name: &str) -> Result<HydropathyScale, SeqError> {
    let mut values = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || SeqError::BadScaleRow {
            line: i + 1,
            text: raw.to_string(),
        };
        let mut fields = line.split('\t');
        let (code, value) = match (fields.next(), fields.next(), fields.next()) {
            (Some(c), Some(v), None) => (c.trim(), v.trim()),
            _ => return Err(bad()),
        };
        let mut chars = code.chars();
        let ch = match (chars.next(), chars.next()) {
            (Some(c), None) if c.is_ascii_alphabetic() => c.to_ascii_uppercase(),
            _ => return Err(bad()),
        };
        let value: f64 = value.parse().map_err(|_| bad())?;
        if !value.is_finite() {
            return Err(bad());
        }
        if values.insert(ch, value).is_some() {
            return Err(SeqError::DuplicateResidue(ch));
        }
    }
    HydropathyScale::new(name, values, 0.0, UnknownPolicy::default())
}

/// Per-residue hydrophobic flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryProfile {
    bits: Vec<bool>,
    scale_name: String,
    hydrophobic_count: usize,
}

impl BinaryProfile {
    pub fn from_bits(bits: Vec<bool>, scale_name: impl Into<String>) -> Self {
        let hydrophobic_count = bits.iter().filter(|&&b| b).count();
        Self {
            bits,
            scale_name: scale_name.into(),
            hydrophobic_count,
        }
    }

    /// Reads an H/P string (`H` hydrophobic, `P` polar), case-insensitive.
    pub fn from_hp(text: &str) -> Result<Self, SeqError> {
        let mut bits = Vec::new();
        for ch in text.chars().filter(|c| !c.is_whitespace()) {
            match ch.to_ascii_uppercase() {
                'H' => bits.push(true),
                'P' => bits.push(false),
                _ => {
                    return Err(SeqError::IllegalHp {
                        ch,
                        position: bits.len() + 1,
                    })
                }
            }
        }
        if bits.is_empty() {
            return Err(SeqError::Empty);
        }
        Ok(Self::from_bits(bits, "hp"))
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn scale_name(&self) -> &str {
        &self.scale_name
    }

    pub fn hydrophobic_count(&self) -> usize {
        self.hydrophobic_count
    }

    /// `0`/`1` rendering, one character per residue.
    pub fn to_bit_string(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }
}

pub fn encode_binary(seq: &Sequence, scale: &HydropathyScale) -> Result<BinaryProfile, SeqError> {
    let bits = seq
        .residues()
        .chars()
        .map(|c| scale.is_hydrophobic(c))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BinaryProfile::from_bits(bits, scale.name.clone()))
}
