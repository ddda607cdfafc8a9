use core::fmt;
use core::str::FromStr;

use crate::error::InputError;

/// CEFR proficiency level, ordered from simplest (A1) to hardest (C2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "alloc::string::String", into = "&'static str"))]
pub enum CefrLevel {
    A1,
    A2,
    B1,
    B2,
    C1,
    C2,
}

impl CefrLevel {
    pub const ALL: [CefrLevel; 6] = [
        CefrLevel::A1,
        CefrLevel::A2,
        CefrLevel::B1,
        CefrLevel::B2,
        CefrLevel::C1,
        CefrLevel::C2,
    ];

    pub const fn ordinal(self) -> u8 {
        self as u8
    }

    pub fn from_ordinal(ordinal: i64) -> Result<Self, InputError> {
        usize::try_from(ordinal)
            .ok()
            .and_then(|i| Self::ALL.get(i).copied())
            .ok_or(InputError::OrdinalOutOfRange(ordinal))
    }

    /// Ordinal clamped into range; used where arithmetic may step past A1 or C2.
    pub fn saturating_from(ordinal: i64) -> Self {
        Self::ALL[ordinal.clamp(0, 5) as usize]
    }

    pub const fn label(self) -> &'static str {
        match self {
            CefrLevel::A1 => "A1",
            CefrLevel::A2 => "A2",
            CefrLevel::B1 => "B1",
            CefrLevel::B2 => "B2",
            CefrLevel::C1 => "C1",
            CefrLevel::C2 => "C2",
        }
    }

    /// Absolute ordinal distance between two levels.
    pub fn distance(self, other: CefrLevel) -> u8 {
        self.ordinal().abs_diff(other.ordinal())
    }
}

/// Parses `A1`..`C2`, ignoring case and surrounding whitespace.
pub fn level_from_label(label: &str) -> Result<CefrLevel, InputError> {
    let trimmed = label.trim();
    CefrLevel::ALL
        .iter()
        .copied()
        .find(|level| level.label().eq_ignore_ascii_case(trimmed))
        .ok_or_else(|| InputError::UnknownLevel(trimmed.into()))
}

/// Signed difference `source - target`; positive when simplification is needed.
pub fn cefr_gap(source: CefrLevel, target: CefrLevel) -> i32 {
    i32::from(source.ordinal()) - i32::from(target.ordinal())
}

impl FromStr for CefrLevel {
    type Err = InputError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        level_from_label(s)
    }
}

impl TryFrom<alloc::string::String> for CefrLevel {
    type Error = InputError;

    fn try_from(value: alloc::string::String) -> Result<Self, Self::Error> {
        level_from_label(&value)
    }
}

impl From<CefrLevel> for &'static str {
    fn from(level: CefrLevel) -> Self {
        level.label()
    }
}

impl fmt::Display for CefrLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}
