use core::fmt;

use alloc::string::String;

use crate::level::CefrLevel;

/// One input record: a source text and the level it should be rewritten to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplificationTask {
    pub text_id: String,
    pub original: String,
    pub target: CefrLevel,
    pub reference: Option<String>,
}

impl SimplificationTask {
    pub fn new(text_id: impl Into<String>, original: impl Into<String>, target: CefrLevel) -> Self {
        Self {
            text_id: text_id.into(),
            original: original.into(),
            target,
            reference: None,
        }
    }

    pub fn with_reference(mut self, reference: impl Into<String>) -> Self {
        self.reference = Some(reference.into());
        self
    }
}

/// Where a candidate text came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// Cleaned LLM completion.
    Llm,
    /// A rule composition; `budget` is the word limit of its final trim, if any.
    Rule { chain: String, budget: Option<usize> },
    /// The source text itself (possibly trimmed), used as a last resort.
    Original,
}

impl Provenance {
    pub fn rule(chain: impl Into<String>, budget: Option<usize>) -> Self {
        Provenance::Rule {
            chain: chain.into(),
            budget,
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Llm => f.write_str("llm"),
            Provenance::Rule { chain, .. } => f.write_str(chain),
            Provenance::Original => f.write_str("original"),
        }
    }
}

/// A simplification hypothesis and its verification scores.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub text: String,
    pub predicted: Option<CefrLevel>,
    pub sim_orig: f64,
    pub sim_ref: Option<f64>,
    pub score: f64,
    pub provenance: Provenance,
}

impl Candidate {
    pub fn unscored(text: impl Into<String>, provenance: Provenance) -> Self {
        Self {
            text: text.into(),
            predicted: None,
            sim_orig: 0.0,
            sim_ref: None,
            score: 0.0,
            provenance,
        }
    }

    /// Ordinal distance to `target`, or `None` before prediction.
    pub fn distance_to(&self, target: CefrLevel) -> Option<u8> {
        self.predicted.map(|p| p.distance(target))
    }
}
