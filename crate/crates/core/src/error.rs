use alloc::string::String;

use thiserror::Error;

/// Malformed caller input: bad labels, mismatched dimensions, empty record sets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("unknown CEFR label {0:?}; expected one of A1, A2, B1, B2, C1, C2")]
    UnknownLevel(String),
    #[error("ordinal {0} is outside the CEFR range 0..=5")]
    OrdinalOutOfRange(i64),
    #[error("embedding dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("{0} requires at least one record")]
    Empty(&'static str),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("lexicon line {line}: {message}")]
    Lexicon { line: usize, message: String },
}

/// Failure of a level-prediction head or an embedding provider.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("scorer {scorer}: {message}")]
pub struct ScorerError {
    pub scorer: String,
    pub message: String,
}

impl ScorerError {
    pub fn new(scorer: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            scorer: scorer.into(),
            message: message.into(),
        }
    }
}

/// Failure to obtain a usable LLM candidate. Never fatal to a pipeline run.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LlmError {
    #[error("LLM request timed out after {0} s")]
    Timeout(u64),
    #[error("LLM transport error: {0}")]
    Transport(String),
    #[error("LLM returned no usable completion")]
    EmptyCompletion,
    #[error("prompt configuration error: {0}")]
    Prompt(String),
    #[error("no recorded completion for this prompt")]
    MissingFixture,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("duplicate text_id {0:?}")]
    DuplicateId(String),
    #[error("scorer backend unavailable: every level prediction failed (last error: {0})")]
    ScorerUnavailable(ScorerError),
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("candidate {0:?} was read before it was scored")]
    Unscored(String),
}
