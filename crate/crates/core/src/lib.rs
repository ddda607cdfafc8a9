//! Readability-controlled text simplification: CEFR level arithmetic, ensemble level
//! prediction, rule-based rewriting, and the multi-round candidate engine.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, HTTP backends and the
//! command line live in the `cefrsimp` crate.

#![no_std]

extern crate alloc;

pub mod config;
pub mod error;
pub mod eval;
pub mod level;
pub mod lexicon;
pub mod orchestrator;
pub mod output;
pub mod predictor;
pub mod prompt;
pub mod rules;
pub mod similarity;
pub mod task;
pub mod text;

pub use config::{Mode, PipelineConfig};
pub use error::{InputError, LlmError, PipelineError, ScorerError};
pub use level::{cefr_gap, level_from_label, CefrLevel};
pub use lexicon::Lexicon;
pub use predictor::{resolve_vote, EnsemblePrediction, HeadVote, HeuristicHead, LevelEnsemble, LevelHead};
pub use similarity::{cosine_sim, Embedder, EmbeddingVector, HashedBagOfWords};
pub use task::{Candidate, Provenance, SimplificationTask};
