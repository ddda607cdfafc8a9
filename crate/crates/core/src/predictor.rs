//! CEFR level prediction: per-head votes and the ensemble vote cascade.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::ScorerError;
use crate::level::CefrLevel;
use crate::lexicon::is_frequent;
use crate::text::{is_terminator, word_tokens};

/// One head's opinion about a text.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeadVote {
    pub level: CefrLevel,
    pub confidence: f64,
}

impl HeadVote {
    /// Builds a vote, clamping the confidence into `[0, 1]` (NaN becomes 0).
    pub fn new(level: CefrLevel, confidence: f64) -> Self {
        let confidence = if confidence.is_nan() { 0.0 } else { confidence.clamp(0.0, 1.0) };
        Self { level, confidence }
    }
}

/// Three head votes and the level the cascade resolved them to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsemblePrediction {
    pub votes: [HeadVote; 3],
    pub resolved: CefrLevel,
}

/// A single CEFR classifier head.
pub trait LevelHead: Send + Sync {
    /// Stable identity used in error messages and reports.
    fn name(&self) -> &str;

    fn predict(&self, text: &str) -> Result<HeadVote, ScorerError>;
}

impl<T: LevelHead + ?Sized> LevelHead for &T {
    fn name(&self) -> &str {
        (**self).name()
    }

    fn predict(&self, text: &str) -> Result<HeadVote, ScorerError> {
        (**self).predict(text)
    }
}

impl<T: LevelHead + ?Sized> LevelHead for Box<T> {
    fn name(&self) -> &str {
        (**self).name()
    }

    fn predict(&self, text: &str) -> Result<HeadVote, ScorerError> {
        (**self).predict(text)
    }
}

struct Tally {
    level: CefrLevel,
    votes: usize,
    confidence_sum: f64,
    max_confidence: f64,
}

/// Resolves head votes: most votes, then largest confidence sum, then highest
/// single confidence, then the lower (simpler) level.
///
/// Works for any non-empty number of votes.
///
/// # Panics
/// If `votes` is empty.
pub fn resolve_vote(votes: &[HeadVote]) -> CefrLevel {
    assert!(!votes.is_empty(), "resolve_vote needs at least one vote");
    let mut tallies: Vec<Tally> = Vec::with_capacity(votes.len());
    for vote in votes {
        match tallies.iter_mut().find(|t| t.level == vote.level) {
            Some(t) => {
                t.votes += 1;
                t.confidence_sum += vote.confidence;
                t.max_confidence = t.max_confidence.max(vote.confidence);
            }
            None => tallies.push(Tally {
                level: vote.level,
                votes: 1,
                confidence_sum: vote.confidence,
                max_confidence: vote.confidence,
            }),
        }
    }
    tallies
        .into_iter()
        .max_by(|a, b| {
            a.votes
                .cmp(&b.votes)
                .then_with(|| a.confidence_sum.total_cmp(&b.confidence_sum))
                .then_with(|| a.max_confidence.total_cmp(&b.max_confidence))
                .then_with(|| b.level.cmp(&a.level))
        })
        .map(|t| t.level)
        .unwrap_or(CefrLevel::A1)
}

/// Three heads queried together and resolved by [`resolve_vote`].
pub struct LevelEnsemble {
    heads: [Box<dyn LevelHead>; 3],
}

impl LevelEnsemble {
    pub fn new(heads: [Box<dyn LevelHead>; 3]) -> Self {
        Self { heads }
    }

    /// The three built-in heuristic heads.
    pub fn builtin() -> Self {
        let [a, b, c] = HeuristicHead::builtin_trio();
        Self::new([Box::new(a), Box::new(b), Box::new(c)])
    }

    pub fn heads(&self) -> &[Box<dyn LevelHead>; 3] {
        &self.heads
    }

    pub fn predict(&self, text: &str) -> Result<EnsemblePrediction, ScorerError> {
        predict_ensemble(&self.heads, text)
    }
}

/// Anything that maps a text to a single CEFR level. The pipeline only needs this view.
pub trait LevelPredictor: Send + Sync {
    fn predict_level(&self, text: &str) -> Result<CefrLevel, ScorerError>;
}

impl LevelPredictor for LevelEnsemble {
    fn predict_level(&self, text: &str) -> Result<CefrLevel, ScorerError> {
        self.predict(text).map(|p| p.resolved)
    }
}

impl<T: LevelPredictor + ?Sized> LevelPredictor for &T {
    fn predict_level(&self, text: &str) -> Result<CefrLevel, ScorerError> {
        (**self).predict_level(text)
    }
}

/// Queries all three heads; the first head error aborts with that head's identity.
pub fn predict_ensemble<H: LevelHead>(heads: &[H; 3], text: &str) -> Result<EnsemblePrediction, ScorerError> {
    let votes = [heads[0].predict(text)?, heads[1].predict(text)?, heads[2].predict(text)?];
    Ok(EnsemblePrediction {
        votes,
        resolved: resolve_vote(&votes),
    })
}

const SUBORDINATORS: &[&str] = &[
    "which", "that", "who", "whom", "whose", "where", "when", "while", "whereas", "whether",
    "although", "though", "because", "since", "unless", "until", "however", "moreover",
    "therefore", "nevertheless", "furthermore", "consequently", "thereby", "wherein",
];

/// Surface features the heuristic heads score.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TextFeatures {
    pub mean_word_chars: f64,
    pub tokens_per_sentence: f64,
    /// Fraction of alphabetic tokens missing from the embedded frequency list.
    pub rare_ratio: f64,
    pub subordinators: usize,
}

impl TextFeatures {
    pub fn extract(text: &str) -> Self {
        let tokens = word_tokens(text);
        if tokens.is_empty() {
            return Self {
                mean_word_chars: 0.0,
                tokens_per_sentence: 0.0,
                rare_ratio: 0.0,
                subordinators: 0,
            };
        }
        let chars: usize = tokens.iter().map(|t| t.chars().count()).sum();
        let sentences = count_sentences(text).max(1);
        let alphabetic: Vec<&String> = tokens.iter().filter(|t| t.chars().any(char::is_alphabetic)).collect();
        let rare = alphabetic.iter().filter(|t| !is_frequent(t)).count();
        let subordinators = tokens.iter().filter(|t| SUBORDINATORS.contains(&t.as_str())).count();
        Self {
            mean_word_chars: chars as f64 / tokens.len() as f64,
            tokens_per_sentence: tokens.len() as f64 / sentences as f64,
            rare_ratio: if alphabetic.is_empty() { 0.0 } else { rare as f64 / alphabetic.len() as f64 },
            subordinators,
        }
    }
}

/// Sentence count: runs of terminators followed by whitespace or end, plus a trailing unterminated part.
fn count_sentences(text: &str) -> usize {
    let mut count = 0;
    let mut pending = false;
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        if is_terminator(c) || c == ';' {
            let boundary = chars.peek().is_none_or(|n| n.is_whitespace() || is_terminator(*n) || *n == '"');
            if boundary && pending {
                count += 1;
                pending = false;
            }
        } else if c.is_alphanumeric() {
            pending = true;
        }
    }
    count + usize::from(pending)
}

/// Deterministic offline head: a weighted feature sum banded by fixed thresholds.
///
/// This is a stand-in for a trained classifier; it exists so pipelines run and test offline.
#[derive(Debug, Clone, PartialEq)]
pub struct HeuristicHead {
    name: String,
    /// Weights for (excess word length over 3 chars, tokens per sentence, rare ratio x10, subordinators).
    weights: [f64; 4],
    /// Ascending band edges between consecutive levels A1|A2|B1|B2|C1|C2.
    thresholds: [f64; 5],
}

impl HeuristicHead {
    pub fn new(name: impl Into<String>, weights: [f64; 4], thresholds: [f64; 5]) -> Self {
        debug_assert!(thresholds.windows(2).all(|w| w[0] < w[1]));
        Self {
            name: name.into(),
            weights,
            thresholds,
        }
    }

    pub fn builtin_trio() -> [HeuristicHead; 3] {
        [
            HeuristicHead::new("heuristic-lexical", [1.0, 0.15, 0.6, 0.6], [2.0, 4.6, 6.2, 7.8, 9.4]),
            HeuristicHead::new("heuristic-syntactic", [0.6, 0.22, 0.4, 0.9], [2.0, 4.6, 6.2, 7.8, 9.4]),
            HeuristicHead::new("heuristic-balanced", [0.8, 0.18, 0.5, 0.7], [2.1, 4.7, 6.3, 7.9, 9.5]),
        ]
    }

    pub fn complexity(&self, f: &TextFeatures) -> f64 {
        let [w_len, w_sent, w_rare, w_sub] = self.weights;
        w_len * (f.mean_word_chars - 3.0).max(0.0)
            + w_sent * f.tokens_per_sentence
            + w_rare * 10.0 * f.rare_ratio
            + w_sub * f.subordinators as f64
    }

    /// Maps a complexity value to a band and a margin-based confidence.
    pub fn band(&self, complexity: f64) -> HeadVote {
        let band = self.thresholds.iter().take_while(|t| complexity >= **t).count();
        let spacing = (self.thresholds[4] - self.thresholds[0]) / 4.0;
        let margin = self
            .thresholds
            .iter()
            .map(|t| (complexity - t).abs())
            .fold(f64::INFINITY, f64::min);
        HeadVote::new(CefrLevel::ALL[band], margin / (spacing / 2.0))
    }
}

impl LevelHead for HeuristicHead {
    fn name(&self) -> &str {
        &self.name
    }

    fn predict(&self, text: &str) -> Result<HeadVote, ScorerError> {
        Ok(self.band(self.complexity(&TextFeatures::extract(text))))
    }
}
