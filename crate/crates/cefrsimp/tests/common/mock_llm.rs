//! Offline LLM doubles.

use std::sync::atomic::{AtomicUsize, Ordering};

use cefrsimp_core::prompt::LlmGenerator;
use cefrsimp_core::rules::{replace_words, sentence_split, strip_relative_clauses, trim_to_limit};
use cefrsimp_core::{cosine_sim, CefrLevel, HashedBagOfWords, Lexicon, LevelEnsemble, LlmError};

const EXTRA_SWAPS: &[(&str, &str)] = &[
    ("committee", "group"),
    ("organisations", "groups"),
    ("administration", "leaders"),
    ("department", "team"),
    ("residents", "people"),
    ("university", "college"),
    ("agreement", "deal"),
    ("programme", "plan"),
    ("consequences", "results"),
    ("arrangements", "plans"),
    ("communities", "towns"),
    ("negotiation", "talks"),
];

/// Source text of a prompt built from the default template.
pub fn prompt_source(prompt: &str) -> &str {
    let start = prompt.rfind("Complex Sentence: ").map(|i| i + "Complex Sentence: ".len()).unwrap_or(0);
    let end = prompt.rfind(" Simplified Sentence:").unwrap_or(prompt.len());
    &prompt[start..end.max(start)]
}

/// Answers with an edit of the source that the built-in ensemble rates one level below it,
/// keeping as much of the wording as possible.
pub struct ParaphraseLlm {
    ensemble: LevelEnsemble,
    lexicon: Lexicon,
    pub calls: AtomicUsize,
}

impl Default for ParaphraseLlm {
    fn default() -> Self {
        Self {
            ensemble: LevelEnsemble::builtin(),
            lexicon: Lexicon::default(),
            calls: AtomicUsize::new(0),
        }
    }
}

impl ParaphraseLlm {
    fn apply(&self, source: &str, ops: u8) -> String {
        let mut text = source.to_string();
        if ops & 1 != 0 {
            for opener in ["However, ", "Consequently, ", "Furthermore, "] {
                if let Some(rest) = text.strip_prefix(opener) {
                    let mut rest = rest.to_string();
                    rest[..1].make_ascii_uppercase();
                    text = rest;
                }
            }
        }
        if ops & 2 != 0 {
            text = strip_relative_clauses(&text);
        }
        if ops & 4 != 0 {
            text = sentence_split(&text).into_iter().next().unwrap_or(text);
        }
        if ops & 8 != 0 {
            text = replace_words(&text, &self.lexicon);
        }
        if ops & 16 != 0 {
            for (from, to) in EXTRA_SWAPS {
                text = text.replace(from, to);
            }
        }
        if ops & 32 != 0 {
            text = trim_to_limit(&text, 16);
        }
        text
    }

    /// Highest-similarity edit combination rated exactly one level below the source;
    /// failing that, the closest level.
    pub fn paraphrase(&self, source: &str) -> String {
        let embedder = HashedBagOfWords::default();
        let original = embedder.vector(source);
        let level = |t: &str| self.ensemble.predict(t).unwrap().resolved;
        let wanted = CefrLevel::saturating_from(i64::from(level(source).ordinal()) - 1);
        (1u8..64)
            .map(|ops| {
                let text = self.apply(source, ops);
                let sim = cosine_sim(&original, &embedder.vector(&text)).unwrap();
                (level(&text).distance(wanted), -sim, ops, text)
            })
            .min_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)).then(a.2.cmp(&b.2)))
            .map(|(_, _, _, text)| text)
            .unwrap()
    }
}

impl LlmGenerator for ParaphraseLlm {
    fn complete(&self, prompt: &str) -> Result<String, LlmError> {
        self.calls.fetch_add(1, Ordering::SeqCst);
        Ok(format!("Simplified Sentence: \"{}\"", self.paraphrase(prompt_source(prompt))))
    }
}

/// Always fails, counting attempts.
#[derive(Default)]
pub struct FailingLlm {
    pub calls: AtomicUsize,
}

impl LlmGenerator for FailingLlm {
    fn complete(&self, _prompt: &str) -> Result<String, LlmError> {
        self.calls.fetch_add(1, Ordering::SeqCst);
        Err(LlmError::Transport("connection refused".into()))
    }
}
