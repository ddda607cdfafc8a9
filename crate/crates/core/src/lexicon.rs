//! Vocabulary data: the frequent-word list and the word-substitution lexicon.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};

use crate::error::InputError;
use crate::text::token_spans;

include!("../data/frequent_words.rs");
include!("../data/default_lexicon.rs");

fn in_list(word: &str) -> bool {
    FREQUENT_WORDS.binary_search(&word).is_ok()
}

/// Whether a lowercased token (or a naive stem of it) is among the 2000 most frequent English words.
pub fn is_frequent(word: &str) -> bool {
    if in_list(word) {
        return true;
    }
    if let Some(stem) = word.strip_suffix("ies") {
        if in_list(&format!("{stem}y")) {
            return true;
        }
    }
    ["s", "es", "ed", "d", "ing", "ly", "'s"]
        .iter()
        .filter_map(|suffix| word.strip_suffix(suffix))
        .any(|stem| !stem.is_empty() && in_list(stem))
}

/// Complex word to simpler substitute, keyed by lowercased single tokens.
///
/// Invariant: no substitute is also a key, so substitution is idempotent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    pairs: BTreeMap<String, String>,
}

impl Default for Lexicon {
    fn default() -> Self {
        Self::from_pairs(DEFAULT_PAIRS.iter().copied()).expect("embedded lexicon is valid")
    }
}

impl Lexicon {
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self, InputError> {
        let mut map = BTreeMap::new();
        for (i, (complex, simple)) in pairs.into_iter().enumerate() {
            let line = i + 1;
            let key = complex.trim().to_lowercase();
            let value = simple.trim();
            if token_spans(&key) != [(0, key.len())] {
                return Err(lexicon_error(line, format!("key {complex:?} is not a single word token")));
            }
            if value.is_empty() || value.contains(char::is_whitespace) {
                return Err(lexicon_error(line, format!("substitute {simple:?} must be a single word")));
            }
            if map.insert(key, value.to_string()).is_some() {
                return Err(lexicon_error(line, format!("duplicate key {complex:?}")));
            }
        }
        let lexicon = Self { pairs: map };
        if let Some((key, value)) = lexicon
            .pairs
            .iter()
            .find(|(_, v)| lexicon.pairs.contains_key(&v.to_lowercase()))
        {
            return Err(InputError::Config(format!(
                "lexicon substitute {value:?} (for {key:?}) is itself a key"
            )));
        }
        Ok(lexicon)
    }

    /// Parses `complex<TAB>simple` lines. Blank lines and `#` comments are skipped.
    pub fn parse_tsv(source: &str) -> Result<Self, InputError> {
        let mut pairs = alloc::vec::Vec::new();
        for (i, raw) in source.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let Some((complex, simple)) = line.split_once('\t') else {
                return Err(lexicon_error(i + 1, "expected complex<TAB>simple".into()));
            };
            pairs.push((i + 1, complex, simple));
        }
        // Re-number errors by source line rather than pair index.
        for &(line, complex, simple) in &pairs {
            Self::from_pairs([(complex, simple)]).map_err(|e| match e {
                InputError::Lexicon { message, .. } => lexicon_error(line, message),
                other => other,
            })?;
        }
        Self::from_pairs(pairs.iter().map(|&(_, c, s)| (c, s)))
    }

    pub fn get(&self, lowercase_word: &str) -> Option<&str> {
        self.pairs.get(lowercase_word).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.pairs.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }
}

fn lexicon_error(line: usize, message: String) -> InputError {
    InputError::Lexicon { line, message }
}
