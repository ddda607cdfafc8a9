//! Recorded LLM completions for offline, byte-reproducible runs.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use cefrsimp_core::prompt::LlmGenerator;
use cefrsimp_core::LlmError;
use serde::{Deserialize, Serialize};

use crate::io::IoError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureEntry {
    pub prompt: String,
    pub completion: String,
}

/// Replays completions keyed by exact prompt text. Unknown prompts fail with
/// [`LlmError::MissingFixture`].
#[derive(Debug, Default)]
pub struct FixtureLlm {
    entries: BTreeMap<String, String>,
    calls: AtomicUsize,
}

impl FixtureLlm {
    pub fn from_entries(entries: impl IntoIterator<Item = FixtureEntry>) -> Self {
        Self {
            entries: entries.into_iter().map(|e| (e.prompt, e.completion)).collect(),
            calls: AtomicUsize::new(0),
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, IoError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| IoError::File {
            path: path.to_path_buf(),
            source,
        })?;
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let entry = serde_json::from_str(line).map_err(|e| IoError::Record {
                line: i + 1,
                message: e.to_string(),
            })?;
            entries.push(entry);
        }
        Ok(Self::from_entries(entries))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn calls(&self) -> usize {
        self.calls.load(Ordering::Relaxed)
    }
}

impl LlmGenerator for FixtureLlm {
    fn complete(&self, prompt: &str) -> Result<String, LlmError> {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.entries.get(prompt).cloned().ok_or(LlmError::MissingFixture)
    }
}

/// Passes calls through to `inner` and keeps every successful completion.
pub struct RecordingLlm<G> {
    inner: G,
    seen: Mutex<BTreeMap<String, String>>,
}

impl<G: LlmGenerator> RecordingLlm<G> {
    pub fn new(inner: G) -> Self {
        Self {
            inner,
            seen: Mutex::new(BTreeMap::new()),
        }
    }

    /// Recorded entries sorted by prompt.
    pub fn entries(&self) -> Vec<FixtureEntry> {
        self.seen
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .iter()
            .map(|(p, c)| FixtureEntry {
                prompt: p.clone(),
                completion: c.clone(),
            })
            .collect()
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), IoError> {
        let path = path.as_ref();
        let wrap = |source| IoError::File {
            path: path.to_path_buf(),
            source,
        };
        let mut out = BufWriter::new(fs::File::create(path).map_err(wrap)?);
        for entry in self.entries() {
            serde_json::to_writer(&mut out, &entry).map_err(|e| wrap(e.into()))?;
            out.write_all(b"\n").map_err(wrap)?;
        }
        out.flush().map_err(wrap)
    }
}

impl<G: LlmGenerator> LlmGenerator for RecordingLlm<G> {
    fn complete(&self, prompt: &str) -> Result<String, LlmError> {
        let completion = self.inner.complete(prompt)?;
        self.seen
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .insert(prompt.to_string(), completion.clone());
        Ok(completion)
    }
}
