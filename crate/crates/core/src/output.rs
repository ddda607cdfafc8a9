//! Output records, ordering, and the completeness repair pass.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::rules::trim_to_limit;
use crate::task::SimplificationTask;

/// Word budget of the conservative fallback built from the original text.
pub const FALLBACK_WORD_LIMIT: usize = 28;

/// One emitted record: exactly the two fields of the output file.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct SimplifiedOutput {
    pub text_id: String,
    pub simplified_sentence: String,
}

impl SimplifiedOutput {
    pub fn new(text_id: impl Into<String>, simplified_sentence: impl Into<String>) -> Self {
        Self {
            text_id: text_id.into(),
            simplified_sentence: simplified_sentence.into(),
        }
    }
}

/// The original trimmed to the fallback budget.
pub fn fallback_text(original: &str) -> String {
    trim_to_limit(original, FALLBACK_WORD_LIMIT)
}

/// Stable ascending sort on `text_id` (byte-wise lexicographic).
pub fn sort_outputs(mut outputs: Vec<SimplifiedOutput>) -> Vec<SimplifiedOutput> {
    outputs.sort_by(|a, b| a.text_id.cmp(&b.text_id));
    outputs
}

/// Makes the output id set equal the input id set.
///
/// Missing ids are resolved with `resolver`; a failing resolver yields the trimmed
/// original. Outputs for unknown ids and repeated ids are dropped. The result is sorted.
pub fn completeness_check<E>(
    inputs: &[SimplificationTask],
    outputs: Vec<SimplifiedOutput>,
    mut resolver: impl FnMut(&SimplificationTask) -> Result<String, E>,
) -> Vec<SimplifiedOutput> {
    let wanted: BTreeSet<&str> = inputs.iter().map(|t| t.text_id.as_str()).collect();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut kept: Vec<SimplifiedOutput> = Vec::with_capacity(inputs.len());
    for output in outputs {
        if wanted.contains(output.text_id.as_str()) && seen.insert(output.text_id.clone()) {
            kept.push(output);
        }
    }
    if kept.len() < wanted.len() {
        for task in inputs {
            if seen.contains(&task.text_id) {
                continue;
            }
            let text = match resolver(task) {
                Ok(text) if !text.trim().is_empty() => text,
                _ => fallback_text(&task.original),
            };
            seen.insert(task.text_id.clone());
            kept.push(SimplifiedOutput::new(task.text_id.clone(), text));
        }
    }
    sort_outputs(kept)
}
