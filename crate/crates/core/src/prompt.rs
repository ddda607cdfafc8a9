//! Prompt construction and completion cleanup for the LLM candidate.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;

use crate::error::LlmError;
use crate::level::CefrLevel;
use crate::task::SimplificationTask;

pub const LEVEL_SLOT: &str = "{CEFR-LEVEL}";
pub const DESCRIPTION_SLOT: &str = "{CEFR-Description}";
pub const SOURCE_SLOT: &str = "{Source}";

pub const DEFAULT_TEMPLATE: &str = "Please simplify the following Complex Sentence to make it easier to read and understand by {CEFR-LEVEL} CEFR level English learners. {CEFR-LEVEL} level English learner {CEFR-Description}. To simplify, you may replace difficult words with simpler ones, elaborate, or remove them when possible. You may also break down a lengthy sentence into shorter, clear sentences. Ensure the revised sentence is grammatically correct, fluent, and maintains the core message of the original without changing its meaning. Complex Sentence: {Source} Simplified Sentence:";

/// One-clause descriptors after the CEFR global scale.
const DEFAULT_DESCRIPTIONS: [(CefrLevel, &str); 6] = [
    (CefrLevel::A1, "can understand and use familiar everyday expressions and very basic phrases"),
    (CefrLevel::A2, "can understand sentences and frequently used expressions about areas of immediate relevance such as family, shopping and work"),
    (CefrLevel::B1, "can understand the main points of clear standard language on familiar matters met in work, school and leisure"),
    (CefrLevel::B2, "can understand the main ideas of complex text on both concrete and abstract topics"),
    (CefrLevel::C1, "can understand a wide range of demanding, longer texts and recognise implicit meaning"),
    (CefrLevel::C2, "can understand with ease virtually everything heard or read"),
];

/// A prompt template with level, descriptor and source slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PromptSpec {
    template: String,
    level_descriptions: BTreeMap<CefrLevel, String>,
}

impl Default for PromptSpec {
    fn default() -> Self {
        Self::new(
            DEFAULT_TEMPLATE,
            DEFAULT_DESCRIPTIONS.iter().map(|(l, d)| (*l, String::from(*d))).collect(),
        )
        .expect("default template is valid")
    }
}

impl PromptSpec {
    /// Validates the template: `{Source}` exactly once, the level and description slots at
    /// least once each (the default template names the level twice).
    pub fn new(template: impl Into<String>, level_descriptions: BTreeMap<CefrLevel, String>) -> Result<Self, LlmError> {
        let template = template.into();
        if template.matches(SOURCE_SLOT).count() != 1 {
            return Err(LlmError::Prompt(format!("template must contain {SOURCE_SLOT} exactly once")));
        }
        for slot in [LEVEL_SLOT, DESCRIPTION_SLOT] {
            if !template.contains(slot) {
                return Err(LlmError::Prompt(format!("template is missing {slot}")));
            }
        }
        Ok(Self {
            template,
            level_descriptions,
        })
    }

    pub fn with_description(mut self, level: CefrLevel, description: impl Into<String>) -> Self {
        self.level_descriptions.insert(level, description.into());
        self
    }

    pub fn template(&self) -> &str {
        &self.template
    }

    pub fn description(&self, level: CefrLevel) -> Option<&str> {
        self.level_descriptions.get(&level).map(String::as_str)
    }

    pub fn build_prompt(&self, task: &SimplificationTask) -> Result<String, LlmError> {
        build_prompt(self, task)
    }
}

/// Fills the template slots for one task.
pub fn build_prompt(spec: &PromptSpec, task: &SimplificationTask) -> Result<String, LlmError> {
    let description = spec
        .level_descriptions
        .get(&task.target)
        .ok_or_else(|| LlmError::Prompt(format!("no description for level {}", task.target)))?;
    // Source goes last so a literal slot marker inside the source text stays untouched.
    let (head, tail) = spec
        .template
        .split_once(SOURCE_SLOT)
        .expect("validated template has a source slot");
    let fill = |part: &str| part.replace(LEVEL_SLOT, task.target.label()).replace(DESCRIPTION_SLOT, description);
    Ok(format!("{}{}{}", fill(head), task.original.trim(), fill(tail)))
}

const LABEL: &str = "simplified sentence:";

const QUOTE_PAIRS: [(char, char); 4] = [('"', '"'), ('\'', '\''), ('\u{201c}', '\u{201d}'), ('`', '`')];

/// Trims whitespace, a leading "Simplified Sentence:" label, and surrounding quotes.
pub fn clean_response(raw: &str) -> Result<String, LlmError> {
    let mut text = raw.trim();
    loop {
        let before = text;
        if text.len() >= LABEL.len() && text.is_char_boundary(LABEL.len()) && text[..LABEL.len()].eq_ignore_ascii_case(LABEL) {
            text = text[LABEL.len()..].trim();
        }
        for (open, close) in QUOTE_PAIRS {
            if text.chars().count() >= 2 && text.starts_with(open) && text.ends_with(close) {
                text = text[open.len_utf8()..text.len() - close.len_utf8()].trim();
                break;
            }
        }
        if text == before {
            break;
        }
    }
    if text.is_empty() {
        Err(LlmError::EmptyCompletion)
    } else {
        Ok(String::from(text))
    }
}

/// A text-completion backend.
pub trait LlmGenerator: Send + Sync {
    fn complete(&self, prompt: &str) -> Result<String, LlmError>;
}

impl<T: LlmGenerator + ?Sized> LlmGenerator for &T {
    fn complete(&self, prompt: &str) -> Result<String, LlmError> {
        (**self).complete(prompt)
    }
}

impl<T: LlmGenerator + ?Sized> LlmGenerator for alloc::boxed::Box<T> {
    fn complete(&self, prompt: &str) -> Result<String, LlmError> {
        (**self).complete(prompt)
    }
}

/// Prompt, call and clean: the full path from a task to a usable LLM candidate text.
pub fn llm_candidate(spec: &PromptSpec, llm: &dyn LlmGenerator, task: &SimplificationTask) -> Result<String, LlmError> {
    let prompt = build_prompt(spec, task)?;
    clean_response(&llm.complete(&prompt)?)
}
