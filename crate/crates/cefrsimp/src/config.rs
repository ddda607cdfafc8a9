//! TOML run configuration.
//!
//! Top-level keys are the engine hyperparameters (see [`PipelineConfig`]). Backend
//! locations go in an `[endpoints]` table and prompt overrides in `[prompt]`:
//!
//! ```toml
//! similarity_floor = 0.88
//! mode = "mrs-joint"
//!
//! [endpoints]
//! llm_base_url = "http://localhost:8000/v1"
//! llm_model = "gpt-4o-mini"
//! classifier_urls = ["http://localhost:9001/predict", "http://localhost:9002/predict", "http://localhost:9003/predict"]
//! embedder_url = "http://localhost:9100/embed"
//!
//! [prompt.descriptions]
//! B1 = "can understand the main points of clear standard input on familiar matters"
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use cefrsimp_core::prompt::PromptSpec;
use cefrsimp_core::{level_from_label, Lexicon, PipelineConfig};
use serde::Deserialize;

pub const DEFAULT_API_KEY_VAR: &str = "CEFRSIMP_API_KEY";

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Endpoints {
    /// Chat-completions base URL; `/chat/completions` is appended.
    pub llm_base_url: String,
    pub llm_model: String,
    /// Environment variable holding the bearer credential.
    pub api_key_env: String,
    /// Three classifier endpoints, one per head.
    pub classifier_urls: Vec<String>,
    pub embedder_url: Option<String>,
    /// Timeout for classifier and embedder requests.
    pub scorer_timeout_s: u64,
    /// Concurrent in-flight requests allowed per backend.
    pub max_in_flight: usize,
}

impl Default for Endpoints {
    fn default() -> Self {
        Self {
            llm_base_url: "https://api.openai.com/v1".into(),
            llm_model: "gpt-4o-mini".into(),
            api_key_env: DEFAULT_API_KEY_VAR.into(),
            classifier_urls: Vec::new(),
            embedder_url: None,
            scorer_timeout_s: 30,
            max_in_flight: 4,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PromptOverrides {
    pub template: Option<String>,
    /// Level label to descriptor.
    pub descriptions: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct AppConfig {
    pub pipeline: PipelineConfig,
    pub endpoints: Endpoints,
    pub prompt: PromptOverrides,
    /// Optional tab-separated lexicon replacing the built-in one.
    pub lexicon_path: Option<String>,
}

impl AppConfig {
    pub fn load(path: impl AsRef<Path>) -> anyhow::Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("config {}", path.display()))
    }

    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let mut table: toml::Table = text.parse()?;
        let endpoints = match table.remove("endpoints") {
            Some(value) => value.try_into()?,
            None => Endpoints::default(),
        };
        let prompt = match table.remove("prompt") {
            Some(value) => value.try_into()?,
            None => PromptOverrides::default(),
        };
        let lexicon_path = match table.remove("lexicon_path") {
            Some(toml::Value::String(s)) => Some(s),
            Some(other) => bail!("lexicon_path must be a string, got {other}"),
            None => None,
        };
        let pipeline: PipelineConfig = toml::Value::Table(table).try_into()?;
        pipeline.validate()?;
        if endpoints.max_in_flight == 0 {
            bail!("endpoints.max_in_flight must be at least 1");
        }
        Ok(Self {
            pipeline,
            endpoints,
            prompt,
            lexicon_path,
        })
    }

    pub fn prompt_spec(&self) -> anyhow::Result<PromptSpec> {
        let mut spec = match &self.prompt.template {
            Some(template) => {
                let descriptions = PromptSpec::default();
                PromptSpec::new(template.clone(), BTreeMap::new())
                    .map(|s| inherit_descriptions(s, &descriptions))
                    .map_err(|e| anyhow!("{e}"))?
            }
            None => PromptSpec::default(),
        };
        for (label, description) in &self.prompt.descriptions {
            let level = level_from_label(label).map_err(|e| anyhow!("prompt.descriptions: {e}"))?;
            spec = spec.with_description(level, description.clone());
        }
        Ok(spec)
    }

    pub fn lexicon(&self) -> anyhow::Result<Lexicon> {
        match &self.lexicon_path {
            Some(path) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading lexicon {path}"))?;
                Lexicon::parse_tsv(&text).with_context(|| format!("lexicon {path}"))
            }
            None => Ok(Lexicon::default()),
        }
    }
}

fn inherit_descriptions(spec: PromptSpec, from: &PromptSpec) -> PromptSpec {
    cefrsimp_core::CefrLevel::ALL
        .iter()
        .filter_map(|level| from.description(*level).map(|d| (*level, d.to_string())))
        .fold(spec, |spec, (level, d)| spec.with_description(level, d))
}
