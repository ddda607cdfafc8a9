//! Scorer selection: built-in, HTTP or fixture backends, chosen per role.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Duration;

use anyhow::{bail, Context};
use cefrsimp_core::orchestrator::Scorers;
use cefrsimp_core::prompt::{LlmGenerator, PromptSpec};
use cefrsimp_core::{Embedder, HashedBagOfWords, LevelEnsemble, LevelHead, Lexicon};

use crate::config::AppConfig;
use crate::fixture::{FixtureLlm, RecordingLlm};
use crate::http::{ChatClient, HttpEmbedder, HttpHead, InFlight};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Builtin,
    Http,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LlmBackend {
    None,
    Http,
    Fixture,
}

/// Parsed `--scorers` value.
///
/// Either one word for every role (`builtin` or `http`) or a comma list such as
/// `predictor=http,embedder=builtin,llm=fixture`. Unless set explicitly, the LLM is a
/// fixture when one is given, HTTP under `http`, and absent otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScorerSelection {
    pub predictor: Backend,
    pub embedder: Backend,
    pub llm: Option<LlmBackend>,
}

impl Default for ScorerSelection {
    fn default() -> Self {
        Self {
            predictor: Backend::Builtin,
            embedder: Backend::Builtin,
            llm: None,
        }
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "builtin" => Ok(Backend::Builtin),
            "http" => Ok(Backend::Http),
            _ => Err(format!("unknown backend {s:?} (expected builtin or http)")),
        }
    }
}

impl FromStr for LlmBackend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "none" | "builtin" => Ok(LlmBackend::None),
            "http" => Ok(LlmBackend::Http),
            "fixture" => Ok(LlmBackend::Fixture),
            _ => Err(format!("unknown LLM backend {s:?} (expected none, http or fixture)")),
        }
    }
}

impl FromStr for ScorerSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "builtin" => return Ok(Self::default()),
            "http" => {
                return Ok(Self {
                    predictor: Backend::Http,
                    embedder: Backend::Http,
                    llm: Some(LlmBackend::Http),
                })
            }
            _ => {}
        }
        let mut selection = Self::default();
        for part in s.split(',').map(str::trim) {
            let (role, value) = part
                .split_once('=')
                .ok_or_else(|| format!("expected builtin, http or role=backend pairs, got {part:?}"))?;
            match role.trim() {
                "predictor" => selection.predictor = value.trim().parse()?,
                "embedder" => selection.embedder = value.trim().parse()?,
                "llm" => selection.llm = Some(value.trim().parse()?),
                other => return Err(format!("unknown scorer role {other:?}")),
            }
        }
        Ok(selection)
    }
}

impl fmt::Display for ScorerSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |b: Backend| if b == Backend::Builtin { "builtin" } else { "http" };
        write!(f, "predictor={},embedder={}", name(self.predictor), name(self.embedder))?;
        match self.llm {
            Some(LlmBackend::None) => f.write_str(",llm=none"),
            Some(LlmBackend::Http) => f.write_str(",llm=http"),
            Some(LlmBackend::Fixture) => f.write_str(",llm=fixture"),
            None => Ok(()),
        }
    }
}

/// Owned scorer backends for one invocation.
pub struct Backends {
    pub ensemble: LevelEnsemble,
    pub embedder: Box<dyn Embedder>,
    pub lexicon: Lexicon,
    pub prompt: PromptSpec,
    llm: Option<Box<dyn LlmGenerator>>,
    recorder: Option<Arc<RecordingLlm<Box<dyn LlmGenerator>>>>,
}

struct Shared<T>(Arc<T>);

impl<T: LlmGenerator> LlmGenerator for Shared<T> {
    fn complete(&self, prompt: &str) -> Result<String, cefrsimp_core::LlmError> {
        self.0.complete(prompt)
    }
}

#[derive(Debug, Clone, Default)]
pub struct LlmOptions {
    pub fixture: Option<PathBuf>,
    pub record: Option<PathBuf>,
}

impl Backends {
    pub fn build(selection: ScorerSelection, config: &AppConfig, llm_opts: &LlmOptions) -> anyhow::Result<Self> {
        let endpoints = &config.endpoints;
        let timeout = Duration::from_secs(endpoints.scorer_timeout_s);
        let ensemble = match selection.predictor {
            Backend::Builtin => LevelEnsemble::builtin(),
            Backend::Http => {
                let urls = &endpoints.classifier_urls;
                if urls.len() != 3 {
                    bail!("http predictor needs exactly three endpoints.classifier_urls, got {}", urls.len());
                }
                let gate = InFlight::new(endpoints.max_in_flight);
                let head = |i: usize| -> Box<dyn LevelHead> {
                    Box::new(HttpHead::new(format!("http-head-{}", i + 1), urls[i].clone(), timeout, gate.clone()))
                };
                LevelEnsemble::new([head(0), head(1), head(2)])
            }
        };
        let embedder: Box<dyn Embedder> = match selection.embedder {
            Backend::Builtin => Box::new(HashedBagOfWords::default()),
            Backend::Http => {
                let url = endpoints
                    .embedder_url
                    .clone()
                    .context("http embedder needs endpoints.embedder_url")?;
                Box::new(HttpEmbedder::new(url, timeout, InFlight::new(endpoints.max_in_flight)))
            }
        };
        let llm_kind = selection.llm.unwrap_or(if llm_opts.fixture.is_some() {
            LlmBackend::Fixture
        } else {
            LlmBackend::None
        });
        let llm: Option<Box<dyn LlmGenerator>> = match llm_kind {
            LlmBackend::None => None,
            LlmBackend::Fixture => {
                let path = llm_opts.fixture.as_ref().context("llm=fixture needs --llm-fixture")?;
                let fixture = FixtureLlm::load(path)?;
                log::info!("loaded {} recorded completions from {}", fixture.len(), path.display());
                Some(Box::new(fixture))
            }
            LlmBackend::Http => {
                let api_key = std::env::var(&endpoints.api_key_env).ok();
                if api_key.is_none() {
                    log::warn!("{} is not set; calling the LLM endpoint without a credential", endpoints.api_key_env);
                }
                Some(Box::new(ChatClient::new(
                    &endpoints.llm_base_url,
                    endpoints.llm_model.clone(),
                    api_key,
                    config.pipeline.llm_timeout_s,
                    InFlight::new(endpoints.max_in_flight),
                )))
            }
        };
        let (llm, recorder) = match (llm, &llm_opts.record) {
            (Some(inner), Some(_)) => {
                let recorder = Arc::new(RecordingLlm::new(inner));
                (Some(Box::new(Shared(recorder.clone())) as Box<dyn LlmGenerator>), Some(recorder))
            }
            (llm, _) => (llm, None),
        };
        Ok(Self {
            ensemble,
            embedder,
            lexicon: config.lexicon()?,
            prompt: config.prompt_spec()?,
            llm,
            recorder,
        })
    }

    pub fn has_llm(&self) -> bool {
        self.llm.is_some()
    }

    pub fn scorers(&self) -> Scorers<'_> {
        Scorers {
            predictor: &self.ensemble,
            embedder: &*self.embedder,
            lexicon: &self.lexicon,
            prompt: &self.prompt,
            llm: self.llm.as_deref().map(|l| l as &dyn LlmGenerator),
        }
    }

    /// Writes recorded completions if recording was requested.
    pub fn save_recording(&self, llm_opts: &LlmOptions) -> anyhow::Result<()> {
        if let (Some(recorder), Some(path)) = (&self.recorder, &llm_opts.record) {
            recorder.save(path)?;
        }
        Ok(())
    }
}
