//! HTTP-backed classifier heads, embedder and chat-completions client.

use std::error::Error as _;
use std::sync::{Arc, Condvar, Mutex};
use std::time::Duration;

use cefrsimp_core::prompt::LlmGenerator;
use cefrsimp_core::{level_from_label, Embedder, EmbeddingVector, HeadVote, LevelHead, LlmError, ScorerError};
use serde::Deserialize;
use serde_json::json;

/// Counting gate bounding concurrent requests to one backend.
#[derive(Debug)]
pub struct InFlight {
    cap: usize,
    active: Mutex<usize>,
    freed: Condvar,
}

pub struct Permit<'a>(&'a InFlight);

impl InFlight {
    pub fn new(cap: usize) -> Arc<Self> {
        Arc::new(Self {
            cap: cap.max(1),
            active: Mutex::new(0),
            freed: Condvar::new(),
        })
    }

    pub fn acquire(&self) -> Permit<'_> {
        let mut active = self.active.lock().unwrap_or_else(|e| e.into_inner());
        while *active >= self.cap {
            active = self.freed.wait(active).unwrap_or_else(|e| e.into_inner());
        }
        *active += 1;
        Permit(self)
    }
}

impl Drop for Permit<'_> {
    fn drop(&mut self) {
        let mut active = self.0.active.lock().unwrap_or_else(|e| e.into_inner());
        *active -= 1;
        self.0.freed.notify_one();
    }
}

fn agent(timeout: Duration) -> ureq::Agent {
    ureq::AgentBuilder::new().timeout(timeout).build()
}

fn is_timeout(err: &(dyn std::error::Error + 'static)) -> bool {
    let mut current = Some(err);
    while let Some(e) = current {
        if let Some(io) = e.downcast_ref::<std::io::Error>() {
            if matches!(io.kind(), std::io::ErrorKind::TimedOut | std::io::ErrorKind::WouldBlock) {
                return true;
            }
        }
        current = e.source();
    }
    false
}

fn describe(err: &ureq::Error) -> String {
    match err {
        ureq::Error::Status(code, response) => format!("HTTP {code} from {}", response.get_url()),
        ureq::Error::Transport(t) => t.to_string(),
    }
}

fn post_json<T: serde::de::DeserializeOwned>(
    agent: &ureq::Agent,
    url: &str,
    body: serde_json::Value,
    bearer: Option<&str>,
) -> Result<T, RequestError> {
    let mut request = agent.post(url);
    if let Some(token) = bearer {
        request = request.set("Authorization", &format!("Bearer {token}"));
    }
    let response = request.send_json(body).map_err(|e| match &e {
        ureq::Error::Transport(t) if t.source().is_some_and(is_timeout) => RequestError::Timeout,
        ureq::Error::Transport(_) => RequestError::Transport(describe(&e)),
        ureq::Error::Status(..) => RequestError::Status(describe(&e)),
    })?;
    response.into_json::<T>().map_err(|e| {
        if is_timeout(&e) {
            RequestError::Timeout
        } else {
            RequestError::Decode(e.to_string())
        }
    })
}

#[derive(Debug)]
enum RequestError {
    Timeout,
    Transport(String),
    Status(String),
    Decode(String),
}

impl std::fmt::Display for RequestError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RequestError::Timeout => f.write_str("request timed out"),
            RequestError::Transport(m) | RequestError::Status(m) => f.write_str(m),
            RequestError::Decode(m) => write!(f, "malformed response: {m}"),
        }
    }
}

#[derive(Deserialize)]
struct LabelResponse {
    label: String,
    confidence: f64,
}

/// A classifier head behind `POST {"text"}` returning `{"label","confidence"}`.
pub struct HttpHead {
    name: String,
    url: String,
    agent: ureq::Agent,
    gate: Arc<InFlight>,
}

impl HttpHead {
    pub fn new(name: impl Into<String>, url: impl Into<String>, timeout: Duration, gate: Arc<InFlight>) -> Self {
        Self {
            name: name.into(),
            url: url.into(),
            agent: agent(timeout),
            gate,
        }
    }
}

impl LevelHead for HttpHead {
    fn name(&self) -> &str {
        &self.name
    }

    fn predict(&self, text: &str) -> Result<HeadVote, ScorerError> {
        let _permit = self.gate.acquire();
        let response: LabelResponse = post_json(&self.agent, &self.url, json!({ "text": text }), None)
            .map_err(|e| ScorerError::new(&self.name, e.to_string()))?;
        let level = level_from_label(&response.label).map_err(|e| ScorerError::new(&self.name, e.to_string()))?;
        if !(0.0..=1.0).contains(&response.confidence) {
            log::warn!("{}: confidence {} outside [0, 1], clamping", self.name, response.confidence);
        }
        Ok(HeadVote::new(level, response.confidence))
    }
}

#[derive(Deserialize)]
struct VectorResponse {
    vectors: Vec<Vec<f64>>,
}

/// An embedding service behind `POST {"texts":[..]}` returning `{"vectors":[[..]]}`.
pub struct HttpEmbedder {
    url: String,
    agent: ureq::Agent,
    gate: Arc<InFlight>,
}

impl HttpEmbedder {
    pub fn new(url: impl Into<String>, timeout: Duration, gate: Arc<InFlight>) -> Self {
        Self {
            url: url.into(),
            agent: agent(timeout),
            gate,
        }
    }

    pub fn embed_batch(&self, texts: &[&str]) -> Result<Vec<EmbeddingVector>, ScorerError> {
        let err = |m: String| ScorerError::new("http-embedder", m);
        let _permit = self.gate.acquire();
        let response: VectorResponse =
            post_json(&self.agent, &self.url, json!({ "texts": texts }), None).map_err(|e| err(e.to_string()))?;
        if response.vectors.len() != texts.len() {
            return Err(err(format!("expected {} vectors, got {}", texts.len(), response.vectors.len())));
        }
        if let Some(first) = response.vectors.first() {
            if response.vectors.iter().any(|v| v.len() != first.len()) {
                return Err(err("vectors have inconsistent dimensions".into()));
            }
        }
        Ok(response.vectors.into_iter().map(EmbeddingVector).collect())
    }
}

impl Embedder for HttpEmbedder {
    fn name(&self) -> &str {
        "http-embedder"
    }

    fn embed(&self, text: &str) -> Result<EmbeddingVector, ScorerError> {
        Ok(self.embed_batch(&[text])?.remove(0))
    }
}

#[derive(Deserialize)]
struct ChatResponse {
    choices: Vec<ChatChoice>,
}

#[derive(Deserialize)]
struct ChatChoice {
    message: ChatMessage,
}

#[derive(Deserialize)]
struct ChatMessage {
    #[serde(default)]
    content: Option<String>,
}

/// Chat-completions client: one user message, temperature 0, first choice consumed.
///
/// A connection-level failure is retried once; timeouts and HTTP status errors are not.
pub struct ChatClient {
    url: String,
    model: String,
    api_key: Option<String>,
    timeout_s: u64,
    agent: ureq::Agent,
    gate: Arc<InFlight>,
}

impl ChatClient {
    pub fn new(base_url: &str, model: impl Into<String>, api_key: Option<String>, timeout_s: u64, gate: Arc<InFlight>) -> Self {
        Self {
            url: format!("{}/chat/completions", base_url.trim_end_matches('/')),
            model: model.into(),
            api_key,
            timeout_s,
            agent: agent(Duration::from_secs(timeout_s)),
            gate,
        }
    }

    fn request(&self, prompt: &str) -> Result<ChatResponse, RequestError> {
        let body = json!({
            "model": self.model,
            "temperature": 0,
            "messages": [{ "role": "user", "content": prompt }],
        });
        post_json(&self.agent, &self.url, body, self.api_key.as_deref())
    }
}

impl LlmGenerator for ChatClient {
    fn complete(&self, prompt: &str) -> Result<String, LlmError> {
        let _permit = self.gate.acquire();
        let response = match self.request(prompt) {
            Err(RequestError::Transport(first)) => {
                log::debug!("LLM transport error, retrying once: {first}");
                self.request(prompt)
            }
            other => other,
        };
        match response {
            Ok(r) => r
                .choices
                .into_iter()
                .next()
                .and_then(|c| c.message.content)
                .filter(|c| !c.trim().is_empty())
                .ok_or(LlmError::EmptyCompletion),
            Err(RequestError::Timeout) => Err(LlmError::Timeout(self.timeout_s)),
            Err(e) => Err(LlmError::Transport(e.to_string())),
        }
    }
}
