//! The multi-round engine: candidate generation, scoring, similarity gating, relaxing
//! retries over the still-pending tasks, and nearest-level fill.

use core::cmp::Ordering;
use core::fmt;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use log::{debug, warn};

use crate::config::{Mode, PipelineConfig};
use crate::error::{PipelineError, ScorerError};
use crate::level::CefrLevel;
use crate::lexicon::Lexicon;
use crate::output::{completeness_check, fallback_text, sort_outputs, SimplifiedOutput};
use crate::predictor::LevelPredictor;
use crate::prompt::{llm_candidate, LlmGenerator, PromptSpec};
use crate::rules::{base_candidates, split_limit, step_limit};
use crate::similarity::{cosine_sim, Embedder, EmbeddingVector};
use crate::task::{Candidate, Provenance, SimplificationTask};
use crate::text::word_count;

/// Backends and resources a run needs. All of them must tolerate concurrent use.
#[derive(Clone, Copy)]
pub struct Scorers<'a> {
    pub predictor: &'a dyn LevelPredictor,
    pub embedder: &'a dyn Embedder,
    pub lexicon: &'a Lexicon,
    pub prompt: &'a PromptSpec,
    pub llm: Option<&'a dyn LlmGenerator>,
}

/// Runs a closure over every item; implementations may do so in parallel.
pub trait Executor {
    fn for_each<T, F>(&self, items: &mut [T], f: F)
    where
        T: Send,
        F: Fn(&mut T) + Sync + Send;
}

/// Runs items one after another on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn for_each<T, F>(&self, items: &mut [T], f: F)
    where
        T: Send,
        F: Fn(&mut T) + Sync + Send,
    {
        items.iter_mut().for_each(f);
    }
}

/// Similarity floor and step budget of one retry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RetryStage {
    pub floor: f64,
    pub step_budget: usize,
}

/// Per-retry floors (non-increasing, clamped at `sim_floor_min`) and step budgets (non-decreasing).
#[derive(Debug, Clone, PartialEq)]
pub struct RetrySchedule {
    stages: Vec<RetryStage>,
}

impl RetrySchedule {
    pub fn from_config(cfg: &PipelineConfig) -> Self {
        let stages = (0..cfg.max_retries)
            .map(|r| {
                let relaxed = cfg.similarity_floor - r as f64 * cfg.floor_step;
                // Round away float noise so 0.88 - 3 * 0.03 is reported as 0.79.
                let relaxed = libm::round(relaxed * 1e9) / 1e9;
                RetryStage {
                    floor: relaxed.max(cfg.sim_floor_min),
                    step_budget: cfg.max_steps + r * cfg.steps_step,
                }
            })
            .collect();
        Self { stages }
    }

    pub fn stages(&self) -> &[RetryStage] {
        &self.stages
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum TaskStatus {
    Pending,
    Hit,
    NearestFill,
    Fallback,
}

impl TaskStatus {
    pub const fn as_str(self) -> &'static str {
        match self {
            TaskStatus::Pending => "pending",
            TaskStatus::Hit => "hit",
            TaskStatus::NearestFill => "nearest-fill",
            TaskStatus::Fallback => "fallback",
        }
    }
}

impl fmt::Display for TaskStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Scores {
    level: CefrLevel,
    sim_orig: f64,
    sim_ref: Option<f64>,
}

/// Everything the engine tracks for one task across rounds.
#[derive(Debug, Clone)]
pub struct TaskState {
    pub task: SimplificationTask,
    /// Current best text; transforms of the next step start from here.
    pub seed: String,
    seed_level: Option<CefrLevel>,
    /// Trim budget the seed is known to respect, if it came from a trimmed rule.
    seed_budget: Option<usize>,
    /// Every scored candidate so far, first occurrence of each text only.
    pub pool: Vec<Candidate>,
    pub status: TaskStatus,
    /// The emitted candidate once status is no longer pending.
    pub chosen: Option<Candidate>,
    pub source_level: Option<CefrLevel>,
    pub llm_calls: usize,
    llm_attempted: bool,
    llm_text: Option<String>,
    original_embedding: Option<EmbeddingVector>,
    reference_embedding: Option<EmbeddingVector>,
    cache: BTreeMap<String, Scores>,
    pool_texts: BTreeSet<String>,
    predictions_ok: usize,
    predictions_failed: usize,
    last_error: Option<ScorerError>,
}

impl TaskState {
    pub fn new(task: SimplificationTask) -> Self {
        Self {
            seed: task.original.clone(),
            task,
            seed_level: None,
            seed_budget: None,
            pool: Vec::new(),
            status: TaskStatus::Pending,
            chosen: None,
            source_level: None,
            llm_calls: 0,
            llm_attempted: false,
            llm_text: None,
            original_embedding: None,
            reference_embedding: None,
            cache: BTreeMap::new(),
            pool_texts: BTreeSet::new(),
            predictions_ok: 0,
            predictions_failed: 0,
            last_error: None,
        }
    }

    /// Predicts the source level and embeds the original and reference.
    ///
    /// A task whose source already sits at or below its target is settled here as a hit
    /// with the original text.
    pub fn prepare(&mut self, scorers: &Scorers<'_>) {
        match scorers.embedder.embed(&self.task.original) {
            Ok(v) => self.original_embedding = Some(v),
            Err(e) => warn!("{}: cannot embed original: {e}", self.task.text_id),
        }
        if let Some(reference) = &self.task.reference {
            match scorers.embedder.embed(reference) {
                Ok(v) => self.reference_embedding = Some(v),
                Err(e) => warn!("{}: cannot embed reference: {e}", self.task.text_id),
            }
        }
        self.source_level = self.predict(scorers, &self.task.original.clone());
        self.seed_level = self.source_level;
        if let Some(source) = self.source_level {
            if source <= self.task.target {
                self.settle_with_original();
            }
        }
    }

    fn settle_with_original(&mut self) {
        let mut original = Candidate::unscored(self.task.original.clone(), Provenance::Original);
        original.predicted = self.source_level;
        original.sim_orig = 1.0;
        self.status = TaskStatus::Hit;
        self.chosen = Some(original);
    }

    fn predict(&mut self, scorers: &Scorers<'_>, text: &str) -> Option<CefrLevel> {
        match scorers.predictor.predict_level(text) {
            Ok(level) => {
                self.predictions_ok += 1;
                Some(level)
            }
            Err(e) => {
                warn!("{}: level prediction failed: {e}", self.task.text_id);
                self.predictions_failed += 1;
                self.last_error = Some(e);
                None
            }
        }
    }

    fn similarity(&self, reference: Option<&EmbeddingVector>, candidate: &EmbeddingVector) -> Option<f64> {
        reference.and_then(|r| cosine_sim(r, candidate).ok()).map(|s| s.clamp(0.0, 1.0))
    }

    /// Fills predicted level and similarities, or returns `None` if a scorer failed.
    fn score(&mut self, scorers: &Scorers<'_>, cfg: &PipelineConfig, mut candidate: Candidate) -> Option<Candidate> {
        let scores = match self.cache.get(&candidate.text) {
            Some(s) => *s,
            None => {
                let original = self.original_embedding.as_ref()?;
                let embedding = match scorers.embedder.embed(&candidate.text) {
                    Ok(v) => v,
                    Err(e) => {
                        warn!("{}: dropping candidate, embedding failed: {e}", self.task.text_id);
                        return None;
                    }
                };
                let sim_orig = self.similarity(Some(original), &embedding)?;
                let sim_ref = self.similarity(self.reference_embedding.as_ref(), &embedding);
                let level = self.predict(scorers, &candidate.text)?;
                let s = Scores { level, sim_orig, sim_ref };
                self.cache.insert(candidate.text.clone(), s);
                s
            }
        };
        candidate.predicted = Some(scores.level);
        candidate.sim_orig = scores.sim_orig;
        candidate.sim_ref = scores.sim_ref;
        candidate.score = score_candidate(&candidate, &self.task, cfg).ok()?;
        Some(candidate)
    }

    /// The task's LLM candidate. The backend is asked at most once per task; the cleaned
    /// answer is reused in later retries.
    fn llm_text(&mut self, scorers: &Scorers<'_>) -> Option<String> {
        if !self.llm_attempted {
            self.llm_attempted = true;
            if let Some(llm) = scorers.llm {
                self.llm_calls += 1;
                match llm_candidate(scorers.prompt, llm, &self.task) {
                    Ok(text) => self.llm_text = Some(text),
                    Err(e) => warn!("{}: no LLM candidate: {e}", self.task.text_id),
                }
            }
        }
        self.llm_text.clone()
    }

    fn remember(&mut self, candidate: &Candidate) {
        if self.pool_texts.insert(candidate.text.clone()) {
            self.pool.push(candidate.clone());
        }
    }

    fn finish_with(&mut self, candidate: Candidate, status: TaskStatus) {
        self.status = status;
        self.chosen = Some(candidate);
    }

    pub fn emitted_text(&self) -> Option<&str> {
        self.chosen.as_ref().map(|c| c.text.as_str())
    }
}

/// Linear objective: hit bonus for `predicted <= target`, weighted similarities, minus the
/// ordinal distance to the target.
pub fn score_candidate(c: &Candidate, task: &SimplificationTask, cfg: &PipelineConfig) -> Result<f64, PipelineError> {
    let predicted = c.predicted.ok_or_else(|| PipelineError::Unscored(c.text.clone()))?;
    let hit = if predicted <= task.target { cfg.w_hit } else { 0.0 };
    let score = hit + cfg.w_ref * c.sim_ref.unwrap_or(0.0) + cfg.w_orig * c.sim_orig
        - f64::from(predicted.distance(task.target));
    Ok(score)
}

/// In-round ranking: higher score, then closer level, higher similarity, shorter text,
/// then lexicographic text. `Ordering::Less` means `a` ranks first.
pub fn rank_candidates(a: &Candidate, b: &Candidate, target: CefrLevel) -> Ordering {
    let distance = |c: &Candidate| c.distance_to(target).unwrap_or(u8::MAX);
    b.score
        .total_cmp(&a.score)
        .then_with(|| distance(a).cmp(&distance(b)))
        .then_with(|| b.sim_orig.total_cmp(&a.sim_orig))
        .then_with(|| a.text.chars().count().cmp(&b.text.chars().count()))
        .then_with(|| a.text.cmp(&b.text))
}

/// Runs one retry's step loop for a pending task.
pub fn run_round(state: &mut TaskState, retry_idx: usize, stage: RetryStage, cfg: &PipelineConfig, scorers: &Scorers<'_>) {
    if state.status != TaskStatus::Pending {
        return;
    }
    // Every retry starts again from the original under its own floor and budget.
    state.seed = state.task.original.clone();
    state.seed_level = state.source_level;
    state.seed_budget = None;
    let target = state.task.target;
    if state.seed_level == Some(target) {
        let mut seed = Candidate::unscored(state.seed.clone(), Provenance::Original);
        seed.predicted = Some(target);
        if let Some(scored) = state.score(scorers, cfg, seed.clone()) {
            seed = scored;
        }
        state.finish_with(seed, TaskStatus::Hit);
        return;
    }
    let mut previous_key: Option<(String, usize, usize)> = None;
    for step_idx in 0..stage.step_budget {
        let key = (state.seed.clone(), step_limit(step_idx), split_limit(step_idx));
        if previous_key.as_ref() == Some(&key) {
            // Same seed and budgets as the last step: nothing new can come out.
            break;
        }
        previous_key = Some(key);

        let mut generated = base_candidates(&state.seed, step_idx, scorers.lexicon);
        for c in &mut generated {
            if let Provenance::Rule { budget: budget @ None, .. } = &mut c.provenance {
                *budget = state.seed_budget;
            }
        }
        if step_idx == 0 && cfg.wants_llm_seed() {
            if let Some(text) = state.llm_text(scorers) {
                if text != state.seed && !generated.iter().any(|c| c.text == text) {
                    generated.push(Candidate::unscored(text, Provenance::Llm));
                }
            }
        }

        let mut best: Option<Candidate> = None;
        for candidate in generated {
            let Some(scored) = state.score(scorers, cfg, candidate) else {
                continue;
            };
            state.remember(&scored);
            if scored.sim_orig < stage.floor {
                continue;
            }
            if best.as_ref().is_none_or(|b| rank_candidates(&scored, b, target) == Ordering::Less) {
                best = Some(scored);
            }
        }
        let Some(best) = best else {
            continue;
        };
        debug!(
            "{} retry {retry_idx} step {step_idx}: {:?} via {} (score {:.3})",
            state.task.text_id, best.predicted, best.provenance, best.score
        );
        state.seed = best.text.clone();
        state.seed_level = best.predicted;
        state.seed_budget = match &best.provenance {
            Provenance::Rule { budget, .. } => *budget,
            _ => None,
        };
        if best.predicted == Some(target) {
            state.finish_with(best, TaskStatus::Hit);
            return;
        }
    }
}

/// Closest pooled level among candidates that keep meaning (`sim_orig >= sim_floor_min`);
/// ties go to higher similarity, lower level, then shorter text. An empty pool yields the
/// trimmed original.
pub fn nearest_level_fill(state: &TaskState, cfg: &PipelineConfig) -> Candidate {
    let target = state.task.target;
    state
        .pool
        .iter()
        .filter(|c| c.predicted.is_some() && c.sim_orig >= cfg.sim_floor_min)
        .min_by(|a, b| {
            a.distance_to(target)
                .cmp(&b.distance_to(target))
                .then_with(|| b.sim_orig.total_cmp(&a.sim_orig))
                .then_with(|| a.predicted.cmp(&b.predicted))
                .then_with(|| a.text.chars().count().cmp(&b.text.chars().count()))
                .then_with(|| a.text.cmp(&b.text))
        })
        .cloned()
        .unwrap_or_else(|| Candidate::unscored(fallback_text(&state.task.original), Provenance::Original))
}

fn resolve_pending(state: &mut TaskState, cfg: &PipelineConfig) {
    if state.status != TaskStatus::Pending {
        return;
    }
    let candidate = nearest_level_fill(state, cfg);
    let status = if candidate.provenance == Provenance::Original {
        TaskStatus::Fallback
    } else {
        TaskStatus::NearestFill
    };
    state.finish_with(candidate, status);
}

fn run_baseline_task(state: &mut TaskState, cfg: &PipelineConfig, scorers: &Scorers<'_>) {
    let Some(llm) = scorers.llm else {
        let fallback = Candidate::unscored(fallback_text(&state.task.original), Provenance::Original);
        state.finish_with(fallback, TaskStatus::Fallback);
        return;
    };
    state.llm_calls += 1;
    match llm_candidate(scorers.prompt, llm, &state.task) {
        Ok(text) => {
            let candidate = Candidate::unscored(text, Provenance::Llm);
            let scored = state.score(scorers, cfg, candidate.clone());
            let status = match scored.as_ref().and_then(|c| c.predicted) {
                Some(level) if level == state.task.target => TaskStatus::Hit,
                _ => TaskStatus::NearestFill,
            };
            state.finish_with(scored.unwrap_or(candidate), status);
        }
        Err(e) => {
            warn!("{}: baseline LLM call failed: {e}", state.task.text_id);
            let fallback = Candidate::unscored(fallback_text(&state.task.original), Provenance::Original);
            state.finish_with(fallback, TaskStatus::Fallback);
        }
    }
}

/// Summary counters of a run.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RunReport {
    pub mode: Mode,
    /// Cumulative hit count after each retry.
    pub per_retry_hits: Vec<usize>,
    /// Similarity floor applied in each retry.
    pub applied_floors: Vec<f64>,
    /// Step budget applied in each retry.
    pub applied_step_budgets: Vec<usize>,
    pub filled_by_nearest: usize,
    pub fallbacks: usize,
    pub llm_calls: usize,
    pub per_task_status: BTreeMap<String, TaskStatus>,
}

impl RunReport {
    pub fn hits(&self) -> usize {
        self.per_task_status.values().filter(|s| **s == TaskStatus::Hit).count()
    }
}

/// Final decision for one task.
#[derive(Debug, Clone, PartialEq)]
pub struct TaskOutcome {
    pub text_id: String,
    pub status: TaskStatus,
    pub candidate: Candidate,
    pub source_level: Option<CefrLevel>,
}

/// Outputs sorted by id, the report, and per-task outcomes in the same order.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineRun {
    pub outputs: Vec<SimplifiedOutput>,
    pub report: RunReport,
    pub outcomes: Vec<TaskOutcome>,
}

fn check_unique_ids(tasks: &[SimplificationTask]) -> Result<(), PipelineError> {
    let mut seen = BTreeSet::new();
    for task in tasks {
        if !seen.insert(task.text_id.as_str()) {
            return Err(PipelineError::DuplicateId(task.text_id.clone()));
        }
    }
    Ok(())
}

/// Runs the whole engine over `tasks` in `cfg.mode`.
///
/// Retries only touch tasks that are still pending; whatever is left afterwards is
/// resolved by [`nearest_level_fill`]. Results do not depend on the executor's
/// parallelism.
pub fn run_pipeline<X: Executor>(
    tasks: &[SimplificationTask],
    cfg: &PipelineConfig,
    scorers: &Scorers<'_>,
    executor: &X,
) -> Result<PipelineRun, PipelineError> {
    cfg.validate()?;
    check_unique_ids(tasks)?;
    let mut states: Vec<TaskState> = tasks.iter().cloned().map(TaskState::new).collect();
    let mut report = RunReport {
        mode: cfg.mode,
        ..RunReport::default()
    };

    if cfg.mode == Mode::Baseline {
        executor.for_each(&mut states, |s| run_baseline_task(s, cfg, scorers));
    } else {
        executor.for_each(&mut states, |s| s.prepare(scorers));
        let ok: usize = states.iter().map(|s| s.predictions_ok).sum();
        if ok == 0 {
            if let Some(err) = states.iter().find_map(|s| s.last_error.clone()) {
                return Err(PipelineError::ScorerUnavailable(err));
            }
        }
        for (retry_idx, stage) in RetrySchedule::from_config(cfg).stages().iter().enumerate() {
            executor.for_each(&mut states, |s| run_round(s, retry_idx, *stage, cfg, scorers));
            report.applied_floors.push(stage.floor);
            report.applied_step_budgets.push(stage.step_budget);
            report
                .per_retry_hits
                .push(states.iter().filter(|s| s.status == TaskStatus::Hit).count());
        }
        executor.for_each(&mut states, |s| resolve_pending(s, cfg));
    }

    let mut outcomes: Vec<TaskOutcome> = states
        .into_iter()
        .map(|s| {
            let candidate = s
                .chosen
                .unwrap_or_else(|| Candidate::unscored(fallback_text(&s.task.original), Provenance::Original));
            report.llm_calls += s.llm_calls;
            match s.status {
                TaskStatus::NearestFill => report.filled_by_nearest += 1,
                TaskStatus::Fallback => report.fallbacks += 1,
                _ => {}
            }
            report.per_task_status.insert(s.task.text_id.clone(), s.status);
            TaskOutcome {
                text_id: s.task.text_id,
                status: s.status,
                candidate,
                source_level: s.source_level,
            }
        })
        .collect();
    outcomes.sort_by(|a, b| a.text_id.cmp(&b.text_id));

    let outputs = sort_outputs(
        outcomes
            .iter()
            .map(|o| SimplifiedOutput::new(o.text_id.clone(), o.candidate.text.clone()))
            .collect(),
    );
    let outputs = completeness_check(tasks, outputs, |t| Ok::<_, ()>(fallback_text(&t.original)));
    Ok(PipelineRun {
        outputs,
        report,
        outcomes,
    })
}

/// Runs the engine for a single task; used to repair outputs with missing ids.
pub fn resolve_single(task: &SimplificationTask, cfg: &PipelineConfig, scorers: &Scorers<'_>) -> Result<String, PipelineError> {
    let run = run_pipeline(core::slice::from_ref(task), cfg, scorers, &Sequential)?;
    let output = run.outputs.into_iter().next().expect("completeness check emits every task");
    Ok(output.simplified_sentence)
}

/// Word count check used by budget audits: true if the candidate respects its recorded trim budget.
pub fn respects_budget(candidate: &Candidate) -> bool {
    match candidate.provenance {
        Provenance::Rule { budget: Some(b), .. } => word_count(&candidate.text) <= b,
        _ => true,
    }
}
