use core::fmt;
use core::str::FromStr;

use alloc::format;
use alloc::string::String;

use crate::error::InputError;

/// Which generation strategy a run uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Mode {
    /// One prompted LLM rewrite per task, no rule rounds.
    Baseline,
    /// Rule-based rounds only.
    MrsRule,
    /// Rule-based rounds seeded by one LLM candidate in the first step.
    #[default]
    MrsJoint,
}

impl Mode {
    pub const fn as_str(self) -> &'static str {
        match self {
            Mode::Baseline => "baseline",
            Mode::MrsRule => "mrs-rule",
            Mode::MrsJoint => "mrs-joint",
        }
    }
}

impl FromStr for Mode {
    type Err = InputError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "baseline" => Ok(Mode::Baseline),
            "mrs-rule" => Ok(Mode::MrsRule),
            "mrs-joint" => Ok(Mode::MrsJoint),
            other => Err(InputError::Config(format!(
                "unknown mode {other:?}; expected baseline, mrs-rule or mrs-joint"
            ))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Hyperparameters of the multi-round engine. `Default` gives the reference setting.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct PipelineConfig {
    /// Similarity floor applied in the first retry.
    pub similarity_floor: f64,
    /// Step budget of the first retry.
    pub max_steps: usize,
    pub max_retries: usize,
    /// Floor decrement per retry.
    pub floor_step: f64,
    /// Step-budget increment per retry.
    pub steps_step: usize,
    pub w_hit: f64,
    pub w_ref: f64,
    pub w_orig: f64,
    pub llm_timeout_s: u64,
    pub use_llm: bool,
    /// Lower clamp for relaxed floors, also the meaning gate of nearest-level fill.
    pub sim_floor_min: f64,
    pub mode: Mode,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            similarity_floor: 0.88,
            max_steps: 8,
            max_retries: 6,
            floor_step: 0.03,
            steps_step: 6,
            w_hit: 10.0,
            w_ref: 2.5,
            w_orig: 0.5,
            llm_timeout_s: 60,
            use_llm: true,
            sim_floor_min: 0.72,
            mode: Mode::MrsJoint,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<(), InputError> {
        let bad = |msg: String| Err(InputError::Config(msg));
        if !(self.sim_floor_min > 0.0
            && self.sim_floor_min <= self.similarity_floor
            && self.similarity_floor <= 1.0)
        {
            return bad(format!(
                "need 0 < sim_floor_min ({}) <= similarity_floor ({}) <= 1",
                self.sim_floor_min, self.similarity_floor
            ));
        }
        if self.max_retries == 0 {
            return bad("max_retries must be at least 1".into());
        }
        if self.max_steps == 0 {
            return bad("max_steps must be at least 1".into());
        }
        if !(self.floor_step >= 0.0 && self.floor_step.is_finite()) {
            return bad(format!("floor_step must be a non-negative number, got {}", self.floor_step));
        }
        for (name, w) in [("w_hit", self.w_hit), ("w_ref", self.w_ref), ("w_orig", self.w_orig)] {
            if !(w >= 0.0 && w.is_finite()) {
                return bad(format!("{name} must be a non-negative number, got {w}"));
            }
        }
        if self.mode == Mode::Baseline && !self.use_llm {
            return bad("baseline mode needs use_llm = true".into());
        }
        Ok(())
    }

    /// True when this run should request the first-step LLM candidate.
    pub fn wants_llm_seed(&self) -> bool {
        self.mode == Mode::MrsJoint && self.use_llm
    }
}
