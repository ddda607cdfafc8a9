//! Evaluation of an output file against its dataset: tab-separated tables plus a JSON summary.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use cefrsimp_core::eval::{confusion_matrix, gap_analysis, rmse, ConfusionMatrix, EvalRecord, GapRow};
use cefrsimp_core::predictor::LevelPredictor;
use cefrsimp_core::{cosine_sim, CefrLevel, Embedder, ScorerError, SimplificationTask};
use serde::Serialize;
use thiserror::Error;

use crate::io::SimplifiedOutput;

pub const SIM_ORIG_LABEL: &str = "sim-orig (proxy)";
pub const SIM_REF_LABEL: &str = "sim-ref (proxy)";

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("no outputs to evaluate")]
    Empty,
    #[error("output ids do not match the dataset (missing: {missing:?}; unexpected: {unexpected:?})")]
    IdMismatch { missing: Vec<String>, unexpected: Vec<String> },
    #[error(transparent)]
    Scorer(#[from] ScorerError),
}

/// Scores each output with the same predictor and embedder the pipeline uses.
pub fn eval_records(
    tasks: &[SimplificationTask],
    outputs: &[SimplifiedOutput],
    predictor: &dyn LevelPredictor,
    embedder: &dyn Embedder,
) -> Result<Vec<EvalRecord>, EvalError> {
    if outputs.is_empty() {
        return Err(EvalError::Empty);
    }
    let by_id: BTreeMap<&str, &SimplifiedOutput> = outputs.iter().map(|o| (o.text_id.as_str(), o)).collect();
    let task_ids: BTreeSet<&str> = tasks.iter().map(|t| t.text_id.as_str()).collect();
    let missing: Vec<String> = task_ids.iter().filter(|id| !by_id.contains_key(*id)).map(|s| s.to_string()).collect();
    let unexpected: Vec<String> = by_id.keys().filter(|id| !task_ids.contains(*id)).map(|s| s.to_string()).collect();
    if !missing.is_empty() || !unexpected.is_empty() {
        return Err(EvalError::IdMismatch { missing, unexpected });
    }

    let similarity = |a: &str, b: &str| -> Result<f64, ScorerError> {
        let (va, vb) = (embedder.embed(a)?, embedder.embed(b)?);
        cosine_sim(&va, &vb).map_err(|e| ScorerError::new(embedder.name(), e.to_string()))
    };
    let mut records = Vec::with_capacity(tasks.len());
    for task in tasks {
        let output = &by_id[task.text_id.as_str()].simplified_sentence;
        records.push(EvalRecord {
            text_id: task.text_id.clone(),
            target: task.target,
            predicted: predictor.predict_level(output)?,
            source_level: predictor.predict_level(&task.original)?,
            sim_orig: similarity(output, &task.original)?,
            sim_ref: task.reference.as_deref().map(|r| similarity(output, r)).transpose()?,
        });
    }
    Ok(records)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapSummary {
    pub gap: i32,
    pub n: usize,
    pub rmse: f64,
    pub mean_sim_orig_proxy: f64,
    pub mean_sim_ref_proxy: Option<f64>,
}

impl From<&GapRow> for GapSummary {
    fn from(row: &GapRow) -> Self {
        Self {
            gap: row.gap,
            n: row.n,
            rmse: row.rmse,
            mean_sim_orig_proxy: row.mean_sim_orig,
            mean_sim_ref_proxy: row.mean_sim_ref,
        }
    }
}

/// Machine-readable summary of an evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalSummary {
    pub n: usize,
    pub rmse: f64,
    pub mean_sim_orig_proxy: f64,
    pub mean_sim_ref_proxy: Option<f64>,
    /// Rows are target levels, columns predicted levels, both in `levels` order.
    pub levels: Vec<&'static str>,
    pub confusion: [[usize; 6]; 6],
    pub gaps: Vec<GapSummary>,
}

impl EvalSummary {
    pub fn from_records(records: &[EvalRecord]) -> Result<Self, EvalError> {
        let n = records.len();
        let rmse = rmse(records).map_err(|_| EvalError::Empty)?;
        let refs: Vec<f64> = records.iter().filter_map(|r| r.sim_ref).collect();
        Ok(Self {
            n,
            rmse,
            mean_sim_orig_proxy: records.iter().map(|r| r.sim_orig).sum::<f64>() / n as f64,
            mean_sim_ref_proxy: (!refs.is_empty()).then(|| refs.iter().sum::<f64>() / refs.len() as f64),
            levels: CefrLevel::ALL.iter().map(|l| l.label()).collect(),
            confusion: confusion_matrix(records).counts,
            gaps: gap_analysis(records).iter().map(GapSummary::from).collect(),
        })
    }
}

fn opt(value: Option<f64>) -> String {
    value.map_or_else(|| "-".to_string(), |v| format!("{v:.4}"))
}

/// Headline metrics followed by the confusion matrix.
pub fn evaluation_table(summary: &EvalSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "metric\tvalue");
    let _ = writeln!(out, "n\t{}", summary.n);
    let _ = writeln!(out, "rmse\t{:.4}", summary.rmse);
    let _ = writeln!(out, "{SIM_ORIG_LABEL}\t{:.4}", summary.mean_sim_orig_proxy);
    let _ = writeln!(out, "{SIM_REF_LABEL}\t{}", opt(summary.mean_sim_ref_proxy));
    out.push('\n');
    out.push_str(&confusion_table(&ConfusionMatrix {
        counts: summary.confusion,
    }));
    out
}

pub fn confusion_table(matrix: &ConfusionMatrix) -> String {
    let mut out = String::from("target\\predicted");
    for level in CefrLevel::ALL {
        let _ = write!(out, "\t{level}");
    }
    out.push('\n');
    for target in CefrLevel::ALL {
        let _ = write!(out, "{target}");
        for predicted in CefrLevel::ALL {
            let _ = write!(out, "\t{}", matrix.get(target, predicted));
        }
        out.push('\n');
    }
    out
}

pub fn gap_table(rows: &[GapSummary]) -> String {
    let mut out = format!("gap\tn\trmse\t{SIM_ORIG_LABEL}\t{SIM_REF_LABEL}\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{}\t{}\t{:.4}\t{:.4}\t{}",
            row.gap,
            row.n,
            row.rmse,
            row.mean_sim_orig_proxy,
            opt(row.mean_sim_ref_proxy)
        );
    }
    out
}
