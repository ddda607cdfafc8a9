//! Level-accuracy metrics: RMSE, confusion matrix, per-gap breakdown, retry curves.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::InputError;
use crate::level::{cefr_gap, CefrLevel};
use crate::orchestrator::RunReport;

/// One scored output, with levels from the same ensemble used by the pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalRecord {
    pub text_id: String,
    pub target: CefrLevel,
    /// Predicted level of the simplified output.
    pub predicted: CefrLevel,
    /// Predicted level of the original text.
    pub source_level: CefrLevel,
    pub sim_orig: f64,
    pub sim_ref: Option<f64>,
}

/// Root mean squared ordinal distance between predicted and target levels.
pub fn rmse(records: &[EvalRecord]) -> Result<f64, InputError> {
    if records.is_empty() {
        return Err(InputError::Empty("rmse"));
    }
    Ok(rmse_of(records.iter()))
}

fn rmse_of<'a>(records: impl Iterator<Item = &'a EvalRecord>) -> f64 {
    let (sum, n) = records.fold((0.0, 0usize), |(sum, n), r| {
        let d = f64::from(cefr_gap(r.predicted, r.target));
        (sum + d * d, n + 1)
    });
    if n == 0 {
        0.0
    } else {
        libm::sqrt(sum / n as f64)
    }
}

/// Counts indexed `[target][predicted]` by ordinal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConfusionMatrix {
    pub counts: [[usize; 6]; 6],
}

impl ConfusionMatrix {
    pub fn get(&self, target: CefrLevel, predicted: CefrLevel) -> usize {
        self.counts[target.ordinal() as usize][predicted.ordinal() as usize]
    }

    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }

    pub fn row_total(&self, target: CefrLevel) -> usize {
        self.counts[target.ordinal() as usize].iter().sum()
    }
}

pub fn confusion_matrix(records: &[EvalRecord]) -> ConfusionMatrix {
    let mut m = ConfusionMatrix::default();
    for r in records {
        m.counts[r.target.ordinal() as usize][r.predicted.ordinal() as usize] += 1;
    }
    m
}

/// Accuracy and similarity summary for records sharing one CEFR gap.
#[derive(Debug, Clone, PartialEq)]
pub struct GapRow {
    pub gap: i32,
    pub n: usize,
    pub rmse: f64,
    pub mean_sim_orig: f64,
    /// Mean over records that carry a reference similarity; `None` if none do.
    pub mean_sim_ref: Option<f64>,
}

/// Groups records by `cefr_gap(source_level, target)`, ascending by gap.
pub fn gap_analysis(records: &[EvalRecord]) -> Vec<GapRow> {
    let mut groups: BTreeMap<i32, Vec<&EvalRecord>> = BTreeMap::new();
    for r in records {
        groups.entry(cefr_gap(r.source_level, r.target)).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|(gap, rs)| {
            let n = rs.len();
            let mean_sim_orig = rs.iter().map(|r| r.sim_orig).sum::<f64>() / n as f64;
            let refs: Vec<f64> = rs.iter().filter_map(|r| r.sim_ref).collect();
            GapRow {
                gap,
                n,
                rmse: rmse_of(rs.iter().copied()),
                mean_sim_orig,
                mean_sim_ref: (!refs.is_empty()).then(|| refs.iter().sum::<f64>() / refs.len() as f64),
            }
        })
        .collect()
}

/// `(retry, cumulative hits)` points with 1-based retry numbers.
pub fn retry_curve(report: &RunReport) -> Vec<(usize, usize)> {
    report
        .per_retry_hits
        .iter()
        .enumerate()
        .map(|(i, hits)| (i + 1, *hits))
        .collect()
}
