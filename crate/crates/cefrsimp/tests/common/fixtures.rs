//! Datasets and output files whose evaluation is known in advance.

use std::fs;
use std::path::{Path, PathBuf};

use cefrsimp_core::CefrLevel;
use serde_json::json;

/// One sentence per level, as rated by the built-in ensemble (A1..C2).
pub const LEVEL_TEXTS: [&str; 6] = [
    "I like dogs.",
    "We go to the park on Sunday and play football with our friends.",
    "Students who study regularly usually get better results than those who study only before exams.",
    "The committee decided to postpone the meeting because several members were travelling abroad.",
    "Although the committee attempted to demonstrate the advantages of the proposal, numerous residents remained unconvinced.",
    "Notwithstanding considerable methodological heterogeneity, the consortium, which subsequently commissioned comprehensive longitudinal evaluations, nevertheless substantiated the hypothesised correlations although several stakeholders remained unconvinced.",
];

pub fn text_at(level: CefrLevel) -> &'static str {
    LEVEL_TEXTS[level.ordinal() as usize]
}

/// `(original level, target, predicted output level, count)` groups.
pub type Plan = [(CefrLevel, CefrLevel, CefrLevel, usize)];

pub fn fixture_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// Writes a dataset and a matching output file for `plan`; returns their paths.
pub fn write_plan(dir: &Path, plan: &Plan) -> (PathBuf, PathBuf) {
    let mut dataset = String::new();
    let mut outputs = String::new();
    let mut i = 0;
    for &(source, target, predicted, count) in plan {
        for _ in 0..count {
            i += 1;
            let id = format!("{i:03}-{}", target.label().to_lowercase());
            dataset.push_str(&json!({"text_id": id, "original": text_at(source), "target_cefr": target.label()}).to_string());
            dataset.push('\n');
            outputs.push_str(&json!({"text_id": id, "simplified_sentence": text_at(predicted)}).to_string());
            outputs.push('\n');
        }
    }
    let (d, o) = (dir.join("dataset.jsonl"), dir.join("outputs.jsonl"));
    fs::write(&d, dataset).unwrap();
    fs::write(&o, outputs).unwrap();
    (d, o)
}

use CefrLevel::*;

/// The test-set confusion matrix: A2 targets 66/32/2 and B1 targets 20/79/1 over A2/B1/B2.
pub const CONFUSION_PLAN: &Plan = &[
    (C1, A2, A2, 66),
    (C1, A2, B1, 32),
    (C1, A2, B2, 2),
    (C1, B1, A2, 20),
    (C1, B1, B1, 79),
    (C1, B1, B2, 1),
];

/// Trial-set gap groups of 18/18/4 with squared errors 7, 19 and 10.
pub const GAP_PLAN: &Plan = &[
    (C1, B2, B2, 11),
    (C1, B2, B1, 4),
    (C1, B2, C1, 3),
    (C1, B1, B1, 8),
    (C1, B1, B2, 7),
    (C1, B1, C1, 3),
    (C1, A2, A2, 2),
    (C1, A2, B1, 1),
    (C1, A2, C1, 1),
];

pub fn write_tasks(path: &Path, tasks: &[cefrsimp_core::SimplificationTask]) {
    let mut out = String::new();
    for t in tasks {
        let mut record = json!({"text_id": t.text_id, "original": t.original, "target_cefr": t.target.label()});
        if let Some(r) = &t.reference {
            record["reference"] = json!(r);
        }
        out.push_str(&record.to_string());
        out.push('\n');
    }
    fs::write(path, out).unwrap();
}
