mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use cefrsimp::fixture::RecordingLlm;
use cefrsimp::io::read_tasks;
use cefrsimp_core::prompt::{build_prompt, LlmGenerator, PromptSpec};
use cefrsimp_core::{CefrLevel, LevelEnsemble};
use common::fixtures::{fixture_path, text_at, write_plan, CONFUSION_PLAN, GAP_PLAN, LEVEL_TEXTS};
use common::mock_llm::ParaphraseLlm;

fn cefrsimp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cefrsimp"))
        .args(args)
        .env_remove("RUST_LOG")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = cefrsimp(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Records the mock paraphraser's answers for every task of `dataset`.
fn record_llm_fixture(dataset: &Path, into: &Path) {
    let recorder = RecordingLlm::new(ParaphraseLlm::default());
    let spec = PromptSpec::default();
    for task in read_tasks(dataset).unwrap() {
        recorder.complete(&build_prompt(&spec, &task).unwrap()).unwrap();
    }
    recorder.save(into).unwrap();
}

#[test]
fn simplify_rule_mode_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let (out, report) = (dir.path().join("out.jsonl"), dir.path().join("report.json"));
    let input = fixture_path("three_tasks.jsonl");
    ok(&["simplify", "--input", s(&input), "--output", s(&out), "--mode", "mrs-rule", "--scorers", "builtin", "--report", s(&report)]);
    assert_eq!(fs::read_to_string(&out).unwrap(), fs::read_to_string(fixture_path("golden/three_tasks.mrs-rule.jsonl")).unwrap());
    assert_eq!(
        fs::read_to_string(&report).unwrap(),
        fs::read_to_string(fixture_path("golden/three_tasks.mrs-rule.report.json")).unwrap()
    );
}

#[test]
fn simplify_joint_mode_calls_the_llm_once_per_task() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture_path("three_tasks.jsonl");
    let llm = dir.path().join("llm.jsonl");
    record_llm_fixture(&input, &llm);
    let (out, report, rerecorded) = (dir.path().join("out.jsonl"), dir.path().join("r.json"), dir.path().join("again.jsonl"));
    ok(&[
        "simplify", "--input", s(&input), "--output", s(&out), "--mode", "mrs-joint", "--scorers", "builtin",
        "--llm-fixture", s(&llm), "--llm-record", s(&rerecorded), "--report", s(&report),
    ]);
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(report["llm_calls"], 3);
    assert_eq!(report["mode"], "mrs-joint");
    assert_eq!(fs::read(&rerecorded).unwrap(), fs::read(&llm).unwrap());
}

#[test]
fn simplify_usage_errors() {
    let out = cefrsimp(&["simplify", "--output", "x.jsonl"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--input"));

    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("o.jsonl");
    let input = fixture_path("three_tasks.jsonl");
    let out = cefrsimp(&["simplify", "--input", s(&input), "--output", s(&target), "--mode", "baseline"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!target.exists(), "nothing is written when the invocation is invalid");

    let out = cefrsimp(&["simplify", "--input", "/nonexistent.jsonl", "--output", s(&target)]);
    assert_eq!(out.status.code(), Some(1));
    let out = cefrsimp(&["simplify", "--input", s(&input), "--output", s(&target), "--scorers", "gpu"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simplify_rejects_bad_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    fs::write(&cfg, "similarity_floor = 2.0\n").unwrap();
    let input = fixture_path("three_tasks.jsonl");
    let out = cefrsimp(&["simplify", "--input", s(&input), "--output", s(&dir.path().join("o")), "--config", s(&cfg)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("similarity_floor"));
}

#[test]
fn evaluate_perfect_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let (dataset, outputs) = write_plan(
        dir.path(),
        &[
            (CefrLevel::C2, CefrLevel::A2, CefrLevel::A2, 3),
            (CefrLevel::C1, CefrLevel::B1, CefrLevel::B1, 2),
        ],
    );
    let table = ok(&["evaluate", "--input", s(&dataset), "--outputs", s(&outputs)]);
    assert!(table.contains("rmse\t0.0000\n"), "{table}");
    assert!(table.contains("sim-orig (proxy)\t"));
}

#[test]
fn evaluate_reproduces_confusion_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let (dataset, outputs) = write_plan(dir.path(), CONFUSION_PLAN);
    let summary = dir.path().join("summary.json");
    let table = ok(&["evaluate", "--input", s(&dataset), "--outputs", s(&outputs), "--report", s(&summary)]);
    assert!(table.contains("\nA2\t0\t66\t32\t2\t0\t0\n"), "{table}");
    assert!(table.contains("\nB1\t0\t20\t79\t1\t0\t0\n"), "{table}");
    assert!(table.contains("rmse\t0.5523\n"), "{table}");
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(summary).unwrap()).unwrap();
    assert_eq!(json["n"], 200);
    assert_eq!(json["confusion"][2], serde_json::json!([0, 20, 79, 1, 0, 0]));
}

#[test]
fn gap_analysis_reproduces_group_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let (dataset, outputs) = write_plan(dir.path(), GAP_PLAN);
    let table = ok(&["gap-analysis", "--input", s(&dataset), "--outputs", s(&outputs)]);
    let rows: Vec<Vec<&str>> = table.lines().skip(1).map(|l| l.split('\t').collect()).collect();
    let summary: Vec<(&str, &str, &str)> = rows.iter().map(|r| (r[0], r[1], r[2])).collect();
    assert_eq!(summary, vec![("1", "18", "0.6236"), ("2", "18", "1.0274"), ("3", "4", "1.5811")]);
}

#[test]
fn evaluation_id_mismatch_and_empty_outputs_fail() {
    let dir = tempfile::tempdir().unwrap();
    let (dataset, _) = write_plan(dir.path(), &[(CefrLevel::C1, CefrLevel::B1, CefrLevel::B1, 2)]);
    let other = dir.path().join("other.jsonl");
    fs::write(&other, "{\"text_id\":\"zzz\",\"simplified_sentence\":\"x\"}\n").unwrap();
    let out = cefrsimp(&["evaluate", "--input", s(&dataset), "--outputs", s(&other)]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("001-b1") && err.contains("zzz"), "{err}");

    let empty = dir.path().join("empty.jsonl");
    fs::write(&empty, "").unwrap();
    let out = cefrsimp(&["gap-analysis", "--input", s(&dataset), "--outputs", s(&empty)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn single_gap_dataset_has_one_row() {
    let dir = tempfile::tempdir().unwrap();
    let (dataset, outputs) = write_plan(dir.path(), &[(CefrLevel::C2, CefrLevel::B2, CefrLevel::B2, 5)]);
    let table = ok(&["gap-analysis", "--input", s(&dataset), "--outputs", s(&outputs)]);
    assert_eq!(table.lines().count(), 2);
    assert!(table.lines().nth(1).unwrap().starts_with("2\t5\t0.0000\t"));
}

#[test]
fn predict_level_prints_votes() {
    let text = ok(&["predict-level", "--text", text_at(CefrLevel::B2)]);
    assert_eq!(text, fs::read_to_string(fixture_path("golden/predict_level_b2.tsv")).unwrap());
    let ensemble = LevelEnsemble::builtin();
    for (i, sentence) in LEVEL_TEXTS.iter().enumerate() {
        assert_eq!(ensemble.predict(sentence).unwrap().resolved.ordinal() as usize, i, "{sentence}");
    }

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t.txt");
    fs::write(&file, format!("{}\n", text_at(CefrLevel::B2))).unwrap();
    assert_eq!(ok(&["predict-level", "--text-file", s(&file)]), text);

    assert_eq!(cefrsimp(&["predict-level", "--text", ""]).status.code(), Some(2));
    assert_eq!(cefrsimp(&["predict-level"]).status.code(), Some(2));
}
