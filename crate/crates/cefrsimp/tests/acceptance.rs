//! Acceptance checks, one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use cefrsimp::exec::RayonExecutor;
use cefrsimp::fixture::RecordingLlm;
use cefrsimp::io::{parse_outputs, render_outputs, SimplifiedOutput};
use cefrsimp::report::eval_records;
use cefrsimp_core::eval::{confusion_matrix, gap_analysis, rmse, EvalRecord};
use cefrsimp_core::orchestrator::{resolve_single, respects_budget, run_pipeline, PipelineRun, RunReport, Scorers};
use cefrsimp_core::output::{completeness_check, sort_outputs};
use cefrsimp_core::prompt::{build_prompt, LlmGenerator, PromptSpec};
use cefrsimp_core::rules::{compose_candidates, sentence_split, split_limit, step_limit, strip_relative_clauses};
use cefrsimp_core::text::word_count;
use cefrsimp_core::{
    resolve_vote, CefrLevel, HashedBagOfWords, HeadVote, LevelEnsemble, Lexicon, Mode, PipelineConfig, Provenance,
    SimplificationTask,
};
use common::corpus::synthetic_tasks;
use common::fixtures::{write_plan, write_tasks, CONFUSION_PLAN, GAP_PLAN};
use common::mock_llm::ParaphraseLlm;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Kit {
    ensemble: LevelEnsemble,
    embedder: HashedBagOfWords,
    lexicon: Lexicon,
    prompt: PromptSpec,
    executor: RayonExecutor,
}

impl Kit {
    fn new() -> Self {
        Self {
            ensemble: LevelEnsemble::builtin(),
            embedder: HashedBagOfWords::default(),
            lexicon: Lexicon::default(),
            prompt: PromptSpec::default(),
            executor: RayonExecutor::new(0).unwrap(),
        }
    }

    fn scorers<'a>(&'a self, llm: Option<&'a dyn LlmGenerator>) -> Scorers<'a> {
        Scorers {
            predictor: &self.ensemble,
            embedder: &self.embedder,
            lexicon: &self.lexicon,
            prompt: &self.prompt,
            llm,
        }
    }

    fn run(&self, tasks: &[SimplificationTask], mode: Mode, llm: Option<&dyn LlmGenerator>) -> PipelineRun {
        let cfg = PipelineConfig {
            mode,
            ..PipelineConfig::default()
        };
        run_pipeline(tasks, &cfg, &self.scorers(llm), &self.executor).unwrap()
    }
}

/// The three-head cascade written out step by step, independent of the library code.
fn oracle(votes: &[(usize, f64); 3]) -> usize {
    let count = |l: usize| votes.iter().filter(|v| v.0 == l).count();
    // 1. most votes
    let best_count = (0..6).map(count).max().unwrap();
    let mut tied: Vec<usize> = (0..6).filter(|l| count(*l) == best_count).collect();
    if tied.len() == 1 {
        return tied[0];
    }
    // 2. largest confidence sum per label
    let sum = |l: usize| votes.iter().filter(|v| v.0 == l).map(|v| v.1).sum::<f64>();
    let best_sum = tied.iter().map(|l| sum(*l)).fold(f64::MIN, f64::max);
    tied.retain(|l| sum(*l) == best_sum);
    if tied.len() == 1 {
        return tied[0];
    }
    // 3. highest single confidence
    let top = |l: usize| votes.iter().filter(|v| v.0 == l).map(|v| v.1).fold(f64::MIN, f64::max);
    let best_top = tied.iter().map(|l| top(*l)).fold(f64::MIN, f64::max);
    tied.retain(|l| top(*l) == best_top);
    // 4. lowest level
    *tied.iter().min().unwrap()
}

fn vote_oracle() -> Outcome {
    let started = Instant::now();
    let grid = [0.1, 0.3, 0.5, 0.7, 0.9];
    let (mut cases, mut mismatches) = (0usize, 0usize);
    for a in 0..6 {
        for b in 0..6 {
            for c in 0..6 {
                for ca in grid {
                    for cb in grid {
                        for cc in grid {
                            let raw = [(a, ca), (b, cb), (c, cc)];
                            let votes = raw.map(|(l, conf)| HeadVote::new(CefrLevel::ALL[l], conf));
                            cases += 1;
                            if resolve_vote(&votes).ordinal() as usize != oracle(&raw) {
                                mismatches += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    let elapsed = started.elapsed();
    check(mismatches == 0, || format!("{mismatches} mismatches"))?;
    check(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("{cases} cases, 0 mismatches, {elapsed:.2?}"))
}

fn composition_fidelity() -> Outcome {
    for step in 0..=20i64 {
        let lim = 8.max(28 - 2 * step);
        let split = 10.max(lim - 4);
        check(step_limit(step as usize) as i64 == lim, || format!("step {step}: lim {}", step_limit(step as usize)))?;
        check(split_limit(step as usize) as i64 == split, || format!("step {step}: split budget"))?;
    }
    let crafted: [(&str, usize); 10] = [
        ("Dogs bark.", 1),
        ("We utilize tools. They help. It works!", 3),
        ("The bridge, which was old, failed.", 1),
        ("However, it works. It is cheap; it is fast.", 3),
        ("no punctuation at all", 1),
        ("A. B? C! D.", 4),
        ("Although it rained, we walked home. We were wet.", 2),
        ("The committee, who met today, voted. Residents, which was odd, cheered. Nobody left.", 3),
        ("It cost 12,500 metres. That was approximately enough; nobody complained! Really?", 4),
        ("One sentence with a clause, which ends here.", 1),
    ];
    let lex = Lexicon::default();
    for (text, k) in crafted {
        let split = sentence_split(&strip_relative_clauses(text)).len();
        check(split == k, || format!("{text:?}: {split} sentences, expected {k}"))?;
        for step in [0, 5, 12] {
            let n = compose_candidates(text, step, &lex).len();
            check(n == 8 + k, || format!("{text:?} step {step}: {n} candidates, expected {}", 8 + k))?;
        }
    }
    Ok("budgets exact for steps 0..=20, 8+k candidates on 10 inputs".into())
}

fn non_decreasing(hits: &[usize]) -> bool {
    hits.windows(2).all(|w| w[0] <= w[1])
}

fn retry_monotonicity(kit: &Kit, corpus: &[SimplificationTask]) -> Outcome {
    let rule = kit.run(corpus, Mode::MrsRule, None).report;
    let llm = ParaphraseLlm::default();
    let joint = kit.run(corpus, Mode::MrsJoint, Some(&llm)).report;
    check(rule.per_retry_hits.len() == 6 && joint.per_retry_hits.len() == 6, || "expected six retries".into())?;
    check(non_decreasing(&rule.per_retry_hits), || format!("rule curve {:?}", rule.per_retry_hits))?;
    check(non_decreasing(&joint.per_retry_hits), || format!("joint curve {:?}", joint.per_retry_hits))?;
    let dominates = rule.per_retry_hits.iter().zip(&joint.per_retry_hits).all(|(r, j)| j >= r);
    check(dominates, || format!("joint {:?} below rule {:?}", joint.per_retry_hits, rule.per_retry_hits))?;
    check(joint.llm_calls <= corpus.len() && rule.llm_calls == 0, || "LLM call counts".into())?;
    Ok(format!("rule {:?}, joint {:?}", rule.per_retry_hits, joint.per_retry_hits))
}

fn record(target: CefrLevel, predicted: CefrLevel, source: CefrLevel) -> EvalRecord {
    EvalRecord {
        text_id: String::new(),
        target,
        predicted,
        source_level: source,
        sim_orig: 1.0,
        sim_ref: None,
    }
}

fn metric_exactness(kit: &Kit) -> Outcome {
    use CefrLevel::*;
    let records: Vec<EvalRecord> = (0..40).map(|i| record(B1, if i < 8 { B2 } else { B1 }, C1)).collect();
    let value = rmse(&records).unwrap();
    check((value - 0.4472).abs() <= 1e-4, || format!("rmse {value}"))?;

    let dir = tempfile::tempdir().unwrap();
    let (dataset, outputs) = write_plan(dir.path(), CONFUSION_PLAN);
    let tasks = cefrsimp::io::read_tasks(&dataset).unwrap();
    let outs = cefrsimp::io::read_outputs(&outputs).unwrap();
    let evaluated = eval_records(&tasks, &outs, &kit.ensemble, &kit.embedder).map_err(|e| e.to_string())?;
    let m = confusion_matrix(&evaluated);
    let b1 = [m.get(B1, A2), m.get(B1, B1), m.get(B1, B2)];
    check(b1 == [20, 79, 1], || format!("B1 row {b1:?}"))?;
    check(m.total() == 200, || format!("total {}", m.total()))?;

    let dir = tempfile::tempdir().unwrap();
    let (dataset, outputs) = write_plan(dir.path(), GAP_PLAN);
    let tasks = cefrsimp::io::read_tasks(&dataset).unwrap();
    let outs = cefrsimp::io::read_outputs(&outputs).unwrap();
    let evaluated = eval_records(&tasks, &outs, &kit.ensemble, &kit.embedder).map_err(|e| e.to_string())?;
    let sizes: Vec<(i32, usize)> = gap_analysis(&evaluated).iter().map(|g| (g.gap, g.n)).collect();
    check(sizes == [(1, 18), (2, 18), (3, 4)], || format!("gap groups {sizes:?}"))?;
    Ok(format!("rmse {value:.4}, B1 row {b1:?}, gap sizes 18/18/4"))
}

fn output_contract(kit: &Kit, corpus: &[SimplificationTask]) -> Outcome {
    let sorted = sort_outputs(["02-a2", "01-b1", "01-a1"].map(|id| SimplifiedOutput::new(id, "x")).to_vec());
    let ids: Vec<&str> = sorted.iter().map(|o| o.text_id.as_str()).collect();
    check(ids == ["01-a1", "01-b1", "02-a2"], || format!("sorted {ids:?}"))?;

    let llm = ParaphraseLlm::default();
    let wanted: BTreeSet<&str> = corpus.iter().map(|t| t.text_id.as_str()).collect();
    for mode in [Mode::MrsRule, Mode::MrsJoint, Mode::Baseline] {
        let run = kit.run(corpus, mode, Some(&llm));
        let got: Vec<&str> = run.outputs.iter().map(|o| o.text_id.as_str()).collect();
        check(got.iter().copied().collect::<BTreeSet<_>>() == wanted && got.len() == wanted.len(), || {
            format!("{mode}: id sets differ")
        })?;
        check(got.windows(2).all(|w| w[0] < w[1]), || format!("{mode}: not sorted"))?;
        let mut buf = Vec::new();
        render_outputs(&mut buf, &run.outputs).unwrap();
        for line in String::from_utf8(buf.clone()).unwrap().lines() {
            let value: serde_json::Value = serde_json::from_str(line).unwrap();
            let keys: Vec<&String> = value.as_object().unwrap().keys().collect();
            check(keys == ["simplified_sentence", "text_id"], || format!("{mode}: fields {keys:?}"))?;
        }
        check(parse_outputs(buf.as_slice()).unwrap() == run.outputs, || format!("{mode}: round trip"))?;
    }

    let run = kit.run(corpus, Mode::MrsRule, None);
    let mut damaged = run.outputs.clone();
    let mut rng = StdRng::seed_from_u64(5);
    let removed: Vec<String> = (0..5).map(|_| damaged.remove(rng.gen_range(0..damaged.len())).text_id).collect();
    let cfg = PipelineConfig {
        mode: Mode::MrsRule,
        ..PipelineConfig::default()
    };
    let scorers = kit.scorers(None);
    let repaired = completeness_check(corpus, damaged, |t| resolve_single(t, &cfg, &scorers));
    check(repaired.len() == corpus.len(), || format!("{} after repair", repaired.len()))?;
    check(repaired == run.outputs, || "repaired outputs differ from the full run".into())?;
    Ok(format!("3 modes x {} tasks; repaired {removed:?}", corpus.len()))
}

fn simplify_cli(dir: &Path, name: &str, dataset: &Path, fixture: &Path, workers: usize) -> (Vec<u8>, Vec<u8>) {
    let (out, report) = (dir.join(format!("{name}.jsonl")), dir.join(format!("{name}.json")));
    let status = Command::new(env!("CARGO_BIN_EXE_cefrsimp"))
        .args(["simplify", "--mode", "mrs-joint", "--scorers", "builtin", "--workers", &workers.to_string()])
        .arg("--input")
        .arg(dataset)
        .arg("--output")
        .arg(&out)
        .arg("--report")
        .arg(&report)
        .arg("--llm-fixture")
        .arg(fixture)
        .status()
        .unwrap();
    assert!(status.success());
    (fs::read(out).unwrap(), fs::read(report).unwrap())
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let tasks = synthetic_tasks(60, 11);
    let dataset = dir.path().join("tasks.jsonl");
    write_tasks(&dataset, &tasks);
    let fixture = dir.path().join("llm.jsonl");
    let recorder = RecordingLlm::new(ParaphraseLlm::default());
    let spec = PromptSpec::default();
    for t in &tasks {
        recorder.complete(&build_prompt(&spec, t).unwrap()).unwrap();
    }
    recorder.save(&fixture).unwrap();

    let reference = simplify_cli(dir.path(), "w1a", &dataset, &fixture, 1);
    for (name, workers) in [("w1b", 1), ("w2", 2), ("w4a", 4), ("w4b", 4), ("w8", 8)] {
        let run = simplify_cli(dir.path(), name, &dataset, &fixture, workers);
        check(run == reference, || format!("--workers {workers} differs"))?;
    }
    let report: RunReport = serde_json::from_slice(&reference.1).unwrap();
    check(report.llm_calls > 0, || "fixture LLM unused".into())?;
    Ok(format!("6 runs at 1/2/4/8 workers byte-identical, {} LLM calls each", report.llm_calls))
}

fn gate_behavior(kit: &Kit, corpus: &[SimplificationTask]) -> Outcome {
    let report = kit.run(corpus, Mode::MrsRule, None).report;
    let expected = [0.88, 0.85, 0.82, 0.79, 0.76, 0.73];
    check(report.applied_floors == expected, || format!("floors {:?}", report.applied_floors))?;
    check(report.applied_floors.iter().all(|f| *f >= 0.72), || "floor below clamp".into())?;
    Ok(format!("floors {:?}", report.applied_floors))
}

const NOISE: &[&str] = &[
    "the", "data", "which", "however", "approximately", "utilize", "although", "committee", "12,500", "metres",
    "and", "of", "to", "a", "report", "who", "demonstrate", "significant", "when", "subsequently", "residents",
];

fn random_input(rng: &mut StdRng) -> String {
    if rng.gen_bool(0.5) {
        return common::corpus::sentence(rng);
    }
    let n = rng.gen_range(1..60);
    let mut words: Vec<String> = (0..n).map(|_| NOISE.choose(rng).unwrap().to_string()).collect();
    for w in words.iter_mut() {
        match rng.gen_range(0..12) {
            0 => w.push(','),
            1 => w.push('.'),
            2 => w.push(';'),
            _ => {}
        }
    }
    words.join(" ")
}

fn budget_contract(kit: &Kit) -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let tasks: Vec<SimplificationTask> = (0..1000)
        .map(|i| {
            let target = [CefrLevel::A1, CefrLevel::A2, CefrLevel::B1][i % 3];
            SimplificationTask::new(format!("{i:04}"), random_input(&mut rng), target)
        })
        .collect();
    let run = kit.run(&tasks, Mode::MrsRule, None);
    let mut checked = 0;
    for outcome in &run.outcomes {
        if let Provenance::Rule { budget: Some(b), .. } = &outcome.candidate.provenance {
            checked += 1;
            check(respects_budget(&outcome.candidate), || {
                format!("{}: {} words > {b}", outcome.text_id, word_count(&outcome.candidate.text))
            })?;
        }
    }
    for task in &tasks {
        for step in 0..20 {
            for (text, provenance) in compose_candidates(&task.original, step, &kit.lexicon) {
                if let Provenance::Rule { budget: Some(b), .. } = provenance {
                    check(word_count(&text) <= b, || format!("{text:?} exceeds {b}"))?;
                }
            }
        }
    }
    Ok(format!("1000 inputs, {checked} trimmed outputs within budget"))
}

fn main() {
    let started = Instant::now();
    let kit = Kit::new();
    let corpus = synthetic_tasks(200, 42);
    let results: Vec<(u8, &str, Outcome)> = vec![
        (1, "vote oracle equivalence", vote_oracle()),
        (2, "candidate composition fidelity", composition_fidelity()),
        (3, "retry monotonicity", retry_monotonicity(&kit, &corpus)),
        (4, "metric exactness", metric_exactness(&kit)),
        (5, "output contract", output_contract(&kit, &corpus)),
        (6, "determinism", determinism()),
        (7, "gate behavior", gate_behavior(&kit, &corpus)),
        (8, "budget contract", budget_contract(&kit)),
    ];
    let elapsed = started.elapsed();
    let timing: Outcome = if elapsed < Duration::from_secs(60) {
        Ok(format!("acceptance suite ran in {elapsed:.2?}"))
    } else {
        Err(format!("acceptance suite took {elapsed:.2?}"))
    };
    let mut failed = 0;
    for (n, name, outcome) in results.iter().chain(std::iter::once(&(9, "offline runtime", timing))) {
        match outcome {
            Ok(detail) => println!("criterion {n} PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n} FAIL {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
