//! Seeded synthetic corpus of academic-register sentences with A2/B1 targets.

use cefrsimp_core::{CefrLevel, SimplificationTask};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

const SUBJECTS: &[&str] = &[
    "The committee", "The government", "Researchers at the university", "The local council",
    "Several international organisations", "The engineering team", "Many residents", "The company",
    "Scientists", "The regional hospital", "The new administration", "Our department",
];
const VERBS: &[&str] = &[
    "will utilize", "attempted to demonstrate", "decided to implement", "managed to obtain",
    "intends to facilitate", "has begun to evaluate", "was required to terminate", "hopes to accelerate",
    "continues to maintain", "plans to allocate", "refused to acquire", "needs to ascertain",
];
const OBJECTS: &[&str] = &[
    "approximately 12,500 metres of cable", "a comprehensive methodology for the project",
    "sufficient resources for numerous communities", "the preliminary requirements of the programme",
    "substantial funding for 3,000 families", "an innovative system for transportation",
    "the fundamental principles of the agreement", "considerable assistance for elderly residents",
    "the optimal duration of the treatment", "adequate accommodation for 1,200 students",
];
const RELATIVES: &[&str] = &[
    ", which was announced last year,", ", which many experts consider controversial,",
    ", who had previously worked abroad,", ", which required considerable negotiation,",
    ", when the economic situation deteriorated,", ", which was originally proposed in 2019,",
];
const TAILS: &[&str] = &[
    "despite considerable opposition from several influential groups",
    "in order to alleviate the consequences of the crisis",
    "although the initial estimates were somewhat erroneous",
    "because the previous arrangements were insufficient",
    "in the subsequent phase of the development",
    "so that citizens could participate more frequently",
    "whereas other regions continued to deteriorate",
    "",
];
const OPENERS: &[&str] = &["However, ", "Consequently, ", "Furthermore, ", "", "", ""];
const FOLLOWUPS: &[&str] = &[
    " This decision will subsequently necessitate additional expenditure.",
    " The outcome was apparent to numerous observers.",
    " Residents were notified immediately.",
    "",
    "",
];

pub fn sentence(rng: &mut StdRng) -> String {
    let mut s = String::new();
    s.push_str(OPENERS.choose(rng).unwrap());
    let subject = SUBJECTS.choose(rng).unwrap();
    if s.is_empty() {
        s.push_str(subject);
    } else {
        let mut lowered = subject.to_string();
        lowered[..1].make_ascii_lowercase();
        s.push_str(&lowered);
    }
    if rng.gen_bool(0.6) {
        s.push_str(RELATIVES.choose(rng).unwrap());
    }
    s.push(' ');
    s.push_str(VERBS.choose(rng).unwrap());
    s.push(' ');
    s.push_str(OBJECTS.choose(rng).unwrap());
    let tail = TAILS.choose(rng).unwrap();
    if !tail.is_empty() {
        s.push(' ');
        s.push_str(tail);
    }
    s.push('.');
    s.push_str(FOLLOWUPS.choose(rng).unwrap());
    s
}

/// `n` tasks with ids `NNN-a2` / `NNN-b1`, alternating targets, deterministic in `seed`.
pub fn synthetic_tasks(n: usize, seed: u64) -> Vec<SimplificationTask> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let target = if i % 2 == 0 { CefrLevel::A2 } else { CefrLevel::B1 };
            let id = format!("{:03}-{}", i / 2 + 1, target.label().to_lowercase());
            SimplificationTask::new(id, sentence(&mut rng), target)
        })
        .collect()
}
