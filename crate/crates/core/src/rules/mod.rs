//! Rule-based rewriting transforms and the per-step candidate composition.

mod lexical;
mod syntax;
mod trim;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

pub use lexical::{replace_words, simplify_numbers_units};
pub use syntax::{keep_shortest_clause, sentence_split, strip_relative_clauses};
pub use trim::trim_to_limit;

use crate::lexicon::Lexicon;
use crate::task::{Candidate, Provenance};

/// Word budget for a step: `max(8, 28 - 2 * step_idx)`.
pub fn step_limit(step_idx: usize) -> usize {
    28usize.saturating_sub(2 * step_idx).max(8)
}

/// Budget for per-sentence candidates: `max(10, lim - 4)`.
pub fn split_limit(step_idx: usize) -> usize {
    step_limit(step_idx).saturating_sub(4).max(10)
}

/// Every candidate of one step in fixed order, before deduplication: eight whole-text
/// variants followed by one trimmed variant per sentence.
pub fn compose_candidates(text: &str, step_idx: usize, lexicon: &Lexicon) -> Vec<(String, Provenance)> {
    let base = text.trim();
    let lim = step_limit(step_idx);
    let replaced = replace_words(base, lexicon);
    let numbers = simplify_numbers_units(base);
    let shortest = keep_shortest_clause(base);
    let stripped = strip_relative_clauses(base);
    let trimmed = |t: &str, chain: &str| (trim_to_limit(t, lim), Provenance::rule(format!("trim({chain}, {lim})"), Some(lim)));
    let mut out = Vec::with_capacity(12);
    out.push(trimmed(&replaced, "replace_words"));
    out.push(trimmed(&numbers, "simplify_numbers_units"));
    out.push(trimmed(&stripped, "strip_relative_clauses"));
    out.push(trimmed(&keep_shortest_clause(&replaced), "keep_shortest_clause(replace_words)"));
    let untrimmed = [
        (replaced, Provenance::rule("replace_words", None)),
        (numbers, Provenance::rule("simplify_numbers_units", None)),
        (shortest, Provenance::rule("keep_shortest_clause", None)),
        (stripped.clone(), Provenance::rule("strip_relative_clauses", None)),
    ];
    out.splice(0..0, untrimmed);
    let per_sentence = split_limit(step_idx);
    for (i, sentence) in sentence_split(&stripped).iter().enumerate() {
        out.push((
            trim_to_limit(&replace_words(sentence, lexicon), per_sentence),
            Provenance::rule(format!("trim(replace_words(sentence {i}), {per_sentence})"), Some(per_sentence)),
        ));
    }
    out
}

/// Deduplicated candidates for one step; first occurrence wins, and the input itself
/// and empty strings are dropped.
pub fn base_candidates(text: &str, step_idx: usize, lexicon: &Lexicon) -> Vec<Candidate> {
    let base = text.trim();
    let mut seen: Vec<String> = Vec::new();
    let mut out = Vec::new();
    for (candidate, provenance) in compose_candidates(text, step_idx, lexicon) {
        let candidate = String::from(candidate.trim());
        if candidate.is_empty() || candidate == base || seen.contains(&candidate) {
            continue;
        }
        seen.push(candidate.clone());
        out.push(Candidate::unscored(candidate, provenance));
    }
    out
}
