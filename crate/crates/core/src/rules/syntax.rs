use alloc::string::String;
use alloc::vec::Vec;

use crate::text::{capitalize_first, has_terminal, is_terminator, tidy, token_spans};

/// Markers that open a removable comma-delimited clause inside a sentence.
const CLAUSE_MARKERS: &[&str] = &["which", "that", "who", "where", "when", "however", "although"];

/// Markers whose sentence-initial clause (up to the first comma) is removable.
/// `that`, `which` and `who` are excluded here: sentence-initially they are usually
/// determiners or question words.
const INITIAL_MARKERS: &[&str] = &["however", "although", "when", "where"];

const COORDINATORS: &[&str] = &["and", "but", "or", "so", "yet", "nor"];

const FINITE_VERBS: &[&str] = &[
    "am", "are", "ate", "became", "become", "becomes", "began", "begin", "begins", "bring", "brings",
    "brought", "built", "buy", "buys", "came", "can", "come", "comes", "could", "did", "do", "does",
    "eat", "eats", "feel", "feels", "felt", "find", "finds", "found", "gave", "get", "gets", "give",
    "gives", "go", "goes", "got", "had", "has", "have", "hold", "holds", "is", "keep", "keeps",
    "kept", "know", "knows", "knew", "leave", "leaves", "left", "let", "lets", "like", "live",
    "lives", "look", "looks", "made", "make", "makes", "may", "mean", "means", "meant", "might",
    "must", "need", "needs", "put", "puts", "ran", "run", "runs", "said", "saw", "say", "says", "see",
    "sees", "seem", "seems", "shall", "should", "show", "shows", "sat", "sit", "sits", "stay",
    "stays", "stood", "take", "takes", "tell", "tells", "think", "thinks", "thought", "told", "took",
    "use", "uses", "want", "wants", "was", "went", "were", "will", "work", "works", "would",
];

const VERB_SUFFIXES: &[&str] = &["ed", "es", "ize", "izes", "ise", "ises", "ify", "ifies", "ates"];

fn is_finite_verb_candidate(token: &str) -> bool {
    let lower = token.to_lowercase();
    FINITE_VERBS.contains(&lower.as_str())
        || (lower.chars().count() >= 4 && VERB_SUFFIXES.iter().any(|s| lower.ends_with(s)))
}

/// Byte spans of sentences, each ending after its `.`/`!`/`?`/`;` run and any closing quotes.
/// A terminator only ends a sentence when followed by whitespace or the end of text.
pub(crate) fn sentence_spans(text: &str) -> Vec<(usize, usize)> {
    let mut spans = Vec::new();
    let mut start = 0;
    let mut chars = text.char_indices().peekable();
    while let Some((_, c)) = chars.next() {
        if !(is_terminator(c) || c == ';') {
            continue;
        }
        while let Some(&(_, n)) = chars.peek() {
            if is_terminator(n) || matches!(n, '"' | '\'' | ')' | '\u{201d}' | '\u{2019}') {
                chars.next();
            } else {
                break;
            }
        }
        let end = chars.peek().map_or(text.len(), |&(i, _)| i);
        if chars.peek().is_none_or(|&(_, n)| n.is_whitespace()) {
            if !text[start..end].trim().is_empty() {
                spans.push((start, end));
            }
            start = end;
        }
    }
    if !text[start..].trim().is_empty() {
        spans.push((start, text.len()));
    }
    spans
}

/// Splits at sentence-final punctuation and semicolons into trimmed, non-empty parts.
pub fn sentence_split(text: &str) -> Vec<String> {
    sentence_spans(text)
        .into_iter()
        .map(|(s, e)| String::from(text[s..e].trim()))
        .filter(|s| !s.is_empty())
        .collect()
}

/// Start of the trailing terminator run (and closing quotes), or `s.len()`.
fn content_end(s: &str) -> usize {
    let trimmed = s.trim_end();
    let body = trimmed.trim_end_matches(|c: char| is_terminator(c) || c == ';' || matches!(c, '"' | ')' | '\u{201d}'));
    body.len()
}

fn strip_sentence(sentence: &str) -> Option<String> {
    let mut s = String::from(sentence.trim());
    let mut changed = false;
    let mut recapitalize = false;

    let spans = token_spans(&s);
    if let Some(&(fs, fe)) = spans.first() {
        if INITIAL_MARKERS.contains(&s[fs..fe].to_lowercase().as_str()) {
            if let Some(comma) = s[fe..content_end(&s)].find(',') {
                s = String::from(s[fe + comma + 1..].trim_start());
                changed = true;
                recapitalize = true;
            }
        }
    }

    'scan: loop {
        let spans = token_spans(&s);
        for &(ts, te) in &spans {
            if !CLAUSE_MARKERS.contains(&s[ts..te].to_lowercase().as_str()) {
                continue;
            }
            let before = s[..ts].trim_end();
            if !before.ends_with(',') {
                continue;
            }
            let comma = before.len() - 1;
            let end = content_end(&s);
            let cut_end = match s[te..end.max(te)].find(',') {
                Some(next) => te + next + 1,
                None => end.max(te),
            };
            s.replace_range(comma..cut_end, "");
            changed = true;
            continue 'scan;
        }
        break;
    }

    if !changed {
        return None;
    }
    let mut out = tidy(&s);
    if recapitalize {
        out = capitalize_first(&out);
    }
    if token_spans(&out).is_empty() {
        None
    } else {
        Some(out)
    }
}

/// Deletes comma-delimited clauses opened by relative pronouns or discourse markers.
/// Returns the input unchanged when nothing is removed or removal would leave no words.
pub fn strip_relative_clauses(text: &str) -> String {
    let spans = sentence_spans(text);
    let mut parts: Vec<String> = Vec::with_capacity(spans.len());
    let mut changed = false;
    for (s, e) in spans {
        match strip_sentence(&text[s..e]) {
            Some(stripped) => {
                parts.push(stripped);
                changed = true;
            }
            None => parts.push(String::from(text[s..e].trim())),
        }
    }
    if !changed {
        return String::from(text);
    }
    let joined = parts.join(" ");
    if token_spans(&joined).is_empty() {
        String::from(text)
    } else {
        joined
    }
}

/// Clause segments: split on `,` (not between digits), `;`, dashes, sentence ends and coordinators.
fn clause_segments(text: &str) -> Vec<&str> {
    let bytes = text.as_bytes();
    let mut cuts: Vec<(usize, usize)> = Vec::new();
    for (i, c) in text.char_indices() {
        let is_cut = match c {
            ',' => {
                let digit_before = i > 0 && bytes[i - 1].is_ascii_digit();
                let digit_after = bytes.get(i + 1).is_some_and(u8::is_ascii_digit);
                !(digit_before && digit_after)
            }
            ';' | '\u{2014}' | '\u{2013}' => true,
            c if is_terminator(c) => text[i + c.len_utf8()..].chars().next().is_none_or(char::is_whitespace),
            _ => false,
        };
        if is_cut {
            cuts.push((i, i + c.len_utf8()));
        }
    }
    for (s, e) in token_spans(text) {
        if COORDINATORS.contains(&text[s..e].to_lowercase().as_str()) {
            cuts.push((s, e));
        }
    }
    cuts.sort_unstable();
    let mut segments = Vec::new();
    let mut from = 0;
    for (s, e) in cuts {
        if s >= from {
            segments.push(&text[from..s]);
            from = e;
        }
    }
    segments.push(&text[from..]);
    segments
}

/// Keeps the shortest clause with at least three words and a finite-verb candidate.
pub fn keep_shortest_clause(text: &str) -> String {
    let best = clause_segments(text)
        .into_iter()
        .map(|seg| seg.trim_matches(|c: char| c.is_whitespace() || matches!(c, '"' | '(' | ')' | ':' | '-')))
        .enumerate()
        .filter(|(_, seg)| {
            let spans = token_spans(seg);
            spans.len() >= 3 && spans.iter().any(|&(s, e)| is_finite_verb_candidate(&seg[s..e]))
        })
        .min_by_key(|(i, seg)| (token_spans(seg).len(), seg.len(), *i));
    let Some((_, segment)) = best else {
        return String::from(text);
    };
    let terminal = text
        .trim_end()
        .chars()
        .rev()
        .find(|c| is_terminator(*c) || c.is_alphanumeric())
        .filter(|c| is_terminator(*c))
        .unwrap_or('.');
    let mut out = capitalize_first(segment);
    if !has_terminal(&out) {
        out.push(terminal);
    }
    out
}
