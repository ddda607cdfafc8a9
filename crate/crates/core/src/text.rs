//! Shared tokenization helpers. Everything here is byte-offset based and UTF-8 safe.

use alloc::string::String;
use alloc::vec::Vec;

pub(crate) const SENTENCE_TERMINATORS: [char; 3] = ['.', '!', '?'];

pub(crate) fn is_terminator(c: char) -> bool {
    SENTENCE_TERMINATORS.contains(&c)
}

fn is_closing(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']' | '\u{201d}' | '\u{2019}')
}

/// Whitespace-delimited word count; the unit of every trim budget.
pub fn word_count(text: &str) -> usize {
    text.split_whitespace().count()
}

fn is_token_char(c: char) -> bool {
    c.is_alphanumeric()
}

/// Byte spans of word tokens: maximal alphanumeric runs, allowing one inner apostrophe.
pub(crate) fn token_spans(text: &str) -> Vec<(usize, usize)> {
    let mut spans = Vec::new();
    let mut start: Option<usize> = None;
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if is_token_char(c) {
            if start.is_none() {
                start = Some(i);
            }
            continue;
        }
        if let Some(s) = start {
            let inner_apostrophe = (c == '\'' || c == '\u{2019}')
                && chars.peek().is_some_and(|&(_, n)| is_token_char(n));
            if !inner_apostrophe {
                spans.push((s, i));
                start = None;
            }
        }
    }
    if let Some(s) = start {
        spans.push((s, text.len()));
    }
    spans
}

/// Lowercased word tokens, punctuation dropped.
pub fn word_tokens(text: &str) -> Vec<String> {
    token_spans(text)
        .into_iter()
        .map(|(s, e)| text[s..e].to_lowercase())
        .collect()
}

/// True if the text ends in `.`, `!` or `?`, possibly followed by closing quotes or brackets.
pub(crate) fn has_terminal(text: &str) -> bool {
    text.trim_end()
        .trim_end_matches(is_closing)
        .ends_with(is_terminator)
}

/// Uppercases the first alphabetic character.
pub(crate) fn capitalize_first(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut done = false;
    for c in text.chars() {
        if !done && c.is_alphabetic() {
            out.extend(c.to_uppercase());
            done = true;
        } else {
            out.push(c);
        }
    }
    out
}

/// Collapses whitespace runs and removes spaces before punctuation and doubled commas.
pub(crate) fn tidy(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for word in text.split_whitespace() {
        let starts_with_punct = word.starts_with([',', '.', ';', ':', '!', '?']);
        if starts_with_punct {
            while out.ends_with(',') && word.starts_with([',', '.', ';', ':', '!', '?']) {
                out.pop();
            }
            out.push_str(word);
        } else {
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(word);
        }
    }
    while out.contains(",,") {
        out = out.replace(",,", ",");
    }
    let trimmed = out.trim_start_matches([',', ';', ':', ' ']);
    String::from(trimmed)
}
