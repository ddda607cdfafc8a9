use alloc::string::String;
use alloc::vec::Vec;

use crate::text::has_terminal;

const DANGLING: &[&str] = &["and", "or", "but", "of", "to", "the", "a"];

fn is_dangling(word: &str) -> bool {
    let bare = word.trim_end_matches([',', ';', ':']).to_lowercase();
    DANGLING.contains(&bare.as_str())
}

/// Ensures the text ends with sentence punctuation, replacing a trailing `,`/`;`/`:`.
fn close_sentence(text: &str) -> String {
    let body = text.trim_end().trim_end_matches([',', ';', ':', '-', ' ']);
    let mut out = String::from(body);
    if !out.is_empty() && !has_terminal(&out) {
        out.push('.');
    }
    out
}

/// Cuts the text to at most `limit` whitespace-delimited words.
///
/// When words are cut, trailing function words and commas left dangling at the cut are
/// removed too. The result always ends in sentence punctuation. `limit` is raised to 1.
pub fn trim_to_limit(text: &str, limit: usize) -> String {
    let limit = limit.max(1);
    let words: Vec<&str> = text.split_whitespace().collect();
    if words.len() <= limit {
        return close_sentence(text.trim());
    }
    let mut kept = &words[..limit];
    while kept.len() > 1 && is_dangling(kept[kept.len() - 1]) {
        kept = &kept[..kept.len() - 1];
    }
    close_sentence(&kept.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::word_count;

    #[test]
    fn budget_examples() {
        let long = "one two three four five six seven eight nine ten ".repeat(4);
        assert!(word_count(&trim_to_limit(&long, 8)) <= 8);
        assert_eq!(trim_to_limit("Dogs bark loudly", 8), "Dogs bark loudly.");
        assert_eq!(trim_to_limit("Dogs bark!", 8), "Dogs bark!");
        assert_eq!(trim_to_limit("He went to the shop yesterday.", 4), "He went.");
        assert_eq!(trim_to_limit("We saw cats, dogs, and birds there.", 3), "We saw cats.");
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(trim_to_limit("", 5), "");
        assert_eq!(trim_to_limit("the the the", 1), "the.");
        assert_eq!(trim_to_limit("a b c", 0), "a.");
    }
}
