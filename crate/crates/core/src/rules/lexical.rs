use alloc::string::String;

use crate::lexicon::Lexicon;
use crate::text::{capitalize_first, token_spans};

/// Spelling variants of units, normalized to the US form.
const UNIT_SPELLINGS: &[(&str, &str)] = &[
    ("centimetre", "centimeter"),
    ("centimetres", "centimeters"),
    ("decilitre", "deciliter"),
    ("decilitres", "deciliters"),
    ("gramme", "gram"),
    ("grammes", "grams"),
    ("kilogramme", "kilogram"),
    ("kilogrammes", "kilograms"),
    ("kilometre", "kilometer"),
    ("kilometres", "kilometers"),
    ("litre", "liter"),
    ("litres", "liters"),
    ("metre", "meter"),
    ("metres", "meters"),
    ("millilitre", "milliliter"),
    ("millilitres", "milliliters"),
    ("millimetre", "millimeter"),
    ("millimetres", "millimeters"),
];

/// Rewrites every whole token for which `lookup` has a substitute, keeping an initial capital.
fn substitute_tokens<'a>(text: &str, lookup: impl Fn(&str) -> Option<&'a str>) -> String {
    let mut out = String::with_capacity(text.len());
    let mut last = 0;
    for (start, end) in token_spans(text) {
        let token = &text[start..end];
        let Some(replacement) = lookup(&token.to_lowercase()) else {
            continue;
        };
        out.push_str(&text[last..start]);
        if token.starts_with(char::is_uppercase) {
            out.push_str(&capitalize_first(replacement));
        } else {
            out.push_str(replacement);
        }
        last = end;
    }
    out.push_str(&text[last..]);
    out
}

/// Replaces lexicon words with their plainer substitutes.
pub fn replace_words(text: &str, lexicon: &Lexicon) -> String {
    substitute_tokens(text, |w| lexicon.get(w))
}

/// Drops thousands separators (`12,500` -> `12500`) and normalizes unit spellings.
pub fn simplify_numbers_units(text: &str) -> String {
    let joined = remove_digit_separators(text);
    substitute_tokens(&joined, |w| {
        UNIT_SPELLINGS
            .binary_search_by(|(k, _)| (*k).cmp(w))
            .ok()
            .map(|i| UNIT_SPELLINGS[i].1)
    })
}

fn remove_digit_separators(text: &str) -> String {
    let bytes = text.as_bytes();
    let digits_at = |i: usize| bytes.get(i).is_some_and(u8::is_ascii_digit);
    let mut out = String::with_capacity(text.len());
    let mut i = 0;
    let mut copied = 0;
    while i < bytes.len() {
        if !digits_at(i) || (i > 0 && digits_at(i - 1)) {
            i += 1;
            continue;
        }
        let lead_end = (i..bytes.len()).find(|&j| !digits_at(j)).unwrap_or(bytes.len());
        if lead_end - i > 3 {
            i = lead_end;
            continue;
        }
        // Count ",ddd" groups not followed by another digit.
        let mut end = lead_end;
        let mut groups = alloc::vec::Vec::new();
        while bytes.get(end) == Some(&b',')
            && (1..=3).all(|k| digits_at(end + k))
            && !digits_at(end + 4)
        {
            groups.push(end);
            end += 4;
        }
        if !groups.is_empty() {
            out.push_str(&text[copied..i]);
            let mut from = i;
            for comma in groups {
                out.push_str(&text[from..comma]);
                from = comma + 1;
            }
            out.push_str(&text[from..end]);
            copied = end;
        }
        i = end;
    }
    out.push_str(&text[copied..]);
    out
}
