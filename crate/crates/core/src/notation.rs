//! Human-readable rendering of syllable sequences.
//!
//! Words are always rendered right-to-left (the leftmost syllable is the one
//! applied last), matching composition-of-functions notation.

use serde::{Deserialize, Serialize};

/// How inverse syllables are written.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Notation {
    /// The inverse of `a` is written `a⁻¹`.
    #[default]
    Superscript,
    /// The inverse of `a` is written `A`. Only available when every arrow name
    /// is a single lowercase ASCII letter; otherwise falls back to
    /// [`Notation::Superscript`].
    Uppercase,
}

const SUPERSCRIPT_DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

pub fn superscript(n: i64) -> String {
    let mut out = String::new();
    if n < 0 {
        out.push('⁻');
    }
    for c in n.unsigned_abs().to_string().chars() {
        out.push(SUPERSCRIPT_DIGITS[c.to_digit(10).unwrap() as usize]);
    }
    out
}

pub(crate) fn uppercase_available<'a>(mut names: impl Iterator<Item = &'a str>) -> bool {
    names.all(|n| n.len() == 1 && n.as_bytes()[0].is_ascii_lowercase())
}

/// Renders a sequence of `(name, inverse)` pairs given leftmost-first.
///
/// With `compress`, maximal runs of the same syllable collapse into a power
/// (`b²`, `B²`, `a⁻³`).
pub(crate) fn render_syllables(
    syllables: &[(&str, bool)],
    notation: Notation,
    single_char_names: bool,
    compress: bool,
) -> String {
    let uppercase = notation == Notation::Uppercase && single_char_names;
    let sep = if single_char_names { "" } else { " " };
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < syllables.len() {
        let (name, inverse) = syllables[i];
        let mut run = 1;
        if compress {
            while i + run < syllables.len() && syllables[i + run] == (name, inverse) {
                run += 1;
            }
        }
        let part = if uppercase {
            let base = if inverse {
                name.to_ascii_uppercase()
            } else {
                name.to_string()
            };
            if run > 1 {
                format!("{base}{}", superscript(run as i64))
            } else {
                base
            }
        } else {
            match (inverse, run) {
                (false, 1) => name.to_string(),
                (false, k) => format!("{name}{}", superscript(k as i64)),
                (true, k) => format!("{name}{}", superscript(-(k as i64))),
            }
        };
        parts.push(part);
        i += run;
    }
    parts.join(sep)
}
