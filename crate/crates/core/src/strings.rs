//! Syllables, strings and bands of a zero-relation algebra.
//!
//! A [`StringWord`] `α_n⋯α_1` is stored in application order: index 0 holds
//! the rightmost syllable `α_1`. Comparisons and rendering use the written
//! (leftmost-first) order.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::notation::{self, Notation};
use crate::presentation::{ArrowId, Presentation, Quiver, VertexId};

/// An arrow or its formal inverse. Ordered by arrow name, direct first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Syllable {
    pub arrow: ArrowId,
    pub inverse: bool,
}

impl Syllable {
    pub fn direct(arrow: ArrowId) -> Self {
        Syllable {
            arrow,
            inverse: false,
        }
    }

    pub fn inverse_of(arrow: ArrowId) -> Self {
        Syllable {
            arrow,
            inverse: true,
        }
    }

    pub fn inverted(self) -> Self {
        Syllable {
            arrow: self.arrow,
            inverse: !self.inverse,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StringWord {
    syllables: Vec<Syllable>,
}

impl Ord for StringWord {
    /// Shortlex on the written form.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.syllables.iter().rev().cmp(other.syllables.iter().rev()))
    }
}

impl PartialOrd for StringWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl StringWord {
    /// Wraps syllables given in application order without checking them.
    pub fn from_application_order(syllables: Vec<Syllable>) -> Self {
        assert!(!syllables.is_empty(), "strings have positive length");
        StringWord { syllables }
    }

    /// Syllables in application order (`α_1` first).
    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `α_n`, the syllable written first.
    pub fn leftmost(&self) -> Syllable {
        *self.syllables.last().unwrap()
    }

    /// `α_1`, the syllable applied first.
    pub fn rightmost(&self) -> Syllable {
        self.syllables[0]
    }

    pub fn is_direct(&self) -> bool {
        self.syllables.iter().all(|s| !s.inverse)
    }

    pub fn is_inverse(&self) -> bool {
        self.syllables.iter().all(|s| s.inverse)
    }

    pub fn is_mixed(&self) -> bool {
        !self.is_direct() && !self.is_inverse()
    }

    /// Leftmost syllable direct and rightmost inverse.
    pub fn is_band_shaped(&self) -> bool {
        !self.leftmost().inverse && self.rightmost().inverse
    }

    pub fn inverse(&self) -> StringWord {
        StringWord {
            syllables: self.syllables.iter().rev().map(|s| s.inverted()).collect(),
        }
    }

    /// The cyclic permutation `α_j⋯α_1α_n⋯α_{j+1}`.
    pub fn rotate(&self, j: usize) -> StringWord {
        let mut syllables = self.syllables.clone();
        syllables.rotate_left(j % self.len());
        StringWord { syllables }
    }

    pub fn rotations(&self) -> impl Iterator<Item = StringWord> + '_ {
        (0..self.len()).map(move |j| self.rotate(j))
    }

    /// The word repeated `k` times (not checked to be a string).
    pub fn power(&self, k: usize) -> StringWord {
        StringWord {
            syllables: self.syllables.repeat(k),
        }
    }

    /// Length of the shortest `v` with `self = v^(n/|v|)`.
    pub fn primitive_period(&self) -> usize {
        let n = self.len();
        (1..=n)
            .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| self.syllables[i] == self.syllables[i - p]))
            .unwrap()
    }
}

/// A band up to cyclic permutation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BandClass {
    /// Least band-shaped rotation.
    pub representative: StringWord,
    /// Least of the representatives of this class and of its inverse class.
    pub inverse_pair_id: StringWord,
}

impl BandClass {
    pub fn len(&self) -> usize {
        self.representative.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CyclicClass {
    NotCyclic,
    BandPowerRotation { band: BandClass, exponent: usize },
    OtherCyclic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of strings any single enumeration may hold.
    pub max_strings: usize,
    /// Largest number of walk steps the brute-force closed walk counter may take.
    pub max_walk_steps: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_strings: 2_000_000,
            max_walk_steps: 50_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerialSyllable {
    pub arrow: String,
    pub inverse: bool,
}

/// Machine form of a string: syllables leftmost-first plus the written form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerialWord {
    pub syllables: Vec<SerialSyllable>,
    pub display: String,
}

/// String calculus for a fixed monomial presentation.
#[derive(Clone, Debug)]
pub struct StringRules {
    quiver: Quiver,
    forbidden: HashSet<Vec<Syllable>>,
    max_forbidden: usize,
}

impl StringRules {
    /// Uses only the monomial relations; reduce binomial input first.
    pub fn new(p: &Presentation) -> Self {
        let mut forbidden = HashSet::new();
        for r in p.relations() {
            let direct: Vec<Syllable> = r.arrows().iter().map(|&a| Syllable::direct(a)).collect();
            let inverse: Vec<Syllable> = direct.iter().rev().map(|s| s.inverted()).collect();
            forbidden.insert(direct);
            forbidden.insert(inverse);
        }
        StringRules {
            quiver: p.quiver().clone(),
            forbidden,
            max_forbidden: p.max_relation_length(),
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn source(&self, s: Syllable) -> VertexId {
        if s.inverse {
            self.quiver.target(s.arrow)
        } else {
            self.quiver.source(s.arrow)
        }
    }

    pub fn end(&self, s: Syllable) -> VertexId {
        if s.inverse {
            self.quiver.source(s.arrow)
        } else {
            self.quiver.target(s.arrow)
        }
    }

    /// Every syllable of the quiver in syllable order.
    pub fn syllables(&self) -> Vec<Syllable> {
        self.quiver
            .arrow_ids()
            .flat_map(|a| [Syllable::direct(a), Syllable::inverse_of(a)])
            .collect()
    }

    /// Whether appending `next` (as new leftmost syllable) to a string keeps
    /// it a string. Only the last `max_forbidden` syllables are inspected.
    fn extends(&self, word: &[Syllable], next: Syllable) -> bool {
        if let Some(&last) = word.last() {
            if self.end(last) != self.source(next) || next == last.inverted() {
                return false;
            }
        }
        let n = word.len() + 1;
        (1..=self.max_forbidden.min(n)).all(|k| {
            let start = n - k;
            let block: Vec<Syllable> = word[start.min(word.len())..]
                .iter()
                .copied()
                .chain(std::iter::once(next))
                .collect();
            !self.forbidden.contains(&block)
        })
    }

    fn accepts(&self, word: &[Syllable]) -> bool {
        !word.is_empty() && (0..word.len()).all(|i| self.extends(&word[..i], word[i]))
    }

    /// Whether the syllables (application order) form a string.
    pub fn is_string(&self, word: &[Syllable]) -> Result<bool> {
        if let Some(s) = word.iter().find(|s| s.arrow.0 >= self.quiver.arrow_count()) {
            return Err(Error::UnknownArrow(s.arrow.0));
        }
        Ok(self.accepts(word))
    }

    /// Validated construction from application-order syllables.
    pub fn word(&self, syllables: Vec<Syllable>) -> Result<StringWord> {
        if self.is_string(&syllables)? {
            Ok(StringWord { syllables })
        } else {
            Err(Error::Precondition(format!(
                "`{}` is not a string",
                self.render(
                    &StringWord {
                        syllables: syllables.clone()
                    },
                    Notation::Superscript,
                    false
                )
            )))
        }
    }

    /// Parses written notation (leftmost syllable first) into application
    /// order. Accepts `aB`, `b²A`, `ab⁻¹`, `a b^-1`, and for multi-letter
    /// names whitespace-separated tokens such as `alpha beta⁻¹`.
    pub fn parse_syllables(&self, text: &str) -> Result<Vec<Syllable>> {
        let unknown = |name: &str| Error::Reference {
            kind: "arrow",
            name: name.to_string(),
            location: format!("word `{text}`"),
        };
        let mut written: Vec<Syllable> = Vec::new();
        let tokens: Vec<String> = if self.quiver.single_char_names() {
            let mut tokens: Vec<String> = Vec::new();
            for c in text.chars().filter(|c| !c.is_whitespace()) {
                if c.is_alphabetic() {
                    tokens.push(c.to_string());
                } else if let Some(t) = tokens.last_mut() {
                    t.push(c);
                } else {
                    return Err(unknown(&c.to_string()));
                }
            }
            tokens
        } else {
            text.split_whitespace().map(str::to_string).collect()
        };
        for token in tokens {
            let (name, inverse, power) = split_modifiers(&token);
            let syllable = if let Some(a) = self.quiver.arrow_by_name(name) {
                Syllable { arrow: a, inverse }
            } else {
                let lower = name.to_lowercase();
                match self.quiver.arrow_by_name(&lower) {
                    Some(a) if self.quiver.uppercase_available() && lower != name => Syllable {
                        arrow: a,
                        inverse: !inverse,
                    },
                    _ => return Err(unknown(name)),
                }
            };
            written.extend(std::iter::repeat_n(syllable, power));
        }
        if written.is_empty() {
            return Err(Error::Precondition("empty word".into()));
        }
        written.reverse();
        Ok(written)
    }

    /// Parses written notation and checks that the result is a string.
    pub fn parse_word(&self, text: &str) -> Result<StringWord> {
        self.word(self.parse_syllables(text)?)
    }

    pub fn render(&self, w: &StringWord, notation: Notation, compress: bool) -> String {
        let written: Vec<(&str, bool)> = w
            .syllables
            .iter()
            .rev()
            .map(|s| (self.quiver.arrow_name(s.arrow), s.inverse))
            .collect();
        notation::render_syllables(&written, notation, self.quiver.single_char_names(), compress)
    }

    pub fn serialize_word(&self, w: &StringWord, notation: Notation) -> SerialWord {
        SerialWord {
            syllables: w
                .syllables
                .iter()
                .rev()
                .map(|s| SerialSyllable {
                    arrow: self.quiver.arrow_name(s.arrow).to_string(),
                    inverse: s.inverse,
                })
                .collect(),
            display: self.render(w, notation, false),
        }
    }

    pub fn deserialize_word(&self, w: &SerialWord) -> Result<StringWord> {
        let mut syllables = w
            .syllables
            .iter()
            .map(|s| {
                self.quiver
                    .arrow_by_name(&s.arrow)
                    .map(|arrow| Syllable {
                        arrow,
                        inverse: s.inverse,
                    })
                    .ok_or_else(|| Error::Reference {
                        kind: "arrow",
                        name: s.arrow.clone(),
                        location: "serialized word".into(),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        syllables.reverse();
        self.word(syllables)
    }

    /// `uv`, if it is a string.
    pub fn concat(&self, u: &StringWord, v: &StringWord) -> Option<StringWord> {
        let syllables: Vec<Syllable> = v.syllables.iter().chain(&u.syllables).copied().collect();
        self.accepts(&syllables).then_some(StringWord { syllables })
    }

    /// All strings of length `k`, sorted.
    pub fn enumerate(&self, k: usize, limits: &Limits) -> Result<Vec<StringWord>> {
        if k == 0 {
            return Ok(Vec::new());
        }
        let mut level: Vec<Vec<Syllable>> = self
            .syllables()
            .into_iter()
            .filter(|&s| self.extends(&[], s))
            .map(|s| vec![s])
            .collect();
        let all = self.syllables();
        for _ in 1..k {
            let mut next = Vec::new();
            for w in &level {
                for &s in &all {
                    if self.extends(w, s) {
                        if next.len() == limits.max_strings {
                            return Err(Error::ResourceLimit {
                                what: "strings of one length",
                                limit: limits.max_strings,
                            });
                        }
                        let mut ext = w.clone();
                        ext.push(s);
                        next.push(ext);
                    }
                }
            }
            level = next;
        }
        let mut out: Vec<StringWord> = level
            .into_iter()
            .map(|syllables| StringWord { syllables })
            .collect();
        out.sort();
        Ok(out)
    }

    pub fn is_cyclic(&self, w: &StringWord) -> bool {
        self.end(w.leftmost()) == self.source(w.rightmost())
    }

    /// Every cyclic permutation is a string.
    pub fn is_permutable(&self, w: &StringWord) -> bool {
        self.is_cyclic(w) && w.rotations().all(|r| self.accepts(&r.syllables))
    }

    pub fn classify_cyclic(&self, w: &StringWord) -> CyclicClass {
        if !self.is_cyclic(w) {
            return CyclicClass::NotCyclic;
        }
        if !w.is_mixed() || !self.is_permutable(w) {
            return CyclicClass::OtherCyclic;
        }
        let p = w.primitive_period();
        let root = StringWord {
            syllables: w.syllables[..p].to_vec(),
        };
        CyclicClass::BandPowerRotation {
            band: canonical_class(&root),
            exponent: w.len() / p,
        }
    }

    /// Canonical class of a rotation of a band.
    pub fn canonical_band(&self, w: &StringWord) -> Result<BandClass> {
        match self.classify_cyclic(w) {
            CyclicClass::BandPowerRotation { band, exponent: 1 } => Ok(band),
            other => Err(Error::Precondition(format!(
                "`{}` is not a rotation of a band ({other:?})",
                self.render(w, Notation::Superscript, false)
            ))),
        }
    }

    /// Brute-force band enumeration straight from the definition: cyclic,
    /// primitive, leftmost direct, rightmost inverse, and all powers strings.
    pub fn enumerate_bands(&self, max_len: usize, limits: &Limits) -> Result<Vec<BandClass>> {
        let mut classes = BTreeSet::new();
        for n in 1..=max_len {
            for u in self.enumerate(n, limits)? {
                if u.is_band_shaped()
                    && self.is_cyclic(&u)
                    && u.primitive_period() == n
                    && self.all_powers_exist(&u)
                {
                    classes.insert(canonical_class(&u));
                }
            }
        }
        Ok(classes.into_iter().collect())
    }

    /// `u^k` is a string for every `k`. Forbidden blocks have length at most
    /// `max_forbidden`, so a power long enough to contain every window of
    /// that size decides the question.
    fn all_powers_exist(&self, u: &StringWord) -> bool {
        let k = self.max_forbidden.max(2).div_ceil(u.len()) + 1;
        self.accepts(&u.power(k).syllables)
    }
}

fn is_superscript_digit(c: char) -> bool {
    "⁰¹²³⁴⁵⁶⁷⁸⁹".contains(c)
}

/// Splits `name`, an inverse marker (`⁻¹`, `^-1`) and a power (`²`, `^2`).
fn split_modifiers(token: &str) -> (&str, bool, usize) {
    let cut = token
        .char_indices()
        .find(|&(_, c)| c == '⁻' || c == '^' || is_superscript_digit(c))
        .map(|(i, _)| i)
        .unwrap_or(token.len());
    let (name, rest) = token.split_at(cut);
    let mut inverse = false;
    let mut power = 1;
    let mut digits = String::new();
    let mut chars = rest.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '⁻' if chars.peek() == Some(&'¹') => {
                chars.next();
                inverse = !inverse;
            }
            '^' if chars.peek() == Some(&'-') => {
                chars.next();
                chars.next();
                inverse = !inverse;
            }
            '^' => {}
            c if c.is_ascii_digit() => digits.push(c),
            c if is_superscript_digit(c) => {
                digits.push(char::from_digit("⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|d| d == c).unwrap() as u32, 10).unwrap())
            }
            _ => {}
        }
    }
    if let Ok(p) = digits.parse::<usize>() {
        power = p;
    }
    (name, inverse, power)
}

/// Canonical class of a primitive, mixed, permutable cyclic word.
pub(crate) fn canonical_class(w: &StringWord) -> BandClass {
    let least = |x: &StringWord| {
        x.rotations()
            .filter(StringWord::is_band_shaped)
            .min()
            .expect("mixed cyclic words have a band-shaped rotation")
    };
    let representative = least(w);
    let inverse = least(&w.inverse());
    let inverse_pair_id = representative.clone().min(inverse);
    BandClass {
        representative,
        inverse_pair_id,
    }
}
