//! Finite words over the alphabet `{a, b}` and complete prefix codes.
//!
//! Words index the monomials of the algebra and the cylinder subsets of the
//! infinite path space: `Z(w)` is the set of infinite letter sequences that
//! begin with `w`. Two words are comparable exactly when one is a prefix of
//! the other, i.e. when their cylinders are nested; an antichain has pairwise
//! disjoint cylinders. A complete prefix code is an antichain whose cylinders
//! cover everything, detected exactly by the Kraft sum `Σ 2^(-|w|) = 1`.
//!
//! The empty word is written `e` in every textual form.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::Error;
use crate::Result;

/// One letter of the two-letter alphabet, ordered `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    /// The other letter.
    pub fn flip(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }
}

/// A finite word over `{a, b}`.
///
/// The derived ordering on the underlying letter sequence is lexicographic
/// with `a < b`, and a proper prefix sorts before its extensions — exactly
/// the word order used for printing and term ordering.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    /// The empty word `e`.
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Word {
        Word(letters.into_iter().collect())
    }

    /// Single-letter word.
    pub fn letter(l: Letter) -> Word {
        Word(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self` with one letter appended.
    pub fn append(&self, l: Letter) -> Word {
        let mut v = self.0.clone();
        v.push(l);
        Word(v)
    }

    /// Drops the last letter; `None` on the empty word.
    pub fn parent(&self) -> Option<(Word, Letter)> {
        let mut v = self.0.clone();
        v.pop().map(|l| (Word(v), l))
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    /// The suffix left after removing `prefix`, if `prefix` is a prefix.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0
            .strip_prefix(prefix.0.as_slice())
            .map(|rest| Word(rest.to_vec()))
    }

    /// All `2^len` words of the given length, in lexicographic order.
    pub fn all_of_length(len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| [w.append(Letter::A), w.append(Letter::B)])
                .collect();
        }
        out
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts a string of `a`/`b` letters, or `e` for the empty word.
    fn from_str(s: &str) -> Result<Word> {
        if s == "e" {
            return Ok(Word::empty());
        }
        if s.is_empty() {
            return Err(Error::Parse("empty word must be written 'e'".into()));
        }
        s.chars()
            .map(|c| match c {
                'a' => Ok(Letter::A),
                'b' => Ok(Letter::B),
                other => Err(Error::Parse(format!("invalid letter {other:?} in word"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "e");
        }
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

/// How two words compare under the prefix order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrefixRelation {
    Equal,
    /// The first word is a proper prefix of the second.
    FirstProperPrefix,
    /// The second word is a proper prefix of the first.
    SecondProperPrefix,
    /// Neither is a prefix of the other: disjoint cylinders.
    Incomparable,
}

/// Classifies the prefix relation between two words.
pub fn prefix_relation(x: &Word, y: &Word) -> PrefixRelation {
    if x == y {
        PrefixRelation::Equal
    } else if y.starts_with(x) {
        PrefixRelation::FirstProperPrefix
    } else if x.starts_with(y) {
        PrefixRelation::SecondProperPrefix
    } else {
        PrefixRelation::Incomparable
    }
}

/// A finite antichain of words: pairwise incomparable, i.e. pairwise
/// disjoint cylinders. Construction rejects anything else.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct PrefixCode(BTreeSet<Word>);

impl PrefixCode {
    /// Builds a code after checking the antichain condition.
    ///
    /// Duplicates are rejected too (a word is a prefix of itself).
    pub fn new(words: impl IntoIterator<Item = Word>) -> Result<PrefixCode> {
        let mut set: BTreeSet<Word> = BTreeSet::new();
        for w in words {
            if let Some(dup) = set.get(&w) {
                return Err(Error::NotAntichain(dup.clone(), w));
            }
            set.insert(w);
        }
        // In lexicographic order a prefix sorts immediately into the run of
        // its extensions, so adjacent comparisons see every violation.
        let sorted: Vec<&Word> = set.iter().collect();
        for pair in sorted.windows(2) {
            if pair[1].starts_with(pair[0]) {
                return Err(Error::NotAntichain((*pair[0]).clone(), (*pair[1]).clone()));
            }
        }
        Ok(PrefixCode(set))
    }

    /// The code `{e}` whose single cylinder is the whole space.
    pub fn whole_space() -> PrefixCode {
        PrefixCode(BTreeSet::from([Word::empty()]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.0.contains(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.0.iter()
    }

    pub fn words(&self) -> &BTreeSet<Word> {
        &self.0
    }

    /// Length of the longest member; 0 for the empty code.
    pub fn max_len(&self) -> usize {
        self.0.iter().map(Word::len).max().unwrap_or(0)
    }
}

impl fmt::Display for PrefixCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "}}")
    }
}

/// Whether the code's cylinders cover the whole path space.
///
/// Checked exactly: with `m` the maximum length, `Σ 2^(m - |w|)` must equal
/// `2^m`. The empty code is not complete.
pub fn is_complete_code(code: &PrefixCode) -> bool {
    if code.is_empty() {
        return false;
    }
    let m = code.max_len();
    let sum: BigUint = code
        .iter()
        .map(|w| BigUint::from(1u8) << (m - w.len()))
        .sum();
    sum == BigUint::from(1u8) << m
}

/// Replaces every member by all of its extensions of length exactly `m`.
///
/// Completeness and the antichain property are preserved; the result is the
/// unique uniform-length refinement. Fails if some member is longer than `m`.
pub fn refine_code(code: &PrefixCode, m: usize) -> Result<PrefixCode> {
    let required = code.max_len();
    if m < required {
        return Err(Error::LevelTooSmall {
            required,
            requested: m,
        });
    }
    let mut out = BTreeSet::new();
    for w in code.iter() {
        for tail in Word::all_of_length(m - w.len()) {
            out.insert(w.concat(&tail));
        }
    }
    Ok(PrefixCode(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn code(words: &[&str]) -> PrefixCode {
        PrefixCode::new(words.iter().map(|s| w(s))).unwrap()
    }

    #[test]
    fn prefix_relation_examples() {
        assert_eq!(prefix_relation(&w("a"), &w("ab")), PrefixRelation::FirstProperPrefix);
        assert_eq!(prefix_relation(&w("ab"), &w("ab")), PrefixRelation::Equal);
        assert_eq!(prefix_relation(&w("aa"), &w("ab")), PrefixRelation::Incomparable);
        assert_eq!(prefix_relation(&w("ab"), &w("a")), PrefixRelation::SecondProperPrefix);
        assert_eq!(prefix_relation(&w("e"), &w("b")), PrefixRelation::FirstProperPrefix);
    }

    #[test]
    fn word_order_is_lexicographic_with_prefixes_first() {
        assert!(w("a") < w("b"));
        assert!(w("a") < w("aa"));
        assert!(w("ab") < w("b"));
        assert!(w("e") < w("a"));
        assert!(w("ba") < w("bab"));
    }

    #[test]
    fn complete_code_examples() {
        assert!(is_complete_code(&code(&["e"])));
        assert!(is_complete_code(&code(&["a", "ba", "bb"])));
        assert!(!is_complete_code(&code(&["a", "ba"])));
        assert!(!is_complete_code(&PrefixCode::new([]).unwrap()));
    }

    #[test]
    fn antichain_violations_are_rejected() {
        assert!(matches!(
            PrefixCode::new([w("a"), w("ab")]),
            Err(Error::NotAntichain(_, _))
        ));
        assert!(matches!(
            PrefixCode::new([w("ba"), w("b")]),
            Err(Error::NotAntichain(_, _))
        ));
        assert!(matches!(
            PrefixCode::new([w("aa"), w("aa")]),
            Err(Error::NotAntichain(_, _))
        ));
    }

    #[test]
    fn refine_code_examples() {
        assert_eq!(refine_code(&code(&["a", "b"]), 2).unwrap(), code(&["aa", "ab", "ba", "bb"]));
        assert_eq!(refine_code(&code(&["e"]), 1).unwrap(), code(&["a", "b"]));
        assert_eq!(
            refine_code(&code(&["a", "ba"]), 1),
            Err(Error::LevelTooSmall { required: 2, requested: 1 })
        );
        // Refining at the current maximum length is a no-op on uniform codes.
        assert_eq!(refine_code(&code(&["a", "b"]), 1).unwrap(), code(&["a", "b"]));
    }

    #[test]
    fn refined_cardinality_matches_kraft_count() {
        let c = code(&["a", "ba", "bb"]);
        let refined = refine_code(&c, 4).unwrap();
        let expected: usize = c.iter().map(|w| 1usize << (4 - w.len())).sum();
        assert_eq!(refined.len(), expected);
        assert!(is_complete_code(&refined));
    }

    #[test]
    fn word_text_round_trip() {
        for s in ["e", "a", "b", "abba", "bbbb"] {
            assert_eq!(w(s).to_string(), s);
        }
        assert!("".parse::<Word>().is_err());
        assert!("abc".parse::<Word>().is_err());
    }

    proptest! {
        #[test]
        fn prefix_relation_is_antisymmetric(x in "[ab]{0,8}", y in "[ab]{0,8}") {
            let (x, y) = (w(if x.is_empty() { "e" } else { &x }), w(if y.is_empty() { "e" } else { &y }));
            let forward = prefix_relation(&x, &y);
            let backward = prefix_relation(&y, &x);
            let expected = match forward {
                PrefixRelation::Equal => PrefixRelation::Equal,
                PrefixRelation::FirstProperPrefix => PrefixRelation::SecondProperPrefix,
                PrefixRelation::SecondProperPrefix => PrefixRelation::FirstProperPrefix,
                PrefixRelation::Incomparable => PrefixRelation::Incomparable,
            };
            prop_assert_eq!(backward, expected);
        }

        #[test]
        fn refinement_of_complete_codes_stays_complete(seed in 0u64..1000) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let c = crate::sampling::random_complete_code(&mut rng, 6, 4);
            prop_assert!(is_complete_code(&c));
            let m = c.max_len() + 1;
            let refined = refine_code(&c, m).unwrap();
            prop_assert!(is_complete_code(&refined));
            prop_assert_eq!(refined.len(), 1usize << m);
            for word in refined.iter() {
                prop_assert_eq!(word.len(), m);
            }
        }
    }
}
