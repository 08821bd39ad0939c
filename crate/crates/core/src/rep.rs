//! The representation on eventually periodic infinite paths.
//!
//! The algebra acts on the free module over infinite letter sequences:
//! a word `w` maps `ξ ↦ wξ`, and `w*` maps `wξ ↦ ξ` and kills everything
//! outside the cylinder `Z(w)`. Restricted to *eventually periodic* paths
//! (`prefix · cycle^∞`) this is exact and decidable, which makes it the
//! independent oracle of choice for algebra identities: the action of a
//! product must match the composite action, coefficient for coefficient.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::algebra::AlgebraElement;
use crate::error::Error;
use crate::ring::{Ring, Scalar};
use crate::words::{Letter, Word};
use crate::Result;

/// An eventually periodic path `prefix · cycle^∞` in canonical form: the
/// cycle is primitive (not a proper power) and the prefix is as short as
/// possible. Canonical forms are unique, so derived equality is path
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventuallyPeriodicPath {
    prefix: Word,
    cycle: Word,
}

impl EventuallyPeriodicPath {
    /// Canonicalizes `prefix · cycle^∞`. The cycle must be nonempty.
    ///
    /// First the cycle is cut to its primitive root; then trailing letters
    /// of the prefix that agree with the cycle's last letter are absorbed by
    /// rotating the cycle (`p·x · (c'·x)^∞ = p · (x·c')^∞` read right to
    /// left). Once the prefix is minimal the pair is determined by the path.
    pub fn new(prefix: Word, cycle: Word) -> Result<EventuallyPeriodicPath> {
        if cycle.is_empty() {
            return Err(Error::EmptyCycle);
        }
        let mut cycle = primitive_root(&cycle);
        let mut letters = prefix.letters().to_vec();
        while letters.last().copied() == cycle.last() {
            letters.pop();
            let (head, last) = cycle.parent().expect("cycle nonempty");
            cycle = Word::letter(last).concat(&head);
        }
        Ok(EventuallyPeriodicPath {
            prefix: Word::from_letters(letters),
            cycle,
        })
    }

    /// The purely periodic path `cycle^∞`.
    pub fn periodic(cycle: Word) -> Result<EventuallyPeriodicPath> {
        EventuallyPeriodicPath::new(Word::empty(), cycle)
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn cycle(&self) -> &Word {
        &self.cycle
    }

    /// The k-th letter of the infinite sequence, 0-based.
    pub fn letter_at(&self, k: usize) -> Letter {
        if k < self.prefix.len() {
            self.prefix.letters()[k]
        } else {
            let i = (k - self.prefix.len()) % self.cycle.len();
            self.cycle.letters()[i]
        }
    }

    /// The first `n` letters as a word.
    pub fn unroll(&self, n: usize) -> Word {
        Word::from_letters((0..n).map(|k| self.letter_at(k)))
    }

    /// Whether the infinite sequence begins with `w`.
    pub fn starts_with(&self, w: &Word) -> bool {
        w.letters()
            .iter()
            .enumerate()
            .all(|(k, l)| self.letter_at(k) == *l)
    }

    /// The path with the first `k` letters removed.
    pub fn strip(&self, k: usize) -> EventuallyPeriodicPath {
        if k <= self.prefix.len() {
            let rest = Word::from_letters(self.prefix.letters()[k..].iter().copied());
            EventuallyPeriodicPath::new(rest, self.cycle.clone()).expect("cycle nonempty")
        } else {
            let r = (k - self.prefix.len()) % self.cycle.len();
            let letters = self.cycle.letters();
            let rotated =
                Word::from_letters(letters[r..].iter().chain(&letters[..r]).copied());
            EventuallyPeriodicPath::periodic(rotated).expect("cycle nonempty")
        }
    }

    /// The path `w · self`.
    pub fn prepend(&self, w: &Word) -> EventuallyPeriodicPath {
        EventuallyPeriodicPath::new(w.concat(&self.prefix), self.cycle.clone())
            .expect("cycle nonempty")
    }
}

/// The shortest word whose repetition gives `w`.
fn primitive_root(w: &Word) -> Word {
    let n = w.len();
    for len in 1..=n {
        if n % len != 0 {
            continue;
        }
        let root = &w.letters()[..len];
        if w.letters().chunks(len).all(|chunk| chunk == root) {
            return Word::from_letters(root.iter().copied());
        }
    }
    unreachable!("a word is a power of itself")
}

impl fmt::Display for EventuallyPeriodicPath {
    /// `prefix(cycle)^w`, e.g. `a(ba)^w` or `e(ab)^w`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})^w", self.prefix, self.cycle)
    }
}

impl FromStr for EventuallyPeriodicPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<EventuallyPeriodicPath> {
        let bad = || Error::Parse(format!("invalid path {s:?}, expected prefix(cycle)^w"));
        let (head, tail) = s.split_once('(').ok_or_else(bad)?;
        let (cycle, suffix) = tail.split_once(')').ok_or_else(bad)?;
        if suffix != "^w" {
            return Err(bad());
        }
        let prefix: Word = if head.is_empty() { Word::empty() } else { head.parse()? };
        EventuallyPeriodicPath::new(prefix, cycle.parse()?)
    }
}

/// A finite linear combination of eventually periodic paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathVector {
    ring: Ring,
    entries: BTreeMap<EventuallyPeriodicPath, Scalar>,
}

impl PathVector {
    pub fn zero(ring: Ring) -> PathVector {
        PathVector {
            ring,
            entries: BTreeMap::new(),
        }
    }

    /// The basis vector of a single path.
    pub fn single(ring: Ring, path: EventuallyPeriodicPath) -> PathVector {
        PathVector::from_entries(ring, [(ring.one(), path)])
    }

    pub fn from_entries(
        ring: Ring,
        entries: impl IntoIterator<Item = (Scalar, EventuallyPeriodicPath)>,
    ) -> PathVector {
        let mut v = PathVector::zero(ring);
        for (c, p) in entries {
            v.accumulate(p, c);
        }
        v
    }

    fn accumulate(&mut self, path: EventuallyPeriodicPath, c: Scalar) {
        use std::collections::btree_map::Entry;
        match self.entries.entry(path) {
            Entry::Vacant(e) => {
                if !self.ring.is_zero(&c) {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                let sum = self.ring.add(e.get(), &c);
                if self.ring.is_zero(&sum) {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&EventuallyPeriodicPath, &Scalar)> {
        self.entries.iter()
    }
}

impl fmt::Display for PathVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if self.ring.is_one(c) {
                write!(f, "{p}")?;
            } else {
                write!(f, "{c} {p}")?;
            }
        }
        Ok(())
    }
}

/// Applies an algebra element to a path vector.
///
/// On a monomial, `αβ*` sends `βξ' ↦ αξ'` and kills paths outside `Z(β)`;
/// the action extends bilinearly and lands back on canonical paths.
pub fn apply_element(x: &AlgebraElement, v: &PathVector) -> Result<PathVector> {
    if x.ring() != v.ring() {
        return Err(Error::RingMismatch(x.ring(), v.ring()));
    }
    let ring = v.ring();
    let mut out = PathVector::zero(ring);
    for (mono, c) in x.terms() {
        for (path, d) in v.entries() {
            if path.starts_with(&mono.beta) {
                let moved = path.strip(mono.beta.len()).prepend(&mono.alpha);
                out.accumulate(moved, ring.mul(c, d));
            }
        }
    }
    Ok(out)
}
