//! Thompson's group V as prefix-replacement tables.
//!
//! An element is a bijection between two complete prefix codes: the pair
//! `(range α, domain β)` sends every path `βξ` to `αξ`. Tables compose by
//! refining cylinders, invert by swapping the two columns, and map into the
//! unitary group of the algebra via `g ↦ Σ αᵢβᵢ*`. Going the other way,
//! [`Table::from_unitary`] decides membership in the image `U_V` and names
//! the obstruction when it fails.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::algebra::{AlgebraElement, Sign};
use crate::error::{Error, UvObstruction};
use crate::rep::EventuallyPeriodicPath;
use crate::ring::Ring;
use crate::words::{is_complete_code, prefix_relation, Letter, PrefixCode, PrefixRelation, Word};
use crate::Result;

/// One row of a table: the homeomorphism sends `domain·ξ` to `range·ξ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TablePair {
    pub range: Word,
    pub domain: Word,
}

impl TablePair {
    pub fn new(range: Word, domain: Word) -> TablePair {
        TablePair { range, domain }
    }
}

/// An element of Thompson's group V: a bijection between two complete
/// prefix codes, stored as rows sorted by domain word.
///
/// Equality is equality *as homeomorphisms*: both sides are reduced to
/// their minimal tables before comparing rows. Use [`Table::pairs`] when
/// the literal unreduced rows matter.
#[derive(Debug, Clone)]
pub struct Table {
    pairs: Vec<TablePair>,
}

impl Table {
    /// Validates and sorts a list of rows into a table.
    ///
    /// Both columns must be complete prefix codes and the rows must pair
    /// them bijectively.
    pub fn new(pairs: impl IntoIterator<Item = TablePair>) -> Result<Table> {
        let mut pairs: Vec<TablePair> = pairs.into_iter().collect();
        if pairs.is_empty() {
            return Err(Error::InvalidTable("a table needs at least one row".into()));
        }
        pairs.sort_by(|p, q| p.domain.cmp(&q.domain));
        let domains: BTreeSet<Word> = pairs.iter().map(|p| p.domain.clone()).collect();
        if domains.len() != pairs.len() {
            return Err(Error::InvalidTable("duplicate domain word".into()));
        }
        let ranges: BTreeSet<Word> = pairs.iter().map(|p| p.range.clone()).collect();
        if ranges.len() != pairs.len() {
            return Err(Error::InvalidTable("duplicate range word".into()));
        }
        let domain_code = PrefixCode::new(domains)
            .map_err(|_| Error::InvalidTable("domain words are not an antichain".into()))?;
        if !is_complete_code(&domain_code) {
            return Err(Error::InvalidTable("domain code is not complete".into()));
        }
        let range_code = PrefixCode::new(ranges)
            .map_err(|_| Error::InvalidTable("range words are not an antichain".into()))?;
        if !is_complete_code(&range_code) {
            return Err(Error::InvalidTable("range code is not complete".into()));
        }
        Ok(Table { pairs })
    }

    /// The identity homeomorphism, `{e -> e}`.
    pub fn identity() -> Table {
        Table {
            pairs: vec![TablePair::new(Word::empty(), Word::empty())],
        }
    }

    /// Rows in domain order. These are the literal rows, not a reduced
    /// representative.
    pub fn pairs(&self) -> &[TablePair] {
        &self.pairs
    }

    pub fn domain_code(&self) -> PrefixCode {
        PrefixCode::new(self.pairs.iter().map(|p| p.domain.clone()))
            .expect("table invariant: domain words form a code")
    }

    pub fn range_code(&self) -> PrefixCode {
        PrefixCode::new(self.pairs.iter().map(|p| p.range.clone()))
            .expect("table invariant: range words form a code")
    }

    /// The composite `self ∘ other` (apply `other` first).
    ///
    /// Each row of `other` with range `α` is matched against the rows of
    /// `self` whose domains meet the cylinder `Z(α)`; refining by the
    /// common extension yields one row per overlap. The result is not
    /// reduced.
    pub fn compose(&self, other: &Table) -> Table {
        let mut pairs = Vec::new();
        for h in &other.pairs {
            for g in &self.pairs {
                match prefix_relation(&g.domain, &h.range) {
                    PrefixRelation::Equal | PrefixRelation::FirstProperPrefix => {
                        // h.range = g.domain · γ: Z(h.range) sits inside the
                        // g-row, which translates it by γ.
                        let gamma = h.range.strip_prefix(&g.domain).expect("prefix checked");
                        pairs.push(TablePair::new(g.range.concat(&gamma), h.domain.clone()));
                    }
                    PrefixRelation::SecondProperPrefix => {
                        // g.domain = h.range · γ with γ nonempty: only the
                        // γ-part of the h-row lands in the g-row.
                        let gamma = g.domain.strip_prefix(&h.range).expect("prefix checked");
                        pairs.push(TablePair::new(g.range.clone(), h.domain.concat(&gamma)));
                    }
                    PrefixRelation::Incomparable => {}
                }
            }
        }
        Table::new(pairs).expect("refining two tables yields a table")
    }

    /// The inverse homeomorphism: the same rows with the columns swapped.
    pub fn inverse(&self) -> Table {
        Table::new(
            self.pairs
                .iter()
                .map(|p| TablePair::new(p.domain.clone(), p.range.clone())),
        )
        .expect("swapping the columns of a table yields a table")
    }

    /// The minimal table for the same homeomorphism: sibling rows
    /// `(αa, βa), (αb, βb)` merge into `(α, β)` until none remain.
    pub fn reduce(&self) -> Table {
        let mut map: BTreeMap<Word, Word> = self
            .pairs
            .iter()
            .map(|p| (p.domain.clone(), p.range.clone()))
            .collect();
        loop {
            let mut merge: Option<(Word, Word)> = None;
            for (domain, range) in &map {
                let (Some((dp, Letter::A)), Some((rp, Letter::A))) =
                    (domain.parent(), range.parent())
                else {
                    continue;
                };
                let sibling = map.get(&dp.append(Letter::B));
                if sibling == Some(&rp.append(Letter::B)) {
                    merge = Some((dp, rp));
                    break;
                }
            }
            match merge {
                Some((dp, rp)) => {
                    map.remove(&dp.append(Letter::A));
                    map.remove(&dp.append(Letter::B));
                    map.insert(dp, rp);
                }
                None => break,
            }
        }
        Table {
            pairs: map
                .into_iter()
                .map(|(domain, range)| TablePair::new(range, domain))
                .collect(),
        }
    }

    /// The unitary `Σ αᵢβᵢ*` realizing this table in the algebra.
    pub fn to_unitary(&self, ring: Ring) -> AlgebraElement {
        AlgebraElement::from_terms(
            ring,
            self.pairs
                .iter()
                .map(|p| (ring.one(), p.range.clone(), p.domain.clone())),
        )
    }

    /// Recognizes elements of `U_V`, the image of V in the unitary group:
    /// returns the reduced table with `to_unitary(table) = x`, or the
    /// obstruction.
    ///
    /// Over ℤ and ℚ the reduced form decides membership: `x ∈ U_V` iff the
    /// reduced form exists with every sign `+`. Over ℤ/n there is no such
    /// theorem, so the expansion at the maximal domain length is checked
    /// directly: every coefficient 1, domains distinct, and both columns
    /// complete codes.
    pub fn from_unitary(x: &AlgebraElement) -> Result<Table> {
        let pairs = match x.ring() {
            Ring::Integers | Ring::Rationals => {
                let reduced = x.reduced_form().map_err(|e| match e {
                    Error::NotUnitary => Error::NotInUV(UvObstruction::NotUnitary),
                    Error::NotReducible(o) => Error::NotInUV(o.into()),
                    other => other,
                })?;
                let mut pairs = Vec::new();
                for term in reduced.terms() {
                    if term.sign == Sign::Minus {
                        return Err(Error::NotInUV(UvObstruction::NegativeSign));
                    }
                    pairs.push(TablePair::new(term.alpha.clone(), term.beta.clone()));
                }
                pairs
            }
            Ring::IntegersMod(_) => {
                if !x.is_unitary() {
                    return Err(Error::NotInUV(UvObstruction::NotUnitary));
                }
                let level = x.max_beta_len();
                let mut pairs = Vec::new();
                let mut seen = BTreeSet::new();
                for (c, alpha, beta) in x.uniform_beta_expand(level)? {
                    if !seen.insert(beta.clone()) {
                        return Err(Error::NotInUV(UvObstruction::DuplicateBeta(beta)));
                    }
                    if !x.ring().is_one(&c) {
                        return Err(Error::NotInUV(UvObstruction::NonUnitCoefficient(
                            c.to_string(),
                        )));
                    }
                    pairs.push(TablePair::new(alpha, beta));
                }
                if seen.len() != 1usize << level {
                    return Err(Error::NotInUV(UvObstruction::IncompleteCode));
                }
                let ranges: BTreeSet<Word> = pairs.iter().map(|p| p.range.clone()).collect();
                if ranges.len() != pairs.len() {
                    return Err(Error::NotInUV(UvObstruction::IncompleteCode));
                }
                let range_code = PrefixCode::new(ranges)
                    .map_err(|_| Error::NotInUV(UvObstruction::IncompleteCode))?;
                if !is_complete_code(&range_code) {
                    return Err(Error::NotInUV(UvObstruction::IncompleteCode));
                }
                pairs
            }
        };
        Ok(Table::new(pairs)
            .expect("recognized rows form a table")
            .reduce())
    }

    /// Applies the homeomorphism to a point of the path space.
    pub fn act(&self, path: &EventuallyPeriodicPath) -> EventuallyPeriodicPath {
        for p in &self.pairs {
            if path.starts_with(&p.domain) {
                return path.strip(p.domain.len()).prepend(&p.range);
            }
        }
        unreachable!("the domain code is complete, so some row matches")
    }

    /// The exact fixed-point set of the homeomorphism.
    ///
    /// The table is reduced first; then each row contributes independently
    /// inside its domain cylinder: a row `(α, α)` fixes all of `Z(α)`, a
    /// row with `β = αδ` or `α = βδ` (δ nonempty) fixes exactly the point
    /// `αδ^∞ = βδ^∞`, and an incomparable row fixes nothing.
    pub fn fixed_points(&self) -> FixedPoints {
        let mut cylinders = Vec::new();
        let mut isolated = BTreeSet::new();
        for p in &self.reduce().pairs {
            match prefix_relation(&p.range, &p.domain) {
                PrefixRelation::Equal => cylinders.push(p.domain.clone()),
                PrefixRelation::FirstProperPrefix => {
                    // domain = range · δ: the fixed equation ξ = δξ forces
                    // the tail δ^∞.
                    let delta = p.domain.strip_prefix(&p.range).expect("prefix checked");
                    isolated.insert(
                        EventuallyPeriodicPath::new(p.range.clone(), delta)
                            .expect("δ nonempty"),
                    );
                }
                PrefixRelation::SecondProperPrefix => {
                    let delta = p.range.strip_prefix(&p.domain).expect("prefix checked");
                    isolated.insert(
                        EventuallyPeriodicPath::new(p.domain.clone(), delta)
                            .expect("δ nonempty"),
                    );
                }
                PrefixRelation::Incomparable => {}
            }
        }
        FixedPoints {
            cylinders: PrefixCode::new(cylinders)
                .expect("fixed cylinders are a subset of the domain code"),
            isolated,
        }
    }

    /// Fixed-point sets of `g^k` for `1 ≤ k ≤ bound`.
    ///
    /// A point has finite orbit of length dividing `k` exactly when it is
    /// fixed by `g^k`, so the report localizes every finite orbit of
    /// length up to the bound. Lengths beyond the bound are not ruled out.
    pub fn finite_orbit_search(&self, bound: u32) -> Vec<(u32, FixedPoints)> {
        let mut report = Vec::new();
        let mut power = Table::identity();
        for k in 1..=bound {
            power = power.compose(self).reduce();
            report.push((k, power.fixed_points()));
        }
        report
    }
}

impl PartialEq for Table {
    /// Tables are equal when they define the same homeomorphism, i.e.
    /// their reduced rows coincide.
    fn eq(&self, other: &Table) -> bool {
        self.reduce().pairs == other.reduce().pairs
    }
}

impl Eq for Table {}

impl fmt::Display for Table {
    /// `{domain -> range; ...}` in domain order, e.g. `{a -> b; b -> a}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{} -> {}", p.domain, p.range)?;
        }
        write!(f, "}}")
    }
}

impl FromStr for Table {
    type Err = Error;

    fn from_str(s: &str) -> Result<Table> {
        let body = s
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("invalid table {s:?}, expected {{β -> α; ...}}")))?;
        let mut pairs = Vec::new();
        for row in body.split(';') {
            let (domain, range) = row.split_once("->").ok_or_else(|| {
                Error::Parse(format!("invalid table row {:?}, expected β -> α", row.trim()))
            })?;
            pairs.push(TablePair::new(range.trim().parse()?, domain.trim().parse()?));
        }
        Table::new(pairs)
    }
}

/// The exact fixed-point set of a table: a disjoint union of wholly fixed
/// cylinders and finitely many isolated eventually periodic points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPoints {
    cylinders: PrefixCode,
    isolated: BTreeSet<EventuallyPeriodicPath>,
}

impl FixedPoints {
    pub fn cylinders(&self) -> &PrefixCode {
        &self.cylinders
    }

    pub fn isolated(&self) -> &BTreeSet<EventuallyPeriodicPath> {
        &self.isolated
    }

    pub fn is_empty(&self) -> bool {
        self.cylinders.is_empty() && self.isolated.is_empty()
    }

    /// Whether the whole space is fixed.
    pub fn is_everything(&self) -> bool {
        self.cylinders.contains(&Word::empty())
    }

    pub fn contains(&self, path: &EventuallyPeriodicPath) -> bool {
        self.cylinders.iter().any(|w| path.starts_with(w)) || self.isolated.contains(path)
    }
}

impl fmt::Display for FixedPoints {
    /// `cylinders {a}; isolated {b(ab)^w}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cylinders {}; isolated {{", self.cylinders)?;
        for (i, p) in self.isolated.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}
