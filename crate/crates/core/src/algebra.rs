//! Elements of `L(2,R)` on the canonical monomial basis.
//!
//! Every element is a finite `R`-linear combination of monomials `α·β*` with
//! `α`, `β` words over `{a, b}`. The relation `aa* + bb* = 1` makes the raw
//! monomials linearly dependent; the canonical basis keeps exactly those
//! `α·β*` in which `α` and `β` do **not** both end in the letter `b`, and the
//! rewrite
//!
//! ```text
//! (αb)(βb)* = αβ* − (αa)(βa)*
//! ```
//!
//! pushes every raw term onto that basis (each step shortens total length by
//! two, so it terminates; the target really is a basis, so coordinates are
//! unique and equality of elements is equality of coordinate maps).
//!
//! Terms are kept ordered by `(β, α)` throughout, which fixes the printed
//! form, the JSON form and every reported word list.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, ReduceObstruction};
use crate::linalg;
use crate::ring::{Ring, Scalar};
use crate::words::{is_complete_code, prefix_relation, Letter, PrefixCode, PrefixRelation, Word};
use crate::Result;

/// A basis monomial `α·β*`.
///
/// The ordering compares `(β, α)` lexicographically — the term order used
/// everywhere an element is serialised.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub alpha: Word,
    pub beta: Word,
}

impl Monomial {
    pub fn new(alpha: Word, beta: Word) -> Monomial {
        Monomial { alpha, beta }
    }

    /// `1 = e·e*`.
    pub fn unit() -> Monomial {
        Monomial::new(Word::empty(), Word::empty())
    }

    /// Whether this monomial lies on the canonical basis: not both words
    /// may end in `b`.
    pub fn is_basis_admissible(&self) -> bool {
        !(self.alpha.last() == Some(Letter::B) && self.beta.last() == Some(Letter::B))
    }

    /// `(α·β*)* = β·α*`. Admissibility is symmetric in the two words, so the
    /// adjoint of a basis monomial is again a basis monomial.
    pub fn adjoint(&self) -> Monomial {
        Monomial::new(self.beta.clone(), self.alpha.clone())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.beta, &self.alpha).cmp(&(&other.beta, &other.alpha))
    }
}

impl fmt::Display for Monomial {
    /// `αβ*` in the expression syntax: `α`'s letters, then `β`'s letters
    /// reversed and primed (`(ba)* = a*b*` prints `a'b'`). The unit prints
    /// as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alpha.is_empty() && self.beta.is_empty() {
            return write!(f, "1");
        }
        for l in self.alpha.letters() {
            write!(f, "{}", l.as_char())?;
        }
        for l in self.beta.letters().iter().rev() {
            write!(f, "{}'", l.as_char())?;
        }
        Ok(())
    }
}

/// An element of `L(2,R)` in canonical coordinates: a map from basis
/// monomials to nonzero scalars of `self.ring()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    ring: Ring,
    terms: BTreeMap<Monomial, Scalar>,
}

impl AlgebraElement {
    pub fn zero(ring: Ring) -> AlgebraElement {
        AlgebraElement {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: Ring) -> AlgebraElement {
        AlgebraElement::scalar(ring, ring.one())
    }

    /// A scalar multiple of the unit.
    pub fn scalar(ring: Ring, c: Scalar) -> AlgebraElement {
        AlgebraElement::from_terms(ring, [(c, Word::empty(), Word::empty())])
    }

    /// The generator `a`.
    pub fn gen_a(ring: Ring) -> AlgebraElement {
        AlgebraElement::word(ring, &Word::letter(Letter::A))
    }

    /// The generator `b`.
    pub fn gen_b(ring: Ring) -> AlgebraElement {
        AlgebraElement::word(ring, &Word::letter(Letter::B))
    }

    /// The monomial `w·e*` for a word `w`.
    pub fn word(ring: Ring, w: &Word) -> AlgebraElement {
        AlgebraElement::from_terms(ring, [(ring.one(), w.clone(), Word::empty())])
    }

    /// The monomial `c·αβ*`, canonicalized.
    pub fn monomial(ring: Ring, c: Scalar, alpha: Word, beta: Word) -> AlgebraElement {
        AlgebraElement::from_terms(ring, [(c, alpha, beta)])
    }

    /// Canonicalizes an arbitrary linear combination of raw monomials.
    ///
    /// This is the only way coordinates are ever produced, so every public
    /// element is canonical by construction.
    pub fn from_terms(
        ring: Ring,
        raw: impl IntoIterator<Item = (Scalar, Word, Word)>,
    ) -> AlgebraElement {
        let mut terms = BTreeMap::new();
        for (c, alpha, beta) in raw {
            add_canonical(&ring, &mut terms, c, alpha, beta);
        }
        AlgebraElement { ring, terms }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Canonical terms in `(β, α)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub(crate) fn terms_map(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    /// Length of the longest right-hand word, 0 for the zero element.
    pub fn max_beta_len(&self) -> usize {
        self.terms.keys().map(|m| m.beta.len()).max().unwrap_or(0)
    }

    fn check_ring(&self, other: &AlgebraElement) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        Ok(())
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_scaled(&self.ring, &mut out.terms, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AlgebraElement {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), self.ring.neg(c)))
            .collect();
        AlgebraElement {
            ring: self.ring,
            terms,
        }
    }

    /// Multiplies by a scalar of the same ring.
    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        let mut terms = BTreeMap::new();
        for (m, v) in &self.terms {
            let cv = self.ring.mul(c, v);
            if !self.ring.is_zero(&cv) {
                terms.insert(m.clone(), cv);
            }
        }
        AlgebraElement {
            ring: self.ring,
            terms,
        }
    }

    /// Product in `L(2,R)`.
    ///
    /// On monomials `(αβ*)(γδ*)` is `α γ' δ*` when `γ = β γ'`, is
    /// `α (δ β')*` when `β = γ β'`, and vanishes when `β`, `γ` are
    /// incomparable; the result is re-canonicalized.
    pub fn mul(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &AlgebraElement) -> AlgebraElement {
        let ring = self.ring;
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c = ring.mul(c1, c2);
                match prefix_relation(&m1.beta, &m2.alpha) {
                    PrefixRelation::Equal => {
                        add_canonical(&ring, &mut terms, c, m1.alpha.clone(), m2.beta.clone());
                    }
                    PrefixRelation::FirstProperPrefix => {
                        // γ = β γ'
                        let gamma_tail = m2.alpha.strip_prefix(&m1.beta).expect("prefix");
                        add_canonical(
                            &ring,
                            &mut terms,
                            c,
                            m1.alpha.concat(&gamma_tail),
                            m2.beta.clone(),
                        );
                    }
                    PrefixRelation::SecondProperPrefix => {
                        // β = γ β'
                        let beta_tail = m1.beta.strip_prefix(&m2.alpha).expect("prefix");
                        add_canonical(
                            &ring,
                            &mut terms,
                            c,
                            m1.alpha.clone(),
                            m2.beta.concat(&beta_tail),
                        );
                    }
                    PrefixRelation::Incomparable => {}
                }
            }
        }
        AlgebraElement { ring, terms }
    }

    /// The involution `Σ c αβ* ↦ Σ c βα*`; an anti-homomorphism fixing the
    /// coefficient ring pointwise.
    pub fn adjoint(&self) -> AlgebraElement {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.adjoint(), c.clone()))
            .collect();
        AlgebraElement {
            ring: self.ring,
            terms,
        }
    }

    /// `x^k` by iterated multiplication, `x^0 = 1`.
    pub fn pow(&self, k: u32) -> AlgebraElement {
        let mut acc = AlgebraElement::one(self.ring);
        for _ in 0..k {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Whether `x*x = 1 = xx*`.
    pub fn is_unitary(&self) -> bool {
        let star = self.adjoint();
        let one = AlgebraElement::one(self.ring);
        star.mul_unchecked(self) == one && self.mul_unchecked(&star) == one
    }

    /// Rewrites the element with every right-hand word extended to length
    /// exactly `m`, using `1 = Σ_{|γ|=m-|β|} γγ*` on each term.
    ///
    /// The output is a collected list of raw `(coefficient, α, β)` triples in
    /// `(β, α)` order — deliberately *not* re-canonicalized, since the whole
    /// point is the uniform shape. Fails if some canonical term already has
    /// `|β| > m`.
    pub fn uniform_beta_expand(&self, m: usize) -> Result<Vec<(Scalar, Word, Word)>> {
        let required = self.max_beta_len();
        if m < required {
            return Err(Error::LevelTooSmall {
                required,
                requested: m,
            });
        }
        let mut collected: BTreeMap<(Word, Word), Scalar> = BTreeMap::new();
        for (mono, c) in &self.terms {
            for tail in Word::all_of_length(m - mono.beta.len()) {
                let key = (mono.beta.concat(&tail), mono.alpha.concat(&tail));
                let entry = collected.entry(key).or_insert_with(|| self.ring.zero());
                *entry = self.ring.add(entry, c);
            }
        }
        Ok(collected
            .into_iter()
            .filter(|(_, c)| !self.ring.is_zero(c))
            .map(|((beta, alpha), c)| (c, alpha, beta))
            .collect())
    }

    /// Whether the level-`m` expansion has every collected coefficient equal
    /// to 1, i.e. the element is a plain sum of monomials at that level.
    pub fn is_coefficient_free_at_level(&self, m: usize) -> Result<bool> {
        let one = self.ring.one();
        Ok(self.uniform_beta_expand(m)?.iter().all(|(c, _, _)| *c == one))
    }

    /// Signed reduced form of a unitary over ℤ or ℚ.
    ///
    /// Expands to the uniform level `m = max |β|`, then demands what the
    /// theory guarantees there: pairwise distinct `β` forming a complete
    /// code, coefficients ±1, and left-hand words forming a complete
    /// antichain. The surviving `(sign, α, β)` triples are then merged back
    /// down wherever both children of a split carry the same sign.
    pub fn reduced_form(&self) -> Result<UnitaryReducedForm> {
        match self.ring {
            Ring::Integers | Ring::Rationals => {}
            ring => {
                return Err(Error::UnsupportedRing {
                    ring,
                    operation: "signed reduced form",
                })
            }
        }
        if !self.is_unitary() {
            return Err(Error::NotUnitary);
        }
        let expanded = self.uniform_beta_expand(self.max_beta_len())?;

        let mut by_beta: BTreeMap<Word, (Sign, Word)> = BTreeMap::new();
        for (c, alpha, beta) in expanded {
            if by_beta.contains_key(&beta) {
                return Err(Error::NotReducible(ReduceObstruction::DuplicateBeta(beta)));
            }
            let sign = if self.ring.is_one(&c) {
                Sign::Plus
            } else if self.ring.is_minus_one(&c) {
                Sign::Minus
            } else {
                return Err(Error::NotReducible(ReduceObstruction::NonUnitCoefficient(
                    c.to_string(),
                )));
            };
            by_beta.insert(beta, (sign, alpha));
        }

        let beta_code = PrefixCode::new(by_beta.keys().cloned())
            .map_err(|_| Error::NotReducible(ReduceObstruction::IncompleteBetaCode))?;
        if !is_complete_code(&beta_code) {
            return Err(Error::NotReducible(ReduceObstruction::IncompleteBetaCode));
        }
        let alpha_code = PrefixCode::new(by_beta.values().map(|(_, a)| a.clone()))
            .map_err(|_| Error::NotReducible(ReduceObstruction::AlphaNotAntichain))?;
        if !is_complete_code(&alpha_code) {
            return Err(Error::NotReducible(ReduceObstruction::IncompleteAlphaCode));
        }

        // Merge back: (s, αa, βa) + (s, αb, βb) → (s, α, β), exhaustively.
        // All betas start at the same length, and a merge shortens both
        // words by one, so merging level by level is exhaustive: a term
        // that finds no partner at its own level never will.
        let mut current: BTreeMap<(Word, Word), Sign> = by_beta
            .into_iter()
            .map(|(beta, (sign, alpha))| ((beta, alpha), sign))
            .collect();
        let mut terms = Vec::new();
        while !current.is_empty() {
            let mut next = BTreeMap::new();
            while let Some(((beta, alpha), sign)) = current.pop_first() {
                if let (Some((bp, Letter::A)), Some((ap, Letter::A))) =
                    (beta.parent(), alpha.parent())
                {
                    let sibling = (bp.append(Letter::B), ap.append(Letter::B));
                    if current.get(&sibling) == Some(&sign) {
                        current.remove(&sibling);
                        next.insert((bp, ap), sign);
                        continue;
                    }
                }
                terms.push(ReducedTerm { sign, alpha, beta });
            }
            current = next;
        }

        terms.sort_by(|s, t| s.beta.cmp(&t.beta));
        Ok(UnitaryReducedForm {
            ring: self.ring,
            terms,
        })
    }

    /// The unsigned companion `Σ αβ*` of the reduced form: always a table
    /// unitary when it exists.
    pub fn u_plus(&self) -> Result<AlgebraElement> {
        Ok(self.reduced_form()?.drop_signs())
    }

    /// Splits the reduced form by sign: `(u_pp, u_pm)` with `u = u_pp − u_pm`
    /// and `u_plus = u_pp + u_pm`.
    pub fn sign_split(&self) -> Result<(AlgebraElement, AlgebraElement)> {
        let rf = self.reduced_form()?;
        let part = |want: Sign| {
            AlgebraElement::from_terms(
                self.ring,
                rf.terms
                    .iter()
                    .filter(|t| t.sign == want)
                    .map(|t| (self.ring.one(), t.alpha.clone(), t.beta.clone())),
            )
        };
        Ok((part(Sign::Plus), part(Sign::Minus)))
    }

    /// Tests linear independence of `1, u, …, u^d` over the fraction field
    /// (or over ℤ/p).
    ///
    /// Returns `None` when independent, otherwise a nonzero witness `q` of
    /// degree ≤ d with `q(u) = 0`, normalized so its top coefficient is
    /// positive (monic over ℤ/p).
    pub fn full_spectrum_up_to(&self, d: u32) -> Result<Option<UnivariatePolynomial>> {
        let mut powers = Vec::with_capacity(d as usize + 1);
        let mut acc = AlgebraElement::one(self.ring);
        for _ in 0..=d {
            powers.push(acc.clone());
            acc = acc.mul_unchecked(self);
        }
        let columns: Vec<&BTreeMap<Monomial, Scalar>> =
            powers.iter().map(|p| p.terms_map()).collect();
        let rows = linalg::coordinate_rows(&self.ring, &columns);
        let outcome = linalg::kernel(&self.ring, rows, "exact kernel")?;
        match outcome.basis.into_iter().next() {
            None => Ok(None),
            Some(vector) => {
                let coeffs = normalize_leading(&self.ring, vector);
                Ok(Some(UnivariatePolynomial {
                    ring: self.ring,
                    coeffs,
                }))
            }
        }
    }
}

/// Flips the vector (or scales it monic over a prime field) so the highest
/// nonzero coordinate is positive, the convention for reported witnesses.
pub(crate) fn normalize_leading(ring: &Ring, mut v: Vec<Scalar>) -> Vec<Scalar> {
    if let Some(lead) = v.iter().rev().find(|c| !ring.is_zero(c)).cloned() {
        match ring {
            Ring::Integers | Ring::Rationals => {
                if ring.is_negative(&lead) {
                    for c in &mut v {
                        *c = ring.neg(c);
                    }
                }
            }
            Ring::IntegersMod(_) => {
                let inv = ring.inverse(&lead).expect("prime field");
                for c in &mut v {
                    *c = ring.mul(&inv, c);
                }
            }
        }
    }
    v
}

fn add_scaled(ring: &Ring, terms: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    use std::collections::btree_map::Entry;
    match terms.entry(m) {
        Entry::Vacant(e) => {
            if !ring.is_zero(&c) {
                e.insert(c);
            }
        }
        Entry::Occupied(mut e) => {
            let sum = ring.add(e.get(), &c);
            if ring.is_zero(&sum) {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

/// Adds `c·αβ*` to canonical coordinates, rewriting off-basis monomials by
/// `(αb)(βb)* = αβ* − (αa)(βa)*` until everything is admissible.
fn add_canonical(
    ring: &Ring,
    terms: &mut BTreeMap<Monomial, Scalar>,
    c: Scalar,
    alpha: Word,
    beta: Word,
) {
    let mut stack = vec![(c, alpha, beta)];
    while let Some((c, alpha, beta)) = stack.pop() {
        if ring.is_zero(&c) {
            continue;
        }
        if alpha.last() == Some(Letter::B) && beta.last() == Some(Letter::B) {
            let (a_parent, _) = alpha.parent().expect("nonempty");
            let (b_parent, _) = beta.parent().expect("nonempty");
            stack.push((
                ring.neg(&c),
                a_parent.append(Letter::A),
                b_parent.append(Letter::A),
            ));
            stack.push((c, a_parent, b_parent));
        } else {
            add_scaled(ring, terms, Monomial::new(alpha, beta), c);
        }
    }
}

impl fmt::Display for AlgebraElement {
    /// Canonical text form, re-parseable by the expression grammar: terms in
    /// `(β, α)` order joined by ` + `/` - `, coefficient magnitudes omitted
    /// when 1 on a non-unit monomial, `0` for the zero element.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = self.ring.is_negative(c);
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = self.ring.abs(c);
            if m.alpha.is_empty() && m.beta.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !self.ring.is_one(&mag) {
                    write!(f, "{mag}")?;
                }
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::add(self, rhs).expect("ring mismatch")
    }
}

impl std::ops::Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::sub(self, rhs).expect("ring mismatch")
    }
}

impl std::ops::Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::mul(self, rhs).expect("ring mismatch")
    }
}

impl std::ops::Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement::neg(self)
    }
}

/// Sign carried by one reduced-form term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn scalar(self, ring: &Ring) -> Scalar {
        match self {
            Sign::Plus => ring.one(),
            Sign::Minus => ring.neg(&ring.one()),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}

/// One `±αβ*` term of a reduced unitary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedTerm {
    pub sign: Sign,
    pub alpha: Word,
    pub beta: Word,
}

/// A unitary written as `Σ ±αβ*` with both word families complete codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitaryReducedForm {
    ring: Ring,
    /// Terms in `β` order.
    terms: Vec<ReducedTerm>,
}

impl UnitaryReducedForm {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn terms(&self) -> &[ReducedTerm] {
        &self.terms
    }

    /// The element `Σ sign·αβ*` the form denotes.
    pub fn reassemble(&self) -> AlgebraElement {
        AlgebraElement::from_terms(
            self.ring,
            self.terms
                .iter()
                .map(|t| (t.sign.scalar(&self.ring), t.alpha.clone(), t.beta.clone())),
        )
    }

    /// The sign-stripped element `Σ αβ*`.
    pub fn drop_signs(&self) -> AlgebraElement {
        AlgebraElement::from_terms(
            self.ring,
            self.terms
                .iter()
                .map(|t| (self.ring.one(), t.alpha.clone(), t.beta.clone())),
        )
    }
}

impl fmt::Display for UnitaryReducedForm {
    /// Space-separated signed monomials, e.g. `+aa' -bb'`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(
                f,
                "{}{}",
                t.sign,
                Monomial::new(t.alpha.clone(), t.beta.clone())
            )?;
        }
        Ok(())
    }
}

/// A polynomial in one variable `x` over one of the coefficient rings,
/// reported as a witness of linear dependence among powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariatePolynomial {
    ring: Ring,
    /// Coefficient of `x^i` at index `i`; no trailing zeros.
    coeffs: Vec<Scalar>,
}

impl UnivariatePolynomial {
    pub fn new(ring: Ring, mut coeffs: Vec<Scalar>) -> UnivariatePolynomial {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        UnivariatePolynomial { ring, coeffs }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Exact evaluation at an algebra element.
    pub fn eval(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        if x.ring() != self.ring {
            return Err(Error::RingMismatch(self.ring, x.ring()));
        }
        // Horner's rule keeps the power count linear.
        let mut acc = AlgebraElement::zero(self.ring);
        for c in self.coeffs.iter().rev() {
            acc = acc
                .mul(x)?
                .add(&AlgebraElement::scalar(self.ring, c.clone()))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for UnivariatePolynomial {
    /// Descending powers, e.g. `x^2 - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if self.ring.is_zero(c) {
                continue;
            }
            let negative = self.ring.is_negative(c);
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = self.ring.abs(c);
            match deg {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !self.ring.is_one(&mag) {
                        write!(f, "{mag} ")?;
                    }
                    if deg == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{deg}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Shorthand: an integer-linear combination of raw monomials "α|β".
    fn el(ring: Ring, terms: &[(i64, &str, &str)]) -> AlgebraElement {
        AlgebraElement::from_terms(
            ring,
            terms
                .iter()
                .map(|(c, a, b)| (ring.from_i64(*c), w(a), w(b))),
        )
    }

    const Z: Ring = Ring::Integers;

    #[test]
    fn defining_relations_hold_in_canonical_coordinates() {
        let a = AlgebraElement::gen_a(Z);
        let b = AlgebraElement::gen_b(Z);
        let one = AlgebraElement::one(Z);
        let zero = AlgebraElement::zero(Z);
        assert_eq!(&a.adjoint() * &a, one);
        assert_eq!(&b.adjoint() * &b, one);
        assert_eq!(&(&a * &a.adjoint()) + &(&b * &b.adjoint()), one);
        assert_eq!(&a.adjoint() * &b, zero);
        assert_eq!(&b.adjoint() * &a, zero);
    }

    #[test]
    fn canonicalize_examples() {
        // aa* + bb* collapses to 1.
        assert_eq!(el(Z, &[(1, "a", "a"), (1, "b", "b")]), AlgebraElement::one(Z));
        // bb* rewrites off the forbidden monomial.
        assert_eq!(el(Z, &[(1, "b", "b")]), el(Z, &[(1, "e", "e"), (-1, "a", "a")]));
        // ab(bb)* = ab* − aa(ba)*.
        assert_eq!(
            el(Z, &[(1, "ab", "bb")]),
            el(Z, &[(1, "a", "b"), (-1, "aa", "ba")])
        );
        // Already-admissible input is untouched.
        let x = el(Z, &[(3, "ab", "ba")]);
        assert!(x.terms().all(|(m, _)| m.is_basis_admissible()));
    }

    #[test]
    fn canonical_form_is_a_fixed_point() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let x = crate::sampling::random_element(&mut rng, Z, 4, 3, 6);
            assert!(x.terms().all(|(m, _)| m.is_basis_admissible()));
            let again = AlgebraElement::from_terms(
                Z,
                x.terms().map(|(m, c)| (c.clone(), m.alpha.clone(), m.beta.clone())),
            );
            assert_eq!(again, x, "re-canonicalization must not move {x}");
        }
    }

    #[test]
    fn mul_examples() {
        // (ab*)(ba*) = aa*.
        assert_eq!(
            &el(Z, &[(1, "a", "b")]) * &el(Z, &[(1, "b", "a")]),
            el(Z, &[(1, "a", "a")])
        );
        // Incomparable middle words annihilate: a*·b = 0.
        assert_eq!(
            &el(Z, &[(1, "e", "a")]) * &el(Z, &[(1, "b", "e")]),
            AlgebraElement::zero(Z)
        );
        // (aa*)(ab*) = ab*.
        assert_eq!(
            &el(Z, &[(1, "a", "a")]) * &el(Z, &[(1, "a", "b")]),
            el(Z, &[(1, "a", "b")])
        );
    }

    #[test]
    fn mul_is_associative_and_unital_on_random_triples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let one_z = AlgebraElement::one(Z);
        let q2 = Ring::integers_mod(2).unwrap();
        for i in 0..200 {
            let ring = if i % 2 == 0 { Z } else { q2 };
            let x = crate::sampling::random_element(&mut rng, ring, 3, 3, 4);
            let y = crate::sampling::random_element(&mut rng, ring, 3, 3, 4);
            let z = crate::sampling::random_element(&mut rng, ring, 3, 3, 4);
            assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            let one = if ring == Z { one_z.clone() } else { AlgebraElement::one(q2) };
            assert_eq!(&x * &one, x);
            assert_eq!(&one * &x, x);
        }
    }

    #[test]
    fn adjoint_examples_and_laws() {
        // (ab*)* = ba*.
        assert_eq!(el(Z, &[(1, "a", "b")]).adjoint(), el(Z, &[(1, "b", "a")]));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let x = crate::sampling::random_element(&mut rng, Z, 3, 3, 4);
            let y = crate::sampling::random_element(&mut rng, Z, 3, 3, 4);
            assert_eq!(x.adjoint().adjoint(), x);
            assert_eq!((&x * &y).adjoint(), &y.adjoint() * &x.adjoint());
            assert_eq!((&x + &y).adjoint(), &x.adjoint() + &y.adjoint());
        }
    }

    #[test]
    fn unitary_examples() {
        assert!(AlgebraElement::one(Z).is_unitary());
        let swap = el(Z, &[(1, "a", "b"), (1, "b", "a")]);
        assert!(swap.is_unitary());
        // a is a proper isometry: a*a = 1 but aa* ≠ 1.
        assert!(!AlgebraElement::gen_a(Z).is_unitary());
        let diag = el(Z, &[(1, "a", "a"), (-1, "b", "b")]);
        assert!(diag.is_unitary());
        assert!(!el(Z, &[(2, "e", "e")]).is_unitary());
    }

    #[test]
    fn uniform_beta_expand_examples() {
        let one = AlgebraElement::one(Z);
        let i = Z.one();
        assert_eq!(
            one.uniform_beta_expand(1).unwrap(),
            vec![(i.clone(), w("a"), w("a")), (i.clone(), w("b"), w("b"))]
        );
        let x = el(Z, &[(1, "a", "b")]);
        assert_eq!(
            x.uniform_beta_expand(2).unwrap(),
            vec![(i.clone(), w("aa"), w("ba")), (i.clone(), w("ab"), w("bb"))]
        );
        // Terms already at the level pass through unchanged.
        let diag = el(Z, &[(1, "a", "a"), (-1, "b", "b")]);
        assert_eq!(
            diag.uniform_beta_expand(1).unwrap(),
            vec![(i, w("a"), w("a")), (Z.from_i64(-1), w("b"), w("b"))]
        );
        assert_eq!(
            diag.uniform_beta_expand(0),
            Err(Error::LevelTooSmall { required: 1, requested: 0 })
        );
    }

    #[test]
    fn expansion_preserves_the_element() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let x = crate::sampling::random_element(&mut rng, Z, 3, 3, 5);
            let m = x.max_beta_len() + 1;
            let expanded = x.uniform_beta_expand(m).unwrap();
            assert_eq!(AlgebraElement::from_terms(Z, expanded), x);
        }
    }

    #[test]
    fn reduced_form_examples() {
        let diag = el(Z, &[(1, "a", "a"), (-1, "b", "b")]);
        let rf = diag.reduced_form().unwrap();
        assert_eq!(
            rf.terms(),
            &[
                ReducedTerm { sign: Sign::Plus, alpha: w("a"), beta: w("a") },
                ReducedTerm { sign: Sign::Minus, alpha: w("b"), beta: w("b") },
            ]
        );
        assert_eq!(rf.to_string(), "+aa' -bb'");

        let one = AlgebraElement::one(Z);
        let rf1 = one.reduced_form().unwrap();
        assert_eq!(
            rf1.terms(),
            &[ReducedTerm { sign: Sign::Plus, alpha: w("e"), beta: w("e") }]
        );

        let swap = el(Z, &[(1, "a", "b"), (1, "b", "a")]);
        let rfs = swap.reduced_form().unwrap();
        assert_eq!(
            rfs.terms(),
            &[
                ReducedTerm { sign: Sign::Plus, alpha: w("b"), beta: w("a") },
                ReducedTerm { sign: Sign::Plus, alpha: w("a"), beta: w("b") },
            ]
        );

        assert_eq!(AlgebraElement::gen_a(Z).reduced_form(), Err(Error::NotUnitary));
        let m2 = Ring::integers_mod(2).unwrap();
        assert!(matches!(
            AlgebraElement::one(m2).reduced_form(),
            Err(Error::UnsupportedRing { .. })
        ));
    }

    #[test]
    fn reduced_form_merges_same_sign_splits() {
        // -1 expands to -aa* - bb* at level 1 and must merge back to (−, e, e).
        let minus_one = el(Z, &[(-1, "e", "e")]);
        let rf = minus_one.reduced_form().unwrap();
        assert_eq!(
            rf.terms(),
            &[ReducedTerm { sign: Sign::Minus, alpha: w("e"), beta: w("e") }]
        );
        assert_eq!(rf.reassemble(), minus_one);
    }

    #[test]
    fn reduced_form_reassembles_random_unitaries() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        for _ in 0..60 {
            let u = crate::sampling::random_unitary(&mut rng, Z);
            let rf = u.reduced_form().unwrap_or_else(|e| panic!("{u} not reducible: {e}"));
            assert_eq!(rf.reassemble(), u, "reduced form must reassemble to {u}");
            let beta_code = PrefixCode::new(rf.terms().iter().map(|t| t.beta.clone())).unwrap();
            let alpha_code = PrefixCode::new(rf.terms().iter().map(|t| t.alpha.clone())).unwrap();
            assert!(is_complete_code(&beta_code));
            assert!(is_complete_code(&alpha_code));
        }
    }

    #[test]
    fn rational_rotation_is_not_reducible() {
        // (3/5, 4/5) rotation: unitary over ℚ whose expansion collides.
        let q = Ring::Rationals;
        let c = |p: i64, d: i64| q.from_ratio(&p.into(), &d.into()).unwrap();
        let u = AlgebraElement::from_terms(
            q,
            [
                (c(3, 5), w("a"), w("a")),
                (c(-4, 5), w("a"), w("b")),
                (c(4, 5), w("b"), w("a")),
                (c(3, 5), w("b"), w("b")),
            ],
        );
        assert!(u.is_unitary());
        // The scan hits the 3/5 coefficient on the first term, before the
        // repeated right word comes into view.
        assert!(matches!(
            u.reduced_form(),
            Err(Error::NotReducible(ReduceObstruction::NonUnitCoefficient(_)))
        ));
    }

    #[test]
    fn u_plus_and_sign_split_examples() {
        let swap = el(Z, &[(1, "a", "b"), (1, "b", "a")]);
        assert_eq!(swap.u_plus().unwrap(), swap);
        assert_eq!(swap.sign_split().unwrap(), (swap.clone(), AlgebraElement::zero(Z)));

        let diag = el(Z, &[(1, "a", "a"), (-1, "b", "b")]);
        assert_eq!(diag.u_plus().unwrap(), AlgebraElement::one(Z));
        assert_eq!(
            diag.sign_split().unwrap(),
            (el(Z, &[(1, "a", "a")]), el(Z, &[(1, "b", "b")]))
        );

        let minus_one = el(Z, &[(-1, "e", "e")]);
        assert_eq!(minus_one.u_plus().unwrap(), AlgebraElement::one(Z));
        assert_eq!(
            minus_one.sign_split().unwrap(),
            (AlgebraElement::zero(Z), AlgebraElement::one(Z))
        );
    }

    #[test]
    fn sign_split_reassembles_random_unitaries() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..40 {
            let u = crate::sampling::random_unitary(&mut rng, Z);
            let (pp, pm) = u.sign_split().unwrap();
            assert_eq!(&pp - &pm, u);
            assert_eq!(&pp + &pm, u.u_plus().unwrap());
        }
    }

    #[test]
    fn full_spectrum_examples() {
        let one = AlgebraElement::one(Z);
        let witness = one.full_spectrum_up_to(1).unwrap().unwrap();
        assert_eq!(witness.to_string(), "x - 1");
        assert_eq!(witness.eval(&one).unwrap(), AlgebraElement::zero(Z));

        let swap = el(Z, &[(1, "a", "b"), (1, "b", "a")]);
        assert_eq!(swap.full_spectrum_up_to(1).unwrap(), None);
        let witness2 = swap.full_spectrum_up_to(2).unwrap().unwrap();
        assert_eq!(witness2.to_string(), "x^2 - 1");
        assert_eq!(witness2.eval(&swap).unwrap(), AlgebraElement::zero(Z));
    }

    #[test]
    fn full_spectrum_witness_always_annihilates() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        for _ in 0..30 {
            let u = crate::sampling::random_unitary(&mut rng, Z);
            if let Some(q) = u.full_spectrum_up_to(3).unwrap() {
                assert!(!q.is_zero());
                assert!(q.degree().unwrap() <= 3);
                assert_eq!(q.eval(&u).unwrap(), AlgebraElement::zero(Z), "witness {q} at {u}");
            }
        }
    }

    #[test]
    fn full_spectrum_rejects_composite_moduli() {
        let m6 = Ring::integers_mod(6).unwrap();
        assert!(matches!(
            AlgebraElement::one(m6).full_spectrum_up_to(1),
            Err(Error::UnsupportedRing { .. })
        ));
    }

    #[test]
    fn coefficient_free_levels() {
        let swap = el(Z, &[(1, "a", "b"), (1, "b", "a")]);
        assert!(swap.is_coefficient_free_at_level(1).unwrap());
        assert!(swap.is_coefficient_free_at_level(3).unwrap());
        let x = el(Z, &[(2, "a", "a"), (1, "b", "b")]);
        assert!(!x.is_coefficient_free_at_level(1).unwrap());
        let diag = el(Z, &[(1, "a", "a"), (-1, "b", "b")]);
        assert!(!diag.is_coefficient_free_at_level(2).unwrap());
    }

    #[test]
    fn display_round_trip_shape() {
        assert_eq!(AlgebraElement::zero(Z).to_string(), "0");
        assert_eq!(AlgebraElement::one(Z).to_string(), "1");
        assert_eq!(el(Z, &[(1, "b", "b")]).to_string(), "1 - aa'");
        assert_eq!(el(Z, &[(2, "ab", "ba")]).to_string(), "2aba'b'");
        assert_eq!(el(Z, &[(1, "a", "b"), (-1, "b", "a")]).to_string(), "-ba' + ab'");
        assert_eq!(el(Z, &[(-1, "e", "e")]).to_string(), "-1");
        let q = Ring::Rationals;
        let half = AlgebraElement::scalar(q, q.parse_scalar("1/2").unwrap());
        assert_eq!(half.to_string(), "1/2");
    }
}
