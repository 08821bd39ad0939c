//! Bivariate (Laurent) polynomials over the coefficient ring.
//!
//! These carry the relation machinery: kernel vectors of power matrices
//! come back as polynomials in `w` and `z`, and evaluation substitutes two
//! algebra elements exactly. Exponents may be negative; evaluating a
//! negative power uses the adjoint, which is the inverse only for
//! unitaries, so evaluation demands unitarity in that case.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::algebra::AlgebraElement;
use crate::error::Error;
use crate::ring::{Ring, Scalar};
use crate::Result;

/// A finite sum `Σ k_{ij} w^i z^j` with integer exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariatePolynomial {
    ring: Ring,
    coeffs: BTreeMap<(i64, i64), Scalar>,
}

impl BivariatePolynomial {
    pub fn zero(ring: Ring) -> BivariatePolynomial {
        BivariatePolynomial {
            ring,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(ring: Ring, c: Scalar) -> BivariatePolynomial {
        BivariatePolynomial::from_terms(ring, [(c, 0, 0)])
    }

    pub fn monomial(ring: Ring, c: Scalar, i: i64, j: i64) -> BivariatePolynomial {
        BivariatePolynomial::from_terms(ring, [(c, i, j)])
    }

    /// The variable `w`.
    pub fn var_w(ring: Ring) -> BivariatePolynomial {
        BivariatePolynomial::monomial(ring, ring.one(), 1, 0)
    }

    /// The variable `z`.
    pub fn var_z(ring: Ring) -> BivariatePolynomial {
        BivariatePolynomial::monomial(ring, ring.one(), 0, 1)
    }

    /// Collects raw terms, dropping anything that cancels to zero.
    pub fn from_terms(
        ring: Ring,
        terms: impl IntoIterator<Item = (Scalar, i64, i64)>,
    ) -> BivariatePolynomial {
        let mut p = BivariatePolynomial::zero(ring);
        for (c, i, j) in terms {
            p.accumulate((i, j), c);
        }
        p
    }

    fn accumulate(&mut self, key: (i64, i64), c: Scalar) {
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(key) {
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
        self.coeffs.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    /// Terms in ascending `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Scalar)> {
        self.coeffs.iter()
    }

    /// Componentwise minimum of the exponent pairs, `None` for zero.
    pub fn min_exponents(&self) -> Option<(i64, i64)> {
        let mut it = self.coeffs.keys();
        let first = *it.next()?;
        Some(it.fold(first, |(i, j), &(k, l)| (i.min(k), j.min(l))))
    }

    /// Componentwise maximum of the exponent pairs, `None` for zero.
    pub fn max_exponents(&self) -> Option<(i64, i64)> {
        let mut it = self.coeffs.keys();
        let first = *it.next()?;
        Some(it.fold(first, |(i, j), &(k, l)| (i.max(k), j.max(l))))
    }

    pub fn add(&self, other: &BivariatePolynomial) -> Result<BivariatePolynomial> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        let mut out = self.clone();
        for (&key, c) in &other.coeffs {
            out.accumulate(key, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> BivariatePolynomial {
        BivariatePolynomial {
            ring: self.ring,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&k, c)| (k, self.ring.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &BivariatePolynomial) -> Result<BivariatePolynomial> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BivariatePolynomial) -> Result<BivariatePolynomial> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        let mut out = BivariatePolynomial::zero(self.ring);
        for (&(i, j), c) in &self.coeffs {
            for (&(k, l), d) in &other.coeffs {
                out.accumulate((i + k, j + l), self.ring.mul(c, d));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> BivariatePolynomial {
        BivariatePolynomial::from_terms(
            self.ring,
            self.coeffs
                .iter()
                .map(|(&(i, j), v)| (self.ring.mul(c, v), i, j)),
        )
    }

    /// Multiplies by `w^dw z^dz` (exponent shift).
    pub fn shift(&self, dw: i64, dz: i64) -> BivariatePolynomial {
        BivariatePolynomial {
            ring: self.ring,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(i, j), c)| ((i + dw, j + dz), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u64) -> BivariatePolynomial {
        let mut acc = BivariatePolynomial::constant(self.ring, self.ring.one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Substitutes `w ↦ u`, `z ↦ v` exactly. Negative exponents use the
    /// adjoint and therefore require the corresponding element to be
    /// unitary.
    pub fn evaluate(&self, u: &AlgebraElement, v: &AlgebraElement) -> Result<AlgebraElement> {
        if self.ring != u.ring() {
            return Err(Error::RingMismatch(self.ring, u.ring()));
        }
        if self.ring != v.ring() {
            return Err(Error::RingMismatch(self.ring, v.ring()));
        }
        let mut u_powers = PowerCache::new(u)?;
        let mut v_powers = PowerCache::new(v)?;
        let mut acc = AlgebraElement::zero(self.ring);
        for (&(i, j), c) in &self.coeffs {
            let term = u_powers.get(i)?.mul(v_powers.get(j)?)?;
            acc = acc.add(&term.scale(c))?;
        }
        Ok(acc)
    }
}

/// Lazily computed integer powers of a fixed element, negative powers via
/// the adjoint.
pub(crate) struct PowerCache<'a> {
    base: &'a AlgebraElement,
    cache: BTreeMap<i64, AlgebraElement>,
}

impl<'a> PowerCache<'a> {
    pub(crate) fn new(base: &'a AlgebraElement) -> Result<PowerCache<'a>> {
        let mut cache = BTreeMap::new();
        cache.insert(0, AlgebraElement::one(base.ring()));
        Ok(PowerCache { base, cache })
    }

    pub(crate) fn get(&mut self, k: i64) -> Result<&AlgebraElement> {
        if !self.cache.contains_key(&k) {
            // Walk iteratively from the nearest cached power on the same
            // side of zero; exponents can be large enough that recursing
            // once per step would exhaust the stack.
            if k > 0 {
                let mut n = self
                    .cache
                    .range(0..=k)
                    .next_back()
                    .map(|(n, _)| *n)
                    .unwrap_or(0);
                while n < k {
                    let next = self.cache[&n].mul(self.base)?;
                    n += 1;
                    self.cache.insert(n, next);
                }
            } else {
                if !self.base.is_unitary() {
                    return Err(Error::NotUnitary);
                }
                let adjoint = self.base.adjoint();
                let mut n = self
                    .cache
                    .range(k..=0)
                    .next()
                    .map(|(n, _)| *n)
                    .unwrap_or(0);
                while n > k {
                    let next = self.cache[&n].mul(&adjoint)?;
                    n -= 1;
                    self.cache.insert(n, next);
                }
            }
        }
        Ok(self.cache.get(&k).expect("just inserted"))
    }
}

impl fmt::Display for BivariatePolynomial {
    /// Terms in descending `(i, j)` order: `w^4 z^4`, `w z - 1`,
    /// `2 w^-1 + 1/2 z`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (pos, (&(i, j), c)) in self.coeffs.iter().rev().enumerate() {
            let negative = self.ring.is_negative(c);
            if pos == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let magnitude = self.ring.abs(c);
            let mut parts: Vec<String> = Vec::new();
            if !self.ring.is_one(&magnitude) || (i == 0 && j == 0) {
                parts.push(magnitude.to_string());
            }
            for (var, e) in [("w", i), ("z", j)] {
                match e {
                    0 => {}
                    1 => parts.push(var.to_string()),
                    _ => parts.push(format!("{var}^{e}")),
                }
            }
            write!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

impl BivariatePolynomial {
    /// Parses the display form over an explicit coefficient ring: signed
    /// terms `k w^i z^j` with any of the three parts omitted, e.g.
    /// `w z - 1`, `-2 w^-1 z^3 + 1/2`.
    pub fn parse_in(ring: Ring, s: &str) -> Result<BivariatePolynomial> {
        fn bad(s: &str, why: &str) -> Error {
            Error::Parse(format!("invalid polynomial {s:?}: {why}"))
        }
        let mut terms: Vec<(Scalar, i64, i64)> = Vec::new();
        let tokens: Vec<char> = s.chars().collect();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < tokens.len() && tokens[*pos].is_whitespace() {
                *pos += 1;
            }
        };
        let mut sign = 1i64;
        skip_ws(&mut pos);
        if pos < tokens.len() && (tokens[pos] == '-' || tokens[pos] == '+') {
            sign = if tokens[pos] == '-' { -1 } else { 1 };
            pos += 1;
        }
        if s.trim() == "0" {
            return Ok(BivariatePolynomial::zero(ring));
        }
        loop {
            skip_ws(&mut pos);
            // One term: optional scalar, optional w-part, optional z-part.
            let mut scalar: Option<Scalar> = None;
            let mut wexp: Option<i64> = None;
            let mut zexp: Option<i64> = None;
            let read_number = |pos: &mut usize| -> Option<String> {
                let start = *pos;
                if *pos < tokens.len() && tokens[*pos] == '-' {
                    *pos += 1;
                }
                while *pos < tokens.len() && (tokens[*pos].is_ascii_digit() || tokens[*pos] == '/')
                {
                    *pos += 1;
                }
                if *pos > start && tokens[start..*pos].iter().any(|c| c.is_ascii_digit()) {
                    Some(tokens[start..*pos].iter().collect())
                } else {
                    *pos = start;
                    None
                }
            };
            if let Some(num) = read_number(&mut pos) {
                scalar = Some(ring.parse_scalar(&num)?);
            }
            skip_ws(&mut pos);
            for (var, slot) in [('w', &mut wexp), ('z', &mut zexp)] {
                if pos < tokens.len() && tokens[pos] == var {
                    pos += 1;
                    if pos < tokens.len() && tokens[pos] == '^' {
                        pos += 1;
                        let num = read_number(&mut pos)
                            .ok_or_else(|| bad(s, "expected exponent after ^"))?;
                        *slot = Some(
                            num.parse::<i64>().map_err(|_| bad(s, "bad exponent"))?,
                        );
                    } else {
                        *slot = Some(1);
                    }
                    skip_ws(&mut pos);
                }
            }
            if scalar.is_none() && wexp.is_none() && zexp.is_none() {
                return Err(bad(s, "expected a term"));
            }
            let c = scalar.unwrap_or_else(|| ring.one());
            let c = if sign < 0 { ring.neg(&c) } else { c };
            terms.push((c, wexp.unwrap_or(0), zexp.unwrap_or(0)));
            skip_ws(&mut pos);
            if pos >= tokens.len() {
                break;
            }
            sign = match tokens[pos] {
                '+' => 1,
                '-' => -1,
                other => return Err(bad(s, &format!("unexpected {other:?}"))),
            };
            pos += 1;
        }
        Ok(BivariatePolynomial::from_terms(ring, terms))
    }
}

impl FromStr for BivariatePolynomial {
    type Err = Error;

    /// Parses with the ring inferred from the text: integers by default,
    /// rationals exactly when a fraction appears. Use [`Self::parse_in`]
    /// to fix the ring explicitly.
    fn from_str(s: &str) -> Result<BivariatePolynomial> {
        let ring = if s.contains('/') { Ring::Rationals } else { Ring::Integers };
        BivariatePolynomial::parse_in(ring, s)
    }
}
