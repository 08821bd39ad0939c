//! The tensor square of the algebra with its componentwise *-structure,
//! and the Laurent-polynomial embedding through a pair of unitaries.
//!
//! Coordinates live in the product of the two canonical bases. Each
//! canonical basis is a genuine module basis, so tensor coordinates are
//! unique and equality is a map comparison — no flatness reasoning happens
//! at runtime.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{AlgebraElement, Monomial};
use crate::error::Error;
use crate::linalg;
use crate::poly::{BivariatePolynomial, PowerCache};
use crate::ring::{Ring, Scalar};
use crate::Result;

/// An element of the tensor square: a finite combination of pairs of
/// canonical monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    ring: Ring,
    terms: BTreeMap<(Monomial, Monomial), Scalar>,
}

impl TensorElement {
    pub fn zero(ring: Ring) -> TensorElement {
        TensorElement {
            ring,
            terms: BTreeMap::new(),
        }
    }

    /// The unit `1 ⊗ 1`.
    pub fn one(ring: Ring) -> TensorElement {
        TensorElement::tensor_of(&AlgebraElement::one(ring), &AlgebraElement::one(ring))
            .expect("same ring")
    }

    /// The elementary tensor `x ⊗ y`.
    pub fn tensor_of(x: &AlgebraElement, y: &AlgebraElement) -> Result<TensorElement> {
        if x.ring() != y.ring() {
            return Err(Error::RingMismatch(x.ring(), y.ring()));
        }
        let ring = x.ring();
        let mut out = TensorElement::zero(ring);
        for (ml, cl) in x.terms() {
            for (mr, cr) in y.terms() {
                out.accumulate((ml.clone(), mr.clone()), ring.mul(cl, cr));
            }
        }
        Ok(out)
    }

    fn accumulate(&mut self, key: (Monomial, Monomial), c: Scalar) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
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
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &Scalar)> {
        self.terms.iter()
    }

    pub(crate) fn terms_map(&self) -> &BTreeMap<(Monomial, Monomial), Scalar> {
        &self.terms
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        let mut out = self.clone();
        for (key, c) in &other.terms {
            out.accumulate(key.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> TensorElement {
        TensorElement {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), self.ring.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &TensorElement) -> Result<TensorElement> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        let mut out = TensorElement::zero(self.ring);
        for (k, v) in &self.terms {
            out.accumulate(k.clone(), self.ring.mul(c, v));
        }
        out
    }

    /// Componentwise product `(p⊗q)(r⊗s) = pr ⊗ qs`, extended bilinearly.
    pub fn mul(&self, other: &TensorElement) -> Result<TensorElement> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        let ring = self.ring;
        let lift = |m: &Monomial| {
            AlgebraElement::monomial(ring, ring.one(), m.alpha.clone(), m.beta.clone())
        };
        let mut out = TensorElement::zero(ring);
        for ((l1, r1), c) in &self.terms {
            for ((l2, r2), d) in &other.terms {
                // Each leg multiplies in the algebra and re-canonicalizes;
                // the pair of expansions recombines as an outer product.
                let left = lift(l1).mul(&lift(l2))?;
                if left.is_zero() {
                    continue;
                }
                let right = lift(r1).mul(&lift(r2))?;
                let cd = ring.mul(c, d);
                for (ml, cl) in left.terms() {
                    for (mr, cr) in right.terms() {
                        let coeff = ring.mul(&cd, &ring.mul(cl, cr));
                        out.accumulate((ml.clone(), mr.clone()), coeff);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The involution `(x ⊗ y)* = x* ⊗ y*`, termwise.
    pub fn adjoint(&self) -> TensorElement {
        let mut out = TensorElement::zero(self.ring);
        for ((l, r), c) in &self.terms {
            out.accumulate((l.adjoint(), r.adjoint()), c.clone());
        }
        out
    }
}

impl fmt::Display for TensorElement {
    /// Terms like `2 ab' ox b`, joined with ` + ` / ` - `; re-parseable by
    /// the expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, ((l, r), c)) in self.terms.iter().enumerate() {
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
            if !self.ring.is_one(&magnitude) {
                write!(f, "{magnitude} ")?;
            }
            write!(f, "{l} ox {r}")?;
        }
        Ok(())
    }
}

/// The image of a Laurent polynomial under `w ↦ u⊗1`, `z ↦ 1⊗v`:
/// `Σ c_{ij} (u^i ⊗ v^j)`, exactly. Negative exponents require the
/// corresponding element to be unitary.
pub fn laurent_image(
    p: &BivariatePolynomial,
    u: &AlgebraElement,
    v: &AlgebraElement,
) -> Result<TensorElement> {
    if p.ring() != u.ring() {
        return Err(Error::RingMismatch(p.ring(), u.ring()));
    }
    if p.ring() != v.ring() {
        return Err(Error::RingMismatch(p.ring(), v.ring()));
    }
    let mut u_powers = PowerCache::new(u)?;
    let mut v_powers = PowerCache::new(v)?;
    let mut out = TensorElement::zero(p.ring());
    for (&(i, j), c) in p.terms() {
        let term = TensorElement::tensor_of(u_powers.get(i)?, v_powers.get(j)?)?;
        out = out.add(&term.scale(c))?;
    }
    Ok(out)
}

/// Whether the family `{u^i ⊗ v^j : |i|, |j| ≤ d}` is linearly independent
/// in tensor coordinates.
pub fn independent_up_to(u: &AlgebraElement, v: &AlgebraElement, d: u32) -> Result<bool> {
    if u.ring() != v.ring() {
        return Err(Error::RingMismatch(u.ring(), v.ring()));
    }
    let d = d as i64;
    let mut u_powers = PowerCache::new(u)?;
    let mut v_powers = PowerCache::new(v)?;
    let mut columns = Vec::new();
    for i in -d..=d {
        for j in -d..=d {
            columns.push(TensorElement::tensor_of(u_powers.get(i)?, v_powers.get(j)?)?);
        }
    }
    let maps: Vec<&BTreeMap<(Monomial, Monomial), Scalar>> =
        columns.iter().map(|t| t.terms_map()).collect();
    let rows = linalg::coordinate_rows(&u.ring(), &maps);
    let outcome = linalg::kernel(&u.ring(), rows, "exact kernel")?;
    Ok(outcome.basis.is_empty())
}
