//! Projection calculus: cylinder standard forms, equivalence to the unit,
//! and twisting corner-supported images into unital ones.

use std::collections::BTreeMap;

use crate::algebra::AlgebraElement;
use crate::error::Error;
use crate::ring::Scalar;
use crate::words::{Letter, PrefixCode, Word};
use crate::Result;

/// Whether `x* = x` and `x² = x` in canonical form.
pub fn is_projection(x: &AlgebraElement) -> bool {
    x.adjoint() == *x && x.mul(x).expect("same ring") == *x
}

/// Rewrites a projection as a sum of cylinder projections `Σ ββ*` and
/// returns the supporting antichain.
///
/// Every canonical term must be balanced (`|α| = |β|`); both are expanded
/// uniformly to the maximum length, where the coefficient matrix has to be
/// diagonal with entries 0 or 1. The support of the diagonal is returned
/// as-is: one word per level-`m` cylinder, with no re-merging of sibling
/// pairs. Inputs that fail the diagonal test exist only outside the
/// guaranteed setting (the integers) and are reported, not coerced.
pub fn projection_standard_form(p: &AlgebraElement) -> Result<PrefixCode> {
    if !is_projection(p) {
        return Err(Error::NotProjection);
    }
    let ring = p.ring();
    let mut level = 0;
    for (m, _) in p.terms() {
        if m.alpha.len() != m.beta.len() {
            return Err(Error::NotStandardizable(format!(
                "unbalanced term {m} (left length {}, right length {})",
                m.alpha.len(),
                m.beta.len()
            )));
        }
        level = level.max(m.beta.len());
    }

    // Uniform expansion: αβ* = Σ_{|δ| = m − |β|} (αδ)(βδ)*.
    let mut matrix: BTreeMap<(Word, Word), Scalar> = BTreeMap::new();
    for (mono, c) in p.terms() {
        for delta in Word::all_of_length(level - mono.beta.len()) {
            let key = (mono.alpha.concat(&delta), mono.beta.concat(&delta));
            let entry = matrix.entry(key).or_insert_with(|| ring.zero());
            *entry = ring.add(entry, c);
        }
    }

    let mut support = Vec::new();
    for ((row, col), c) in matrix {
        if ring.is_zero(&c) {
            continue;
        }
        if row != col {
            return Err(Error::NotStandardizable(format!(
                "off-diagonal entry at ({row}, {col})"
            )));
        }
        if !ring.is_one(&c) {
            return Err(Error::NotStandardizable(format!(
                "diagonal entry at {row} is not 0 or 1"
            )));
        }
        support.push(row);
    }
    PrefixCode::new(support)
}

/// The complete code `{a, ba, bba, …, bⁿ⁻²a, bⁿ⁻¹}` of size `n` (`{e}` for
/// `n = 1`), the fixed partner for unit equivalences.
pub fn comb_code(n: usize) -> Vec<Word> {
    if n == 1 {
        return vec![Word::empty()];
    }
    let mut words = Vec::with_capacity(n);
    for k in 0..n - 1 {
        let mut letters = vec![Letter::B; k];
        letters.push(Letter::A);
        words.push(Word::from_letters(letters));
    }
    words.push(Word::from_letters(vec![Letter::B; n - 1]));
    words
}

/// An element `t` with `t*t = 1` and `tt* = p`, exhibiting the nonzero
/// projection `p` as equivalent to the unit.
///
/// With standard form `{β_1 < … < β_n}` and the size-`n` complete code
/// `{α_1 < … < α_n}` from [`comb_code`], `t = Σ β_i α_i*`.
pub fn unit_equivalence(p: &AlgebraElement) -> Result<AlgebraElement> {
    let ring = p.ring();
    let code = projection_standard_form(p)?;
    if code.is_empty() {
        return Err(Error::ZeroProjection);
    }
    let alphas = comb_code(code.len());
    let t = AlgebraElement::from_terms(
        ring,
        code.iter()
            .zip(alphas)
            .map(|(beta, alpha)| (ring.one(), beta.clone(), alpha)),
    );
    assert_eq!(
        t.adjoint().mul(&t).expect("same ring"),
        AlgebraElement::one(ring),
        "partner code is complete, so t*t = 1"
    );
    assert_eq!(
        &t.mul(&t.adjoint()).expect("same ring"),
        p,
        "standard-form support reassembles to p, so tt* = p"
    );
    Ok(t)
}

/// Conjugates images supported in the corner `p·L·p` by a unit equivalence
/// of `p`, producing images with unit image `1`.
///
/// Each `x` must satisfy `x = p·x·p` exactly; the result is `t*·x·t` with
/// `t = unit_equivalence(p)`. On the corner this preserves products and
/// adjoints, and sends `p` itself to `1`.
pub fn twist_to_unital(
    images: &[AlgebraElement],
    p: &AlgebraElement,
) -> Result<Vec<AlgebraElement>> {
    let t = unit_equivalence(p)?;
    let t_star = t.adjoint();
    let mut out = Vec::with_capacity(images.len());
    for (index, x) in images.iter().enumerate() {
        let corner = p.mul(x)?.mul(p)?;
        if corner != *x {
            return Err(Error::CornerConditionViolated(index));
        }
        out.push(t_star.mul(x)?.mul(&t)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use crate::sampling;
    use rand::Rng;
    use rand::SeedableRng;

    const Z: Ring = Ring::Integers;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn cylinder(ring: Ring, s: &str) -> AlgebraElement {
        AlgebraElement::from_terms(ring, [(ring.one(), w(s), w(s))])
    }

    #[test]
    fn projection_predicate_examples() {
        assert!(is_projection(&cylinder(Z, "a")));
        assert!(is_projection(&AlgebraElement::one(Z)));
        assert!(is_projection(&AlgebraElement::zero(Z)));
        let ab = AlgebraElement::from_terms(Z, [(Z.one(), w("a"), w("b"))]);
        assert!(!is_projection(&ab));
        // Self-adjoint but not idempotent.
        let two = AlgebraElement::scalar(Z, Z.from_i64(2));
        assert!(!is_projection(&two));
    }

    #[test]
    fn standard_form_examples() {
        let form = projection_standard_form(&cylinder(Z, "a")).unwrap();
        assert_eq!(form.words().iter().map(Word::to_string).collect::<Vec<_>>(), ["a"]);

        let form = projection_standard_form(&AlgebraElement::one(Z)).unwrap();
        assert_eq!(form.words().iter().map(Word::to_string).collect::<Vec<_>>(), ["e"]);

        // bb* − bab(bab)* expands to level three and loses one cylinder.
        let p = AlgebraElement::from_terms(
            Z,
            [
                (Z.one(), w("b"), w("b")),
                (Z.from_i64(-1), w("bab"), w("bab")),
            ],
        );
        let form = projection_standard_form(&p).unwrap();
        assert_eq!(
            form.words().iter().map(Word::to_string).collect::<Vec<_>>(),
            ["baa", "bba", "bbb"]
        );
        // The support reassembles exactly.
        let reassembled = AlgebraElement::from_terms(
            Z,
            form.iter().map(|b| (Z.one(), b.clone(), b.clone())),
        );
        assert_eq!(reassembled, p);

        assert!(projection_standard_form(&AlgebraElement::zero(Z))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn standard_form_rejections() {
        let ab = AlgebraElement::from_terms(Z, [(Z.one(), w("a"), w("b"))]);
        assert!(matches!(
            projection_standard_form(&ab),
            Err(Error::NotProjection)
        ));

        // (1 + swap)/2 is a projection over the rationals with an
        // off-diagonal level-one matrix.
        let q = Ring::Rationals;
        let half = q.parse_scalar("1/2").unwrap();
        let p = AlgebraElement::from_terms(
            q,
            [
                (half.clone(), Word::empty(), Word::empty()),
                (half.clone(), w("a"), w("b")),
                (half.clone(), w("b"), w("a")),
            ],
        );
        assert!(is_projection(&p));
        assert!(matches!(
            projection_standard_form(&p),
            Err(Error::NotStandardizable(_))
        ));

        // 3·aa* is a projection modulo six with a non-0/1 diagonal.
        let m6 = Ring::integers_mod(6).unwrap();
        let p = AlgebraElement::from_terms(m6, [(m6.from_i64(3), w("a"), w("a"))]);
        assert!(is_projection(&p));
        assert!(matches!(
            projection_standard_form(&p),
            Err(Error::NotStandardizable(_))
        ));
    }

    #[test]
    fn random_cylinder_sums_standardize_and_reassemble() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(179);
        for _ in 0..120 {
            let p = sampling::random_antichain_projection(&mut rng, Z);
            assert!(is_projection(&p));
            let form = projection_standard_form(&p).unwrap();
            let reassembled = AlgebraElement::from_terms(
                Z,
                form.iter().map(|b| (Z.one(), b.clone(), b.clone())),
            );
            assert_eq!(reassembled, p);
            // All support words share the maximum length: no merge applied.
            let lengths: std::collections::BTreeSet<usize> =
                form.iter().map(Word::len).collect();
            assert!(lengths.len() <= 1);
        }
    }

    #[test]
    fn comb_codes_are_complete() {
        for n in 1..=8 {
            let code = PrefixCode::new(comb_code(n)).unwrap();
            assert_eq!(code.len(), n);
            assert!(crate::words::is_complete_code(&code));
        }
    }

    #[test]
    fn unit_equivalence_examples() {
        assert_eq!(
            unit_equivalence(&AlgebraElement::one(Z)).unwrap(),
            AlgebraElement::one(Z)
        );
        assert_eq!(
            unit_equivalence(&cylinder(Z, "a")).unwrap(),
            AlgebraElement::word(Z, &w("a"))
        );

        let p = AlgebraElement::from_terms(
            Z,
            [
                (Z.one(), w("b"), w("b")),
                (Z.from_i64(-1), w("bab"), w("bab")),
            ],
        );
        let t = unit_equivalence(&p).unwrap();
        let expected = AlgebraElement::from_terms(
            Z,
            [
                (Z.one(), w("baa"), w("a")),
                (Z.one(), w("bba"), w("ba")),
                (Z.one(), w("bbb"), w("bb")),
            ],
        );
        assert_eq!(t, expected);

        assert!(matches!(
            unit_equivalence(&AlgebraElement::zero(Z)),
            Err(Error::ZeroProjection)
        ));
    }

    #[test]
    fn unit_equivalence_properties_on_random_projections() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(181);
        for _ in 0..100 {
            let p = sampling::random_antichain_projection(&mut rng, Z);
            if p.is_zero() {
                continue;
            }
            let t = unit_equivalence(&p).unwrap();
            assert_eq!(t.adjoint().mul(&t).unwrap(), AlgebraElement::one(Z));
            assert_eq!(t.mul(&t.adjoint()).unwrap(), p);
        }
    }

    #[test]
    fn twist_examples() {
        let p = cylinder(Z, "a");
        let x = AlgebraElement::from_terms(Z, [(Z.one(), w("ab"), w("a"))]);
        let twisted = twist_to_unital(&[x, p.clone()], &p).unwrap();
        assert_eq!(twisted[0], AlgebraElement::gen_b(Z));
        assert_eq!(twisted[1], AlgebraElement::one(Z));

        // The unit twists trivially.
        let one = AlgebraElement::one(Z);
        let swap = AlgebraElement::from_terms(
            Z,
            [(Z.one(), w("a"), w("b")), (Z.one(), w("b"), w("a"))],
        );
        assert_eq!(
            twist_to_unital(&[swap.clone(), one.clone()], &one).unwrap(),
            vec![swap, one]
        );
    }

    #[test]
    fn twist_rejects_elements_outside_the_corner() {
        let p = cylinder(Z, "a");
        let b = AlgebraElement::gen_b(Z);
        assert!(matches!(
            twist_to_unital(&[p.clone(), b], &p),
            Err(Error::CornerConditionViolated(1))
        ));
    }

    #[test]
    fn twist_preserves_products_on_random_corner_pairs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(191);
        let mut exercised = 0;
        for _ in 0..200 {
            let p = sampling::random_antichain_projection(&mut rng, Z);
            if p.is_zero() {
                continue;
            }
            let corner = |rng: &mut rand_chacha::ChaCha8Rng, p: &AlgebraElement| {
                let len = rng.random_range(0..3);
                let raw = sampling::random_element(rng, Z, len, 2, 3);
                p.mul(&raw).unwrap().mul(p).unwrap()
            };
            let x = corner(&mut rng, &p);
            let y = corner(&mut rng, &p);
            let twisted = twist_to_unital(&[x.clone(), y.clone()], &p).unwrap();
            let product = twist_to_unital(&[x.mul(&y).unwrap()], &p).unwrap();
            assert_eq!(
                product[0],
                twisted[0].mul(&twisted[1]).unwrap(),
                "twisting must commute with corner products"
            );
            assert_eq!(
                twist_to_unital(&[x.adjoint()], &p).unwrap()[0],
                twisted[0].adjoint(),
                "twisting must commute with adjoints on the corner"
            );
            exercised += 1;
        }
        assert!(exercised >= 100);
    }
}
