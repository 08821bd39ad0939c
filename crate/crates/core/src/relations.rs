//! Polynomial relations between commuting elements, found by exact kernel
//! computation, and the sign-twisted transfer product over choice functions.

use num_bigint::BigInt;

use crate::algebra::{normalize_leading, AlgebraElement};
use crate::error::Error;
use crate::linalg;
use crate::poly::{BivariatePolynomial, PowerCache};
use crate::ring::Scalar;
use crate::Result;

/// `xy − yx`, canonical.
pub fn commutator(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    let xy = x.mul(y)?;
    let yx = y.mul(x)?;
    Ok(&xy - &yx)
}

/// What a relation search saw: the coordinate matrix shape, how much of it
/// was dependent, and the witness polynomial if any.
#[derive(Debug, Clone)]
pub struct RelationReport {
    /// Rows of the coordinate matrix (distinct basis monomials touched).
    pub rows: usize,
    /// Columns (one per exponent pair, `(d+1)²`).
    pub cols: usize,
    /// Rank of the coordinate matrix.
    pub rank: usize,
    /// Dimension of its kernel, `cols − rank`.
    pub kernel_rank: usize,
    /// A nonzero polynomial with `q(u, v) = 0`, if the kernel is nontrivial.
    pub polynomial: Option<BivariatePolynomial>,
}

/// Searches for a nonzero polynomial `q` with `q(u, v) = 0` among the
/// products `u^i v^j`, `0 ≤ i, j ≤ d`.
///
/// The inputs must commute (so that evaluation of any bivariate polynomial
/// at `(u, v)` is well-defined); the coordinate matrix of the products is
/// assembled in the canonical basis and its exact kernel computed. The
/// witness is the kernel basis vector attached to the first dependent
/// column, renormalized so its highest `(i, j)` coefficient is positive
/// (monic over a prime field), and every returned polynomial is re-checked
/// by exact evaluation.
pub fn find_relation(
    u: &AlgebraElement,
    v: &AlgebraElement,
    d: u32,
) -> Result<Option<BivariatePolynomial>> {
    Ok(find_relation_report(u, v, d)?.polynomial)
}

/// As [`find_relation`], but also reporting the matrix dimensions and
/// kernel rank.
pub fn find_relation_report(
    u: &AlgebraElement,
    v: &AlgebraElement,
    d: u32,
) -> Result<RelationReport> {
    if u.ring() != v.ring() {
        return Err(Error::RingMismatch(u.ring(), v.ring()));
    }
    let ring = u.ring();
    if !commutator(u, v)?.is_zero() {
        return Err(Error::NotCommuting);
    }

    let mut u_powers = PowerCache::new(u)?;
    let mut v_powers = PowerCache::new(v)?;
    let mut exponents = Vec::new();
    let mut columns = Vec::new();
    for i in 0..=d as i64 {
        for j in 0..=d as i64 {
            let ui = u_powers.get(i)?.clone();
            columns.push(ui.mul(v_powers.get(j)?)?);
            exponents.push((i, j));
        }
    }
    let maps: Vec<_> = columns.iter().map(|x| x.terms_map()).collect();
    let rows = linalg::coordinate_rows(&ring, &maps);
    let outcome = linalg::kernel(&ring, rows, "relation search")?;

    let polynomial = outcome.basis.first().map(|witness| {
        let normalized = normalize_leading(&ring, witness.clone());
        BivariatePolynomial::from_terms(
            ring,
            normalized
                .into_iter()
                .zip(exponents.iter())
                .map(|(c, &(i, j))| (c, i, j)),
        )
    });
    if let Some(q) = &polynomial {
        assert!(!q.is_zero(), "kernel basis vectors are nonzero");
        assert!(
            q.evaluate(u, v)?.is_zero(),
            "exact kernel witness must annihilate the pair"
        );
    }
    Ok(RelationReport {
        rows: outcome.rows,
        cols: outcome.cols,
        rank: outcome.rank,
        kernel_rank: outcome.basis.len(),
        polynomial,
    })
}

/// The product `q̃ = Π_φ q_φ` over all choice functions `φ` on the word
/// sets `Ω^{i,j}`, expanded.
///
/// The input is first multiplied by `w`, `z` as needed so every exponent
/// pair lies in `[1, n]²`; `Ω^{i,j}` is then the set of words of length
/// `i + j` whose first `i` letters come from one two-letter alphabet and
/// whose last `j` letters come from another, and `q_φ` flips the
/// coefficient of `w^i z^j` by the parity of second-alphabet letters in
/// `φ(Ω^{i,j})`. `|C| = Π 2^{i+j}` over all of `[1, n]²` grows doubly
/// exponentially, hence the `n ≤ 2` guard.
pub fn transfer_polynomial(q: &BivariatePolynomial) -> Result<BivariatePolynomial> {
    let ring = q.ring();
    let Some((min_i, min_j)) = q.min_exponents() else {
        return Err(Error::ZeroPolynomial);
    };
    let shifted = q.shift((1 - min_i).max(0), (1 - min_j).max(0));
    let (max_i, max_j) = shifted.max_exponents().expect("shifted input is nonzero");
    let n = max_i.max(max_j);
    if n > 2 {
        return Err(Error::InfeasibleDegree(n));
    }

    // q_φ depends on φ only through the sign pattern it induces on the
    // support cells, and each pattern arises from exactly M = |C| / 2^s
    // choice functions: within a single Ω^{i,j} the two parities are
    // realized by 2^{i+j−1} words each, and cells choose independently.
    // Pairing a pattern ε with −ε (q_{−ε} = −q_ε) collapses the product to
    //   q̃ = (−1)^{|C|/2} · (Π_{ε: first support sign +} q_ε)^{2M},
    // and |C|/2 is a positive power of two, so the sign is +.
    let log2_choices: u32 = (1..=n as u32)
        .flat_map(|i| (1..=n as u32).map(move |j| i + j))
        .sum();
    let support: Vec<((i64, i64), Scalar)> = shifted
        .terms()
        .map(|(&e, c)| (e, c.clone()))
        .collect();
    let s = support.len() as u32;
    let exponent = 1u64 << (log2_choices - s + 1);

    let mut base = BivariatePolynomial::constant(ring, ring.one());
    for mask in 0u64..(1 << (s - 1)) {
        let q_eps = BivariatePolynomial::from_terms(
            ring,
            support.iter().enumerate().map(|(k, ((i, j), c))| {
                let flip = k > 0 && (mask >> (k - 1)) & 1 == 1;
                (if flip { ring.neg(c) } else { c.clone() }, *i, *j)
            }),
        );
        base = base.mul(&q_eps)?;
    }
    Ok(expand_power(&base, exponent))
}

/// `p^e` for the (potentially huge) transfer exponents: closed forms for
/// bases with one or two terms, repeated squaring otherwise.
fn expand_power(p: &BivariatePolynomial, e: u64) -> BivariatePolynomial {
    let ring = p.ring();
    let terms: Vec<((i64, i64), Scalar)> =
        p.terms().map(|(&k, c)| (k, c.clone())).collect();
    match terms.as_slice() {
        [((i, j), c)] => BivariatePolynomial::monomial(
            ring,
            scalar_power(&ring, c, e),
            i * e as i64,
            j * e as i64,
        ),
        [((xi, xj), xc), ((yi, yj), yc)] => {
            // Binomial expansion with exact integer coefficients, mapped
            // into the ring at the end; e + 1 terms instead of the ~e²
            // coefficient operations of repeated squaring.
            let mut x_pow = vec![ring.one()];
            let mut y_pow = vec![ring.one()];
            for k in 0..e as usize {
                x_pow.push(ring.mul(&x_pow[k], xc));
                y_pow.push(ring.mul(&y_pow[k], yc));
            }
            let mut binom = BigInt::from(1u32);
            let mut out = Vec::with_capacity(e as usize + 1);
            for k in 0..=e {
                if k > 0 {
                    binom = binom * BigInt::from(e - k + 1) / BigInt::from(k);
                }
                let c = ring.mul(
                    &ring.from_bigint(&binom),
                    &ring.mul(&x_pow[(e - k) as usize], &y_pow[k as usize]),
                );
                out.push((
                    c,
                    xi * (e - k) as i64 + yi * k as i64,
                    xj * (e - k) as i64 + yj * k as i64,
                ));
            }
            BivariatePolynomial::from_terms(ring, out)
        }
        _ => p.pow(e),
    }
}

fn scalar_power(ring: &crate::ring::Ring, c: &Scalar, e: u64) -> Scalar {
    let mut acc = ring.one();
    let mut base = c.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = ring.mul(&acc, &base);
        }
        base = ring.mul(&base, &base);
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use crate::sampling;
    use crate::thompson::{Table, TablePair};
    use crate::words::Word;
    use rand::SeedableRng;

    const Z: Ring = Ring::Integers;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn swap_unitary() -> AlgebraElement {
        AlgebraElement::from_terms(Z, [(Z.one(), w("a"), w("b")), (Z.one(), w("b"), w("a"))])
    }

    fn shift_unitary() -> AlgebraElement {
        Table::new([
            TablePair::new(w("aa"), w("a")),
            TablePair::new(w("ab"), w("ba")),
            TablePair::new(w("b"), w("bb")),
        ])
        .unwrap()
        .to_unitary(Z)
    }

    #[test]
    fn commutator_examples() {
        let a = AlgebraElement::gen_a(Z);
        assert!(commutator(&a, &a).unwrap().is_zero());
        let t = shift_unitary();
        assert!(commutator(&t, &t.pow(2)).unwrap().is_zero());
        let p = AlgebraElement::from_terms(Z, [(Z.one(), w("a"), w("a"))]);
        let lie = commutator(&swap_unitary(), &p).unwrap();
        assert_eq!(lie.to_string(), "ba' - ab'");
        assert!(!lie.is_zero());
    }

    #[test]
    fn diagonal_pair_satisfies_w_minus_z() {
        for u in [swap_unitary(), shift_unitary()] {
            let q = find_relation(&u, &u, 1).unwrap().unwrap();
            assert_eq!(q.to_string(), "w - z");
            assert!(q.evaluate(&u, &u).unwrap().is_zero());
        }
    }

    #[test]
    fn adjoint_pair_satisfies_wz_minus_one() {
        let u = shift_unitary();
        let q = find_relation(&u, &u.adjoint(), 1).unwrap().unwrap();
        assert_eq!(q.to_string(), "w z - 1");
    }

    #[test]
    fn involution_and_its_square() {
        let g = swap_unitary();
        let report = find_relation_report(&g, &g.pow(2), 2).unwrap();
        assert_eq!(report.cols, 9);
        assert_eq!(report.rank, 2);
        assert_eq!(report.kernel_rank, 7);
        let q = report.polynomial.unwrap();
        assert_eq!(q.to_string(), "z - 1");
        assert!(q.evaluate(&g, &g.pow(2)).unwrap().is_zero());
    }

    #[test]
    fn disjoint_corner_sum_pair() {
        let g = swap_unitary();
        let u = sampling::embed_unitary_in_cylinder(&g, &w("a"));
        let v = sampling::embed_unitary_in_cylinder(&g, &w("b"));
        let q = find_relation(&u, &v, 1).unwrap().unwrap();
        assert_eq!(q.to_string(), "w z - w - z + 1");
    }

    #[test]
    fn power_pair_has_the_expected_annihilator() {
        let t = shift_unitary();
        let (u, v) = (t.pow(2), t.pow(3));
        // w³ − z² vanishes on (t², t³); whatever the search returns first
        // must vanish as well (checked inside find_relation).
        let cubic: BivariatePolynomial = "w^3 - z^2".parse().unwrap();
        assert!(cubic.evaluate(&u, &v).unwrap().is_zero());
        let q = find_relation(&u, &v, 3).unwrap().unwrap();
        assert!(q.evaluate(&u, &v).unwrap().is_zero());
    }

    #[test]
    fn noncommuting_inputs_are_rejected() {
        let p = AlgebraElement::from_terms(Z, [(Z.one(), w("a"), w("a"))]);
        assert!(matches!(
            find_relation(&swap_unitary(), &p, 1),
            Err(Error::NotCommuting)
        ));
    }

    #[test]
    fn relation_search_is_monotone_in_degree() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(163);
        let mut checked = 0;
        for _ in 0..40 {
            if checked >= 8 {
                break;
            }
            let (u, v) = sampling::random_commuting_unitaries(&mut rng, Z);
            let Some(d) = (1..=3).find(|&d| {
                find_relation(&u, &v, d).unwrap().is_some()
            }) else {
                continue;
            };
            assert!(
                find_relation(&u, &v, d + 1).unwrap().is_some(),
                "a relation found at degree {d} must persist at {}",
                d + 1
            );
            checked += 1;
        }
        assert!(checked >= 8, "not enough low-degree pairs sampled");
    }

    #[test]
    fn commuting_pairs_have_low_degree_relations() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(167);
        for trial in 0..25 {
            let (u, v) = sampling::random_commuting_unitaries(&mut rng, Z);
            let found = (1..=6).any(|d| find_relation(&u, &v, d).unwrap().is_some());
            assert!(found, "trial {trial}: no relation up to degree 6");
        }
    }

    // ------------------------------------------------------------------
    // Transfer product.

    /// Literal enumeration of the choice-function construction, feasible
    /// for n = 1 (|C| = 4): every Ω^{i,j} word is a bitmask whose set bits
    /// are the second-alphabet letters, so the flip parity is its popcount.
    fn brute_force_transfer(q: &BivariatePolynomial) -> BivariatePolynomial {
        let ring = q.ring();
        let (min_i, min_j) = q.min_exponents().unwrap();
        let shifted = q.shift((1 - min_i).max(0), (1 - min_j).max(0));
        let (max_i, max_j) = shifted.max_exponents().unwrap();
        let n = max_i.max(max_j);
        let cells: Vec<(i64, i64)> = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .collect();
        let mut product = BivariatePolynomial::constant(ring, ring.one());
        let mut choice = vec![0u64; cells.len()];
        loop {
            let factor = BivariatePolynomial::from_terms(
                ring,
                shifted.terms().map(|(&(i, j), c)| {
                    let cell = cells.iter().position(|&e| e == (i, j)).unwrap();
                    let flip = choice[cell].count_ones() % 2 == 1;
                    (if flip { ring.neg(c) } else { c.clone() }, i, j)
                }),
            );
            product = product.mul(&factor).unwrap();
            // Advance the mixed-radix counter over word choices per cell.
            let mut done = true;
            for (k, &(i, j)) in cells.iter().enumerate() {
                choice[k] += 1;
                if choice[k] < 1 << (i + j) {
                    done = false;
                    break;
                }
                choice[k] = 0;
            }
            if done {
                return product;
            }
        }
    }

    #[test]
    fn degree_one_transfer_is_the_fourth_power() {
        let q = BivariatePolynomial::monomial(Z, Z.from_i64(3), 1, 1);
        let expected = BivariatePolynomial::monomial(Z, Z.from_i64(81), 4, 4);
        assert_eq!(transfer_polynomial(&q).unwrap(), expected);
        let unit = BivariatePolynomial::monomial(Z, Z.one(), 1, 1);
        assert_eq!(
            transfer_polynomial(&unit).unwrap().to_string(),
            "w^4 z^4"
        );
        // Constants are shifted into the (1,1) cell first.
        let c = BivariatePolynomial::constant(Z, Z.from_i64(2));
        assert_eq!(
            transfer_polynomial(&c).unwrap(),
            BivariatePolynomial::monomial(Z, Z.from_i64(16), 4, 4)
        );
    }

    #[test]
    fn transfer_matches_literal_enumeration_at_degree_one() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(173);
        for ring in [Z, Ring::Rationals, Ring::integers_mod(5).unwrap()] {
            for _ in 0..10 {
                use rand::Rng;
                let mut terms = Vec::new();
                for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                    if rng.random_bool(0.5) {
                        terms.push((ring.from_i64(rng.random_range(-3..=3)), i, j));
                    }
                }
                let q = BivariatePolynomial::from_terms(ring, terms);
                if q.is_zero() {
                    continue;
                }
                let (max_i, max_j) = q.max_exponents().unwrap();
                let (min_i, min_j) = q.min_exponents().unwrap();
                // Keep the shifted polynomial inside [1,1]²: only (i,j)
                // patterns that collapse to a single cell qualify.
                if max_i + (1 - min_i).max(0) > 1 || max_j + (1 - min_j).max(0) > 1 {
                    continue;
                }
                assert_eq!(transfer_polynomial(&q).unwrap(), brute_force_transfer(&q));
            }
        }
    }

    #[test]
    fn omega_word_sets_split_evenly_by_flip_parity() {
        // The grouped product relies on each Ω^{i,j} containing as many
        // even-parity words as odd-parity ones.
        for n in [1i64, 2] {
            for i in 1..=n {
                for j in 1..=n {
                    let words = 1u64 << (i + j);
                    let odd = (0..words).filter(|m| m.count_ones() % 2 == 1).count();
                    assert_eq!(odd as u64, words / 2, "Ω^{{{i},{j}}} splits evenly");
                }
            }
        }
    }

    #[test]
    fn choice_functions_distribute_evenly_over_sign_patterns() {
        // Enumerate all 4096 choice functions for n = 2 and tally the sign
        // pattern each induces on a support set; every pattern must occur
        // |C| / 2^s times, the multiplicity used by transfer_polynomial.
        let cells = [(1i64, 1i64), (1, 2), (2, 1), (2, 2)];
        for support_mask in [0b0001u32, 0b0110, 0b1111] {
            let support: Vec<usize> = (0..4).filter(|k| support_mask >> k & 1 == 1).collect();
            let mut counts = std::collections::BTreeMap::new();
            let mut choice = [0u64; 4];
            'enumerate: loop {
                let pattern: Vec<bool> = support
                    .iter()
                    .map(|&k| choice[k].count_ones() % 2 == 1)
                    .collect();
                *counts.entry(pattern).or_insert(0u64) += 1;
                for (k, &(i, j)) in cells.iter().enumerate() {
                    choice[k] += 1;
                    if choice[k] < 1 << (i + j) {
                        continue 'enumerate;
                    }
                    choice[k] = 0;
                }
                break;
            }
            let total: u64 = counts.values().sum();
            assert_eq!(total, 4096);
            assert_eq!(counts.len(), 1 << support.len());
            for count in counts.values() {
                assert_eq!(*count, 4096 >> support.len());
            }
        }
    }

    #[test]
    fn transfer_of_w_minus_z_expands_binomially() {
        let q: BivariatePolynomial = "w - z".parse().unwrap();
        let tilde = transfer_polynomial(&q).unwrap();
        // After the wz shift the support is {w²z, −wz²}; the grouped
        // product collapses to (w⁴z² − w²z⁴)^2048.
        assert_eq!(tilde.term_count(), 2049);
        assert_eq!(tilde.min_exponents(), Some((4096, 4096)));
        assert_eq!(tilde.max_exponents(), Some((8192, 8192)));
        let coeff = |i: i64, j: i64| {
            tilde
                .terms()
                .find(|(&e, _)| e == (i, j))
                .map(|(_, c)| c.clone())
        };
        assert_eq!(coeff(8192, 4096), Some(Z.one()));
        assert_eq!(coeff(4096, 8192), Some(Z.one()));
        assert_eq!(coeff(8190, 4098), Some(Z.from_i64(-2048)));
        // The middle coefficient is the central binomial C(2048, 1024).
        let mut central = BigInt::from(1u32);
        for k in 1..=1024u64 {
            central = central * BigInt::from(2048 - k + 1) / BigInt::from(k);
        }
        assert_eq!(coeff(6144, 6144), Some(Z.from_bigint(&central)));
        // Every term has the total degree the construction promises.
        for (&(i, j), _) in tilde.terms() {
            assert_eq!(i + j, 12288);
        }
    }

    #[test]
    fn transfer_annihilates_when_the_unsigned_parts_do() {
        // u and −u have the same unsigned reduced form, so any polynomial
        // killing the diagonal pair of unsigned parts transfers: q = w − z
        // has q(u₊, v₊) = 0 for u = −t, v = t, and q̃(u, v) = 0.
        let t = swap_unitary();
        let u = t.scale(&Z.from_i64(-1));
        let v = t.clone();
        let q: BivariatePolynomial = "w - z".parse().unwrap();
        let u_plus = u.u_plus().unwrap();
        let v_plus = v.u_plus().unwrap();
        assert_eq!(u_plus, v_plus);
        assert!(q.evaluate(&u_plus, &v_plus).unwrap().is_zero());
        assert!(!q.evaluate(&u, &v).unwrap().is_zero());
        let tilde = transfer_polynomial(&q).unwrap();
        assert!(tilde.evaluate(&u, &v).unwrap().is_zero());
    }

    #[test]
    fn transfer_guards() {
        assert!(matches!(
            transfer_polynomial(&BivariatePolynomial::zero(Z)),
            Err(Error::ZeroPolynomial)
        ));
        let cubic: BivariatePolynomial = "w^3 z".parse().unwrap();
        assert!(matches!(
            transfer_polynomial(&cubic),
            Err(Error::InfeasibleDegree(3))
        ));
        // A degree-2 exponent with a zero minimum shifts out of range.
        let shifty: BivariatePolynomial = "w^2 + 1".parse().unwrap();
        assert!(matches!(
            transfer_polynomial(&shifty),
            Err(Error::InfeasibleDegree(3))
        ));
    }
}
