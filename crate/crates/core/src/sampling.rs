//! Seeded random generators for property tests and benchmarks.
//!
//! Everything here is deterministic given the caller's RNG, so test
//! failures replay. The generators favor small word lengths and small
//! tables: the algebra's interesting behavior (rewrites, merges, code
//! refinement) already shows up at depth 3–4, and matrix sizes stay
//! desk-scale.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use crate::algebra::AlgebraElement;
use crate::rep::EventuallyPeriodicPath;
use crate::ring::Ring;
use crate::thompson::{Table, TablePair};
use crate::words::{Letter, PrefixCode, Word};

pub fn random_letter<R: Rng + ?Sized>(rng: &mut R) -> Letter {
    if rng.random_bool(0.5) {
        Letter::A
    } else {
        Letter::B
    }
}

/// A word of uniformly random length `0 ..= max_len`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    Word::from_letters((0..len).map(|_| random_letter(rng)))
}

/// A complete prefix code with exactly `size` words, none longer than
/// `max_depth`. Built by splitting leaves of the binary tree at random,
/// so `size ≤ 2^max_depth` must hold.
pub fn random_complete_code_of_size<R: Rng + ?Sized>(
    rng: &mut R,
    size: usize,
    max_depth: usize,
) -> PrefixCode {
    assert!(size >= 1 && size <= 1 << max_depth, "unreachable code size");
    let mut leaves = vec![Word::empty()];
    while leaves.len() < size {
        let splittable: Vec<usize> = (0..leaves.len())
            .filter(|&i| leaves[i].len() < max_depth)
            .collect();
        let &i = splittable.choose(rng).expect("size bound keeps a leaf splittable");
        let leaf = leaves.swap_remove(i);
        leaves.push(leaf.append(Letter::A));
        leaves.push(leaf.append(Letter::B));
    }
    PrefixCode::new(leaves).expect("tree leaves form a code")
}

/// A complete prefix code with `1 ..= max_size` words of depth ≤ `max_depth`.
pub fn random_complete_code<R: Rng + ?Sized>(
    rng: &mut R,
    max_size: usize,
    max_depth: usize,
) -> PrefixCode {
    let size = rng.random_range(1..=max_size.min(1 << max_depth));
    random_complete_code_of_size(rng, size, max_depth)
}

/// A nonempty antichain: a random subset of a random complete code.
pub fn random_antichain<R: Rng + ?Sized>(
    rng: &mut R,
    max_size: usize,
    max_depth: usize,
) -> PrefixCode {
    let code = random_complete_code(rng, max_size, max_depth);
    let mut kept: Vec<Word> = code
        .iter()
        .filter(|_| rng.random_bool(0.7))
        .cloned()
        .collect();
    if kept.is_empty() {
        kept.push(code.iter().next().expect("complete codes are nonempty").clone());
    }
    PrefixCode::new(kept).expect("subset of a code is a code")
}

/// A uniformly scrambled table: a random complete code paired with a
/// random permutation of another code of the same size.
pub fn random_table<R: Rng + ?Sized>(rng: &mut R) -> Table {
    let size = rng.random_range(1..=6);
    let domain = random_complete_code_of_size(rng, size, 4);
    let range = random_complete_code_of_size(rng, size, 4);
    let mut ranges: Vec<Word> = range.iter().cloned().collect();
    ranges.shuffle(rng);
    Table::new(
        domain
            .iter()
            .cloned()
            .zip(ranges)
            .map(|(d, r)| TablePair::new(r, d)),
    )
    .expect("two same-size codes pair into a table")
}

/// The unitary of a random table.
pub fn random_table_unitary<R: Rng + ?Sized>(rng: &mut R, ring: Ring) -> AlgebraElement {
    random_table(rng).to_unitary(ring)
}

/// A diagonal unitary `Σ ±ββ*` over a random complete code.
pub fn random_sign_diagonal<R: Rng + ?Sized>(rng: &mut R, ring: Ring) -> AlgebraElement {
    let code = random_complete_code(rng, 4, 3);
    AlgebraElement::from_terms(
        ring,
        code.iter().map(|w| {
            let sign = if rng.random_bool(0.5) { 1 } else { -1 };
            (ring.from_i64(sign), w.clone(), w.clone())
        }),
    )
}

/// A unitary built as a product of 1–3 table unitaries and sign diagonals.
/// Over ℤ and ℚ these are exactly the elements with reduced forms.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, ring: Ring) -> AlgebraElement {
    let mut u = AlgebraElement::one(ring);
    for _ in 0..rng.random_range(1..=3) {
        let factor = if rng.random_bool(0.5) {
            random_table_unitary(rng, ring)
        } else {
            random_sign_diagonal(rng, ring)
        };
        u = &u * &factor;
    }
    u
}

/// An arbitrary element: up to `max_terms` monomials with words of length
/// ≤ `max_word_len` and integer coefficients of magnitude ≤ `coeff_bound`.
pub fn random_element<R: Rng + ?Sized>(
    rng: &mut R,
    ring: Ring,
    max_word_len: usize,
    coeff_bound: i64,
    max_terms: usize,
) -> AlgebraElement {
    let terms = (0..rng.random_range(1..=max_terms)).map(|_| {
        (
            ring.from_i64(rng.random_range(-coeff_bound..=coeff_bound)),
            random_word(rng, max_word_len),
            random_word(rng, max_word_len),
        )
    });
    AlgebraElement::from_terms(ring, terms.collect::<Vec<_>>())
}

/// An eventually periodic path whose canonical cycle has length at least
/// `min_cycle_len`.
pub fn random_periodic_path<R: Rng + ?Sized>(
    rng: &mut R,
    min_cycle_len: usize,
) -> EventuallyPeriodicPath {
    loop {
        let prefix = random_word(rng, 3);
        let cycle_len = rng.random_range(min_cycle_len.max(1)..=min_cycle_len.max(1) + 3);
        let cycle = Word::from_letters((0..cycle_len).map(|_| random_letter(rng)));
        let path = EventuallyPeriodicPath::new(prefix, cycle).expect("cycle nonempty");
        if path.cycle().len() >= min_cycle_len {
            return path;
        }
    }
}

/// A projection `Σ ββ*` over a random antichain.
pub fn random_antichain_projection<R: Rng + ?Sized>(rng: &mut R, ring: Ring) -> AlgebraElement {
    let code = random_antichain(rng, 6, 4);
    AlgebraElement::from_terms(
        ring,
        code.iter().map(|w| (ring.one(), w.clone(), w.clone())),
    )
}

/// The table acting as `g` inside the cylinder `Z(w)` and as the identity
/// outside it.
pub fn embed_table_in_cylinder(g: &Table, w: &Word) -> Table {
    let mut pairs: Vec<TablePair> = g
        .pairs()
        .iter()
        .map(|p| TablePair::new(w.concat(&p.range), w.concat(&p.domain)))
        .collect();
    // The complement of Z(w) is covered by flipping each letter of w in
    // turn: {w₁..wᵢ₋₁·w̄ᵢ : 1 ≤ i ≤ |w|}.
    for i in 0..w.len() {
        let mut sibling: Vec<Letter> = w.letters()[..i].to_vec();
        sibling.push(w.letters()[i].flip());
        let fixed = Word::from_letters(sibling);
        pairs.push(TablePair::new(fixed.clone(), fixed));
    }
    Table::new(pairs).expect("cylinder embedding of a table is a table")
}

/// A commuting pair of tables: powers of one element, block sums with
/// disjoint supports, or a conjugate of either kind.
pub fn random_commuting_tables<R: Rng + ?Sized>(rng: &mut R) -> (Table, Table) {
    let base = match rng.random_range(0..3) {
        0 => {
            let g = random_table(rng);
            let power = |k: u32| {
                let mut acc = Table::identity();
                for _ in 0..k {
                    acc = acc.compose(&g).reduce();
                }
                acc
            };
            (power(rng.random_range(1..=3)), power(rng.random_range(1..=3)))
        }
        1 => {
            let a = Word::letter(Letter::A);
            let b = Word::letter(Letter::B);
            (
                embed_table_in_cylinder(&random_table(rng), &a),
                embed_table_in_cylinder(&random_table(rng), &b),
            )
        }
        _ => {
            // Sibling cylinders Z(wa), Z(wb) are disjoint, so the two
            // embedded tables commute.
            let w: Word = random_word(rng, 2);
            (
                embed_table_in_cylinder(&random_table(rng), &w.append(Letter::A)),
                embed_table_in_cylinder(&random_table(rng), &w.append(Letter::B)),
            )
        }
    };
    if rng.random_bool(0.5) {
        let conj = random_table(rng);
        let inv = conj.inverse();
        (
            conj.compose(&base.0).compose(&inv).reduce(),
            conj.compose(&base.1).compose(&inv).reduce(),
        )
    } else {
        base
    }
}

/// A commuting pair of unitaries with reduced forms: table pairs, powers
/// with sign twists, or same-code diagonals, optionally conjugated.
pub fn random_commuting_unitaries<R: Rng + ?Sized>(
    rng: &mut R,
    ring: Ring,
) -> (AlgebraElement, AlgebraElement) {
    let (u, v) = match rng.random_range(0..3) {
        0 => {
            let (g, h) = random_commuting_tables(rng);
            (g.to_unitary(ring), h.to_unitary(ring))
        }
        1 => {
            let t = random_unitary(rng, ring);
            let sign = if rng.random_bool(0.5) { 1 } else { -1 };
            let u = t.pow(rng.random_range(1..=2));
            let v = t.pow(rng.random_range(1..=2)).scale(&ring.from_i64(sign));
            (u, v)
        }
        _ => {
            let code = random_complete_code(rng, 4, 3);
            let diag = |rng: &mut R| {
                AlgebraElement::from_terms(
                    ring,
                    code.iter()
                        .map(|w| {
                            let sign = if rng.random_bool(0.5) { 1 } else { -1 };
                            (ring.from_i64(sign), w.clone(), w.clone())
                        })
                        .collect::<Vec<_>>(),
                )
            };
            (diag(rng), diag(rng))
        }
    };
    if rng.random_bool(0.3) {
        let w = random_table_unitary(rng, ring);
        let conj = |x: &AlgebraElement| &(&w * x) * &w.adjoint();
        (conj(&u), conj(&v))
    } else {
        (u, v)
    }
}

/// Conjugation target for block sums embedded in disjoint cylinders:
/// `aua* + bb*` and `aa* + bvb*` always commute in the algebra.
pub fn embed_unitary_in_cylinder(u: &AlgebraElement, w: &Word) -> AlgebraElement {
    let ring = u.ring();
    let gamma = AlgebraElement::word(ring, w);
    let corner = &(&gamma * u) * &gamma.adjoint();
    let complement = &AlgebraElement::one(ring) - &(&gamma * &gamma.adjoint());
    &corner + &complement
}
