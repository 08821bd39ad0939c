//! Exact nullspace computation for coordinate matrices.
//!
//! Characteristic zero goes through fraction-free (Bareiss) elimination on
//! integer rows — rational inputs are first scaled row-wise, and all interior
//! divisions are exact by Sylvester's determinant identity — followed by
//! rational back-substitution and clearing to primitive integer vectors.
//! Prime moduli use ordinary elimination in the field. Everything is
//! deterministic: columns are processed left to right and the pivot is the
//! first row with a nonzero entry.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::ring::{Ring, Scalar};
use crate::Result;

/// Result of a kernel computation.
pub(crate) struct KernelOutcome {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    /// One vector per free column, in ascending column order. Over ℤ and ℚ
    /// the vectors are primitive integers with positive first nonzero entry.
    pub basis: Vec<Vec<Scalar>>,
}

/// Assembles the row-major coordinate matrix of a family of coordinate maps:
/// one matrix row per key appearing anywhere, one column per map.
pub(crate) fn coordinate_rows<K: Ord + Clone>(
    ring: &Ring,
    columns: &[&BTreeMap<K, Scalar>],
) -> Vec<Vec<Scalar>> {
    let keys: BTreeSet<&K> = columns.iter().flat_map(|c| c.keys()).collect();
    keys.into_iter()
        .map(|k| {
            columns
                .iter()
                .map(|c| c.get(k).cloned().unwrap_or_else(|| ring.zero()))
                .collect()
        })
        .collect()
}

/// Kernel of a `rows × cols` matrix over ℤ, ℚ or a prime field.
pub(crate) fn kernel(
    ring: &Ring,
    rows: Vec<Vec<Scalar>>,
    operation: &'static str,
) -> Result<KernelOutcome> {
    match ring {
        Ring::Integers | Ring::Rationals => Ok(kernel_char_zero(ring, rows)),
        Ring::IntegersMod(_) if ring.is_field() => Ok(kernel_prime_field(ring, rows)),
        _ => Err(Error::UnsupportedRing {
            ring: *ring,
            operation,
        }),
    }
}

fn kernel_char_zero(ring: &Ring, rows: Vec<Vec<Scalar>>) -> KernelOutcome {
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, Vec::len);
    // Scale each row to integers; row scaling does not change the kernel.
    let mut m: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|row| {
            let rats: Vec<BigRational> = row.iter().map(Scalar::to_rational).collect();
            let lcm = rats
                .iter()
                .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
            rats.iter()
                .map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer())
                .collect()
        })
        .collect();

    // Fraction-free elimination; `prev` is the previous pivot (a leading
    // minor), and the two-term update divides by it exactly.
    let mut pivot_cols = Vec::new();
    let mut pivot_row = 0usize;
    let mut prev = BigInt::one();
    for col in 0..n_cols {
        let Some(found) = (pivot_row..n_rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, found);
        for r in pivot_row + 1..n_rows {
            for c in col + 1..n_cols {
                let num = &m[pivot_row][col] * &m[r][c] - &m[r][col] * &m[pivot_row][c];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                m[r][c] = q;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[pivot_row][col].clone();
        pivot_cols.push(col);
        pivot_row += 1;
    }
    let rank = pivot_cols.len();

    let mut basis = Vec::new();
    for free in (0..n_cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![BigRational::zero(); n_cols];
        v[free] = BigRational::one();
        for k in (0..rank).rev() {
            let p = pivot_cols[k];
            let mut acc = BigRational::zero();
            for c in p + 1..n_cols {
                if !v[c].is_zero() {
                    acc += BigRational::from_integer(m[k][c].clone()) * &v[c];
                }
            }
            v[p] = -acc / BigRational::from_integer(m[k][p].clone());
        }
        basis.push(clear_to_primitive(ring, v));
    }
    KernelOutcome {
        rows: n_rows,
        cols: n_cols,
        rank,
        basis,
    }
}

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive, then re-embeds it in the ambient ring.
fn clear_to_primitive(ring: &Ring, v: Vec<BigRational>) -> Vec<Scalar> {
    let lcm = v.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = ints
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !gcd.is_zero() && !gcd.is_one() {
        for x in &mut ints {
            *x = &*x / &gcd;
        }
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in &mut ints {
            *x = -&*x;
        }
    }
    ints.iter().map(|x| ring.from_bigint(x)).collect()
}

fn kernel_prime_field(ring: &Ring, mut m: Vec<Vec<Scalar>>) -> KernelOutcome {
    let n_rows = m.len();
    let n_cols = m.first().map_or(0, Vec::len);
    let mut pivot_cols = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..n_cols {
        let Some(found) = (pivot_row..n_rows).find(|&r| !ring.is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(pivot_row, found);
        let inv = ring.inverse(&m[pivot_row][col]).expect("prime field");
        for entry in m[pivot_row][col..].iter_mut() {
            *entry = ring.mul(&inv, entry);
        }
        let (top, rest) = m.split_at_mut(pivot_row + 1);
        let pivot = &top[pivot_row];
        for row in rest {
            if ring.is_zero(&row[col]) {
                continue;
            }
            let factor = row[col].clone();
            for (entry, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                let delta = ring.mul(&factor, p);
                *entry = ring.sub(entry, &delta);
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
    }
    let rank = pivot_cols.len();

    let mut basis = Vec::new();
    for free in (0..n_cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![ring.zero(); n_cols];
        v[free] = ring.one();
        for k in (0..rank).rev() {
            let p = pivot_cols[k];
            let mut acc = ring.zero();
            for c in p + 1..n_cols {
                acc = ring.add(&acc, &ring.mul(&m[k][c], &v[c]));
            }
            v[p] = ring.neg(&acc); // pivots are normalized to 1
        }
        basis.push(v);
    }
    KernelOutcome {
        rows: n_rows,
        cols: n_cols,
        rank,
        basis,
    }
}
