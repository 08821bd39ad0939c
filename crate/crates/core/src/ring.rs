//! The three exact coefficient rings: ℤ, ℚ and ℤ/n.
//!
//! Integers are arbitrary precision, rationals are kept reduced with a
//! positive denominator (so equality is structural), and ℤ/n stores the
//! representative in `[0, n)`. A [`Scalar`] is the value, a [`Ring`] is the
//! arithmetic context; mixing scalars from different rings is a programming
//! error and panics, while the public element-level operations check ring
//! equality up front and report a mismatch error instead.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::Result;

/// Coefficient ring descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ring {
    /// ℤ with arbitrary-precision integers.
    Integers,
    /// ℚ with reduced fractions.
    Rationals,
    /// ℤ/n for n ≥ 2, representatives in `[0, n)`.
    IntegersMod(u64),
}

/// A single exact coefficient. The variant always matches its ring.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Mod(u64),
}

impl Ring {
    /// ℤ/n, rejecting n < 2.
    pub fn integers_mod(n: u64) -> Result<Ring> {
        if n < 2 {
            return Err(Error::InvalidModulus(n));
        }
        Ok(Ring::IntegersMod(n))
    }

    /// 0 in this ring.
    pub fn zero(&self) -> Scalar {
        match self {
            Ring::Integers => Scalar::Int(BigInt::zero()),
            Ring::Rationals => Scalar::Rat(BigRational::zero()),
            Ring::IntegersMod(_) => Scalar::Mod(0),
        }
    }

    /// 1 in this ring.
    pub fn one(&self) -> Scalar {
        match self {
            Ring::Integers => Scalar::Int(BigInt::one()),
            Ring::Rationals => Scalar::Rat(BigRational::one()),
            Ring::IntegersMod(_) => Scalar::Mod(1 % self.modulus()),
        }
    }

    /// The canonical image of a machine integer.
    pub fn from_i64(&self, v: i64) -> Scalar {
        self.from_bigint(&BigInt::from(v))
    }

    /// The canonical image of an arbitrary-precision integer.
    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            Ring::Integers => Scalar::Int(v.clone()),
            Ring::Rationals => Scalar::Rat(BigRational::from_integer(v.clone())),
            Ring::IntegersMod(n) => {
                let m = BigInt::from(*n);
                let r = v.mod_floor(&m);
                Scalar::Mod(u64::try_from(r).expect("residue fits in u64"))
            }
        }
    }

    /// `p/q`; only ℚ admits proper fractions (over ℤ the denominator must
    /// divide the numerator, over ℤ/n fractions are rejected outright).
    pub fn from_ratio(&self, p: &BigInt, q: &BigInt) -> Result<Scalar> {
        if q.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        match self {
            Ring::Rationals => Ok(Scalar::Rat(BigRational::new(p.clone(), q.clone()))),
            Ring::Integers => {
                let (d, r) = p.div_rem(q);
                if r.is_zero() {
                    Ok(Scalar::Int(d))
                } else {
                    Err(Error::Parse(format!("{p}/{q} is not an integer")))
                }
            }
            Ring::IntegersMod(_) => Err(Error::Parse("fractions are not scalars over Z/n".into())),
        }
    }

    fn modulus(&self) -> u64 {
        match self {
            Ring::IntegersMod(n) => *n,
            _ => unreachable!("modulus of a characteristic-zero ring"),
        }
    }

    /// 0 for ℤ and ℚ, n for ℤ/n.
    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::Integers | Ring::Rationals => 0,
            Ring::IntegersMod(n) => *n,
        }
    }

    /// ℚ and ℤ/p for prime p support exact division.
    pub fn is_field(&self) -> bool {
        match self {
            Ring::Integers => false,
            Ring::Rationals => true,
            Ring::IntegersMod(n) => is_prime_u64(*n),
        }
    }

    pub fn add(&self, x: &Scalar, y: &Scalar) -> Scalar {
        match (x, y) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a + b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod(a), Scalar::Mod(b)) => {
                Scalar::Mod(((*a as u128 + *b as u128) % self.modulus() as u128) as u64)
            }
            _ => panic!("scalar variants disagree with ring"),
        }
    }

    pub fn sub(&self, x: &Scalar, y: &Scalar) -> Scalar {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &Scalar, y: &Scalar) -> Scalar {
        match (x, y) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a * b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod(a), Scalar::Mod(b)) => {
                Scalar::Mod(((*a as u128 * *b as u128) % self.modulus() as u128) as u64)
            }
            _ => panic!("scalar variants disagree with ring"),
        }
    }

    pub fn neg(&self, x: &Scalar) -> Scalar {
        match x {
            Scalar::Int(a) => Scalar::Int(-a),
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod(a) => {
                let n = self.modulus();
                Scalar::Mod(if *a == 0 { 0 } else { n - *a })
            }
        }
    }

    /// Multiplicative inverse where one exists (±1 over ℤ, any nonzero over
    /// ℚ, units of ℤ/n).
    pub fn inverse(&self, x: &Scalar) -> Option<Scalar> {
        match x {
            Scalar::Int(a) => {
                if a.is_one() || (-a).is_one() {
                    Some(Scalar::Int(a.clone()))
                } else {
                    None
                }
            }
            Scalar::Rat(a) => {
                if a.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(a.recip()))
                }
            }
            Scalar::Mod(a) => {
                let n = self.modulus();
                let (g, inv, _) = extended_gcd(*a as i128, n as i128);
                if g != 1 {
                    None
                } else {
                    Some(Scalar::Mod(inv.rem_euclid(n as i128) as u64))
                }
            }
        }
    }

    pub fn is_zero(&self, x: &Scalar) -> bool {
        match x {
            Scalar::Int(a) => a.is_zero(),
            Scalar::Rat(a) => a.is_zero(),
            Scalar::Mod(a) => *a == 0,
        }
    }

    pub fn is_one(&self, x: &Scalar) -> bool {
        *x == self.one()
    }

    /// Whether `x` is `-1` (in ℤ/n this is the representative n-1).
    pub fn is_minus_one(&self, x: &Scalar) -> bool {
        *x == self.neg(&self.one())
    }

    /// Sign of a characteristic-zero scalar; residues report `false`, which
    /// makes the printer emit them with `+` joiners only.
    pub fn is_negative(&self, x: &Scalar) -> bool {
        match x {
            Scalar::Int(a) => a.is_negative(),
            Scalar::Rat(a) => a.is_negative(),
            Scalar::Mod(_) => false,
        }
    }

    pub fn abs(&self, x: &Scalar) -> Scalar {
        if self.is_negative(x) {
            self.neg(x)
        } else {
            x.clone()
        }
    }

    /// Parses a coefficient in the textual/JSON form: an optionally signed
    /// decimal integer, or `p/q` over ℚ.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = |_| Error::Parse(format!("invalid coefficient {s:?}"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(bad)?;
                let q: BigInt = q.trim().parse().map_err(bad)?;
                self.from_ratio(&p, &q)
            }
            None => {
                let v: BigInt = s.parse().map_err(bad)?;
                Ok(self.from_bigint(&v))
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "z"),
            Ring::Rationals => write!(f, "q"),
            Ring::IntegersMod(n) => write!(f, "z/{n}"),
        }
    }
}

impl std::str::FromStr for Ring {
    type Err = Error;

    /// Accepts `z`, `q`, or `z/<n>`.
    fn from_str(s: &str) -> Result<Ring> {
        match s {
            "z" | "Z" => Ok(Ring::Integers),
            "q" | "Q" => Ok(Ring::Rationals),
            _ => {
                let n = s
                    .strip_prefix("z/")
                    .or_else(|| s.strip_prefix("Z/"))
                    .and_then(|n| n.parse::<u64>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown ring {s:?}")))?;
                Ring::integers_mod(n)
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(a) => write!(f, "{a}"),
            Scalar::Rat(a) => {
                if a.denom().is_one() {
                    write!(f, "{}", a.numer())
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())
                }
            }
            Scalar::Mod(a) => write!(f, "{a}"),
        }
    }
}

impl Scalar {
    /// The exact rational value of a characteristic-zero scalar.
    pub(crate) fn to_rational(&self) -> BigRational {
        match self {
            Scalar::Int(a) => BigRational::from_integer(a.clone()),
            Scalar::Rat(a) => a.clone(),
            Scalar::Mod(_) => panic!("residue has no rational value"),
        }
    }
}

fn extended_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = extended_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Deterministic Miller–Rabin for u64 (the usual 12-base certificate).
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    let pow_mod = |mut base: u128, mut exp: u64, m: u128| -> u128 {
        let mut acc: u128 = 1;
        base %= m;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a as u128, d, n as u128);
        if x == 1 || x == (n - 1) as u128 {
            continue;
        }
        for _ in 0..r - 1 {
            x = x * x % n as u128;
            if x == (n - 1) as u128 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
