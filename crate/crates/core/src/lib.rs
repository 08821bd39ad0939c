//! Exact symbolic computation in the Leavitt algebra `L(2,R)`.
//!
//! The algebra is generated over a commutative coefficient ring `R` by two
//! isometries `a`, `b` and their adjoints subject to
//!
//! ```text
//! a*a = b*b = 1,      aa* + bb* = 1.
//! ```
//!
//! Everything here is exact: coefficients live in ℤ (arbitrary precision),
//! ℚ (reduced fractions) or ℤ/n, and every operation lands back on the
//! canonical monomial basis, so equality is literal coordinate equality.
//!
//! The crate is organised around that basis:
//!
//! * [`words`] — finite words over `{a, b}`, prefix comparisons, complete
//!   prefix codes (Kraft sum 1) and uniform refinement.
//! * [`ring`] — the three coefficient rings and their scalars.
//! * [`algebra`] — canonical forms, multiplication, the involution, unitary
//!   tests, uniform expansions, signed reduced forms of unitaries and the
//!   power-independence ("full spectrum") check.
//! * [`rep`] — the representation on eventually periodic infinite paths,
//!   used throughout as an independent oracle for algebra identities.
//! * [`thompson`] — elements of Thompson's group V as prefix-code tables,
//!   their composition calculus and the embedding into unitaries.
//! * [`tensor`] — the tensor square `L(2) ⊗ L(2)`, Laurent-monomial images
//!   and exact linear-independence checks.
//! * [`relations`] — commutators, exact annihilating polynomials for
//!   commuting unitary pairs, and the sign-transfer product construction.
//! * [`projections`] — projections, their cylinder standard form, explicit
//!   equivalence with the unit, and the corner-twist rebasing.
//! * [`sampling`] — seeded random generators for codes, tables, unitaries
//!   and paths (used by the test suites and benchmarks).
//! * [`json`] — stable JSON forms for elements, tensors and tables.

pub mod algebra;
pub mod error;
pub mod json;
mod linalg;
pub mod poly;
pub mod projections;
pub mod rep;
pub mod relations;
pub mod ring;
pub mod sampling;
pub mod tensor;
pub mod thompson;
pub mod words;

pub use algebra::{AlgebraElement, Monomial, Sign, UnitaryReducedForm, UnivariatePolynomial};
pub use error::Error;
pub use poly::BivariatePolynomial;
pub use rep::{EventuallyPeriodicPath, PathVector};
pub use ring::{Ring, Scalar};
pub use tensor::TensorElement;
pub use thompson::Table;
pub use words::{Letter, PrefixCode, PrefixRelation, Word};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
