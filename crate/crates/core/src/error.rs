//! Error type shared by every module of the crate.

use crate::ring::Ring;
use crate::words::Word;

/// Why a unitary failed to come out in signed reduced form.
///
/// Over ℤ the theory guarantees none of these can occur for a genuine
/// unitary; they are reported honestly anyway so the check never lies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReduceObstruction {
    /// Two surviving terms share the same right-hand word.
    DuplicateBeta(Word),
    /// A surviving coefficient is not +1 or -1.
    NonUnitCoefficient(String),
    /// The right-hand words do not cover the whole path space.
    IncompleteBetaCode,
    /// Two left-hand words are prefix-comparable.
    AlphaNotAntichain,
    /// The left-hand words do not cover the whole path space.
    IncompleteAlphaCode,
}

impl std::fmt::Display for ReduceObstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReduceObstruction::DuplicateBeta(w) => write!(f, "duplicate beta word {w}"),
            ReduceObstruction::NonUnitCoefficient(c) => write!(f, "non-unit coefficient {c}"),
            ReduceObstruction::IncompleteBetaCode => write!(f, "beta words do not form a complete code"),
            ReduceObstruction::AlphaNotAntichain => write!(f, "alpha words are prefix-comparable"),
            ReduceObstruction::IncompleteAlphaCode => write!(f, "alpha words do not form a complete code"),
        }
    }
}

/// Why an element is not the unitary of any prefix-code table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UvObstruction {
    /// The element is not unitary in the first place.
    NotUnitary,
    /// Two surviving terms share the same right-hand word.
    DuplicateBeta(Word),
    /// A reduced-form sign is -1.
    NegativeSign,
    /// A surviving word set is not a complete code.
    IncompleteCode,
    /// A surviving coefficient differs from 1.
    NonUnitCoefficient(String),
}

impl From<ReduceObstruction> for UvObstruction {
    fn from(o: ReduceObstruction) -> UvObstruction {
        match o {
            ReduceObstruction::DuplicateBeta(w) => UvObstruction::DuplicateBeta(w),
            ReduceObstruction::NonUnitCoefficient(c) => UvObstruction::NonUnitCoefficient(c),
            ReduceObstruction::IncompleteBetaCode
            | ReduceObstruction::AlphaNotAntichain
            | ReduceObstruction::IncompleteAlphaCode => UvObstruction::IncompleteCode,
        }
    }
}

impl std::fmt::Display for UvObstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UvObstruction::NotUnitary => write!(f, "element is not unitary"),
            UvObstruction::DuplicateBeta(w) => write!(f, "duplicate beta word {w}"),
            UvObstruction::NegativeSign => write!(f, "a reduced-form sign is negative"),
            UvObstruction::IncompleteCode => write!(f, "word set is not a complete code"),
            UvObstruction::NonUnitCoefficient(c) => write!(f, "coefficient {c} differs from 1"),
        }
    }
}

/// Everything that can go wrong across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),

    #[error("modulus {0} is too small, need n >= 2")]
    InvalidModulus(u64),

    #[error("words {0} and {1} are prefix-comparable, not an antichain")]
    NotAntichain(Word, Word),

    #[error("invalid table: {0}")]
    InvalidTable(String),

    #[error("level {requested} is below the maximum word length {required}")]
    LevelTooSmall { required: usize, requested: usize },

    #[error("cycle word must be nonempty")]
    EmptyCycle,

    #[error("element is not unitary")]
    NotUnitary,

    #[error("{operation} is not supported over {ring}")]
    UnsupportedRing { ring: Ring, operation: &'static str },

    #[error("no reduced form: {0}")]
    NotReducible(ReduceObstruction),

    #[error("not a table unitary: {0}")]
    NotInUV(UvObstruction),

    #[error("elements do not commute")]
    NotCommuting,

    #[error("transfer infeasible: maximum exponent {0} exceeds 2")]
    InfeasibleDegree(i64),

    #[error("the zero polynomial has no transfer product")]
    ZeroPolynomial,

    #[error("element is not a projection")]
    NotProjection,

    #[error("projection has no cylinder standard form: {0}")]
    NotStandardizable(String),

    #[error("the zero projection has no unit equivalence")]
    ZeroProjection,

    #[error("corner condition violated: element {0} differs from p·x·p")]
    CornerConditionViolated(usize),

    #[error("parse error: {0}")]
    Parse(String),
}
