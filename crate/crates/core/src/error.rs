use core::fmt;

use crate::solver::Rejection;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Radicand is not a squarefree integer `≥ 2`.
    InvalidRadicand(u64),
    /// Operands live in two different quadratic fields.
    MixedFields(u64, u64),
    /// Angle pair violates `−1 < φ < 1` or `φ₁ ≠ φ₂`.
    InvalidPair(&'static str),
    /// The curve has a repeated root or zero discriminant.
    SingularCurve,
    PointNotOnCurve,
    /// The seed of a generation run does not give a triangle pair.
    SeedRejected(Rejection),
    NotSquarefree(u64),
    /// Conic parameter makes `t² − 2φt + 1` vanish.
    DegenerateParameter,
    /// A cosine that must be rational is not.
    NotRational,
    InvalidBound,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidRadicand(d) => write!(f, "{d} is not a squarefree integer >= 2"),
            Error::MixedFields(p, q) => write!(f, "elements of Q(sqrt({p})) and Q(sqrt({q})) cannot be mixed"),
            Error::InvalidPair(why) => write!(f, "invalid angle pair: {why}"),
            Error::SingularCurve => f.write_str("singular curve"),
            Error::PointNotOnCurve => f.write_str("point is not on the curve"),
            Error::SeedRejected(r) => write!(f, "seed rejected: {r}"),
            Error::NotSquarefree(n) => write!(f, "{n} is not squarefree"),
            Error::DegenerateParameter => f.write_str("parameter makes the conic denominator vanish"),
            Error::NotRational => f.write_str("value must be rational"),
            Error::InvalidBound => f.write_str("bound must be at least 1"),
        }
    }
}

impl core::error::Error for Error {}
