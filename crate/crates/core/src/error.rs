use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use crate::num::Rational;

/// Which structural condition on a support family failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// The origin is not in any support.
    H1,
    /// `#I + #J_I >= n` for every coordinate subset `I`.
    H2,
    /// Every support contains a positive multiple of every basis vector.
    H3,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::H1 => "H1",
            Condition::H2 => "H2",
            Condition::H3 => "H3",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    EmptyPointSet,
    DimensionMismatch { expected: usize, found: usize },
    /// A family must contain exactly `n` sets in dimension `n`.
    FamilySize { expected: usize, found: usize },
    IndexOutOfRange { index: usize, dim: usize },
    /// Inclusion-exclusion over lattice polytopes produced a non-integer.
    NonIntegralMixedVolume(Rational),
    NegativeMixedVolume(Rational),
    DegeneratePolytope,
    H3ViolatedOnAxis(usize),
    NotContained,
    MixedSides,
    ConditionFailed { condition: Condition, witness: Option<String> },
    /// Two independent routes to the same quantity disagree.
    RouteDisagreement { what: &'static str, left: Box<Rational>, right: Box<Rational> },
    NonIntegralMultiplicity(Rational),
    InvalidStratum(String),
    NotAZero,
    NoStabilization { k_max: usize },
    SingularLinearPart,
    InvalidArgument(String),
    /// A computed quantity violates a proven bound.
    InvariantBreach(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyPointSet => f.write_str("empty point set"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::FamilySize { expected, found } => {
                write!(f, "family must have {expected} sets in dimension {expected}, found {found}")
            }
            Error::IndexOutOfRange { index, dim } => {
                write!(f, "coordinate index {index} out of range for dimension {dim}")
            }
            Error::NonIntegralMixedVolume(v) => write!(f, "mixed volume {v} is not an integer"),
            Error::NegativeMixedVolume(v) => write!(f, "mixed volume {v} is negative"),
            Error::DegeneratePolytope => f.write_str("degenerate polytope"),
            Error::H3ViolatedOnAxis(i) => write!(f, "H3 violated on axis {}", i + 1),
            Error::NotContained => f.write_str("region is not contained in the function domain"),
            Error::MixedSides => f.write_str("cannot convolve lower and upper envelopes together"),
            Error::ConditionFailed { condition, witness } => match witness {
                Some(w) => write!(f, "condition {condition} fails (witness I = {w})"),
                None => write!(f, "condition {condition} fails"),
            },
            Error::RouteDisagreement { what, left, right } => {
                write!(f, "routes disagree on {what}: {left} vs {right}")
            }
            Error::NonIntegralMultiplicity(v) => write!(f, "multiplicity {v} is not an integer"),
            Error::InvalidStratum(s) => write!(f, "invalid stratum I = {s}"),
            Error::NotAZero => f.write_str("not a zero"),
            Error::NoStabilization { k_max } => write!(
                f,
                "no stabilization <= K_max = {k_max} (zero may be non-isolated or cap too small)"
            ),
            Error::SingularLinearPart => {
                f.write_str("random linear part stayed singular after all retries")
            }
            Error::InvalidArgument(s) => f.write_str(s),
            Error::InvariantBreach(s) => write!(f, "invariant breach: {s}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
