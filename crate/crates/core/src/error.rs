use alloc::string::String;
use core::fmt;

/// Errors raised by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An image table that is not a bijection of `{0, ..., d-1}`.
    InvalidPermutation(String),
    /// Objects of different degrees were combined.
    DegreeMismatch { expected: usize, found: usize },
    /// Balls of different shape were combined.
    Dimension(String),
    /// A group or search space exceeded the configured element cap.
    Capacity { cap: usize },
    /// A radius or depth outside the admissible range.
    RadiusOutOfRange { radius: usize, max: usize },
    /// An element that was required to lie in a group does not.
    Membership(String),
    /// A set that was required to be a subgroup is not one.
    NotSubgroup(String),
    /// Input violating the hypotheses of an operation.
    Precondition(String),
    /// Recursive data violating the consistency condition of the realization.
    Inconsistent(String),
    /// A request outside the supported contract.
    Unsupported(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidPermutation(s) => write!(f, "invalid permutation: {s}"),
            Error::DegreeMismatch { expected, found } => {
                write!(f, "degree mismatch: expected {expected}, found {found}")
            }
            Error::Dimension(s) => write!(f, "dimension error: {s}"),
            Error::Capacity { cap } => write!(f, "capacity exceeded: more than {cap} elements"),
            Error::RadiusOutOfRange { radius, max } => {
                write!(f, "radius {radius} out of range (maximum {max})")
            }
            Error::Membership(s) => write!(f, "membership error: {s}"),
            Error::NotSubgroup(s) => write!(f, "not a subgroup: {s}"),
            Error::Precondition(s) => write!(f, "precondition failed: {s}"),
            Error::Inconsistent(s) => write!(f, "inconsistent ball automorphism: {s}"),
            Error::Unsupported(s) => write!(f, "unsupported: {s}"),
        }
    }
}

impl core::error::Error for Error {}
