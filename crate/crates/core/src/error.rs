use core::fmt;

/// Errors raised by the digit, dimension and sampling routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Digits are positive integers; zero (or a non-positive index) was supplied.
    ZeroDigit,
    /// A real argument fell outside `[0, 1)`.
    OutOfUnitInterval(f64),
    /// A parameter violated its documented range.
    Domain(&'static str),
    /// `locate` scanned up to `n_max` cells without reaching `x`.
    TailExhausted { n_max: u64 },
    /// The distribution rejected its own validation checks.
    Invalid(ValidationError),
    /// A series could not be certified within the configured horizon.
    NonConvergent { horizon: u64, tail_bound: f64 },
    /// The input needs information the caller did not supply (for example a tail bound).
    Unsupported(&'static str),
    /// The digit carries zero mass under the distribution.
    OutsideSupport(u64),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroDigit => f.write_str("digits must be positive integers"),
            Error::OutOfUnitInterval(x) => write!(f, "{x} is outside [0, 1)"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::TailExhausted { n_max } => {
                write!(f, "point lies beyond the resolvable tail (scanned {n_max} cells)")
            }
            Error::Invalid(e) => write!(f, "invalid distribution: {e}"),
            Error::NonConvergent { horizon, tail_bound } => write!(
                f,
                "series not certified after {horizon} terms (tail bound {tail_bound:e})"
            ),
            Error::Unsupported(msg) => write!(f, "unsupported input: {msg}"),
            Error::OutsideSupport(n) => write!(f, "digit {n} has zero probability"),
        }
    }
}

impl core::error::Error for Error {}

impl From<ValidationError> for Error {
    fn from(e: ValidationError) -> Self {
        Error::Invalid(e)
    }
}

/// First failed check of [`crate::distributions::validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum ValidationError {
    Parameter { name: &'static str, value: f64, expected: &'static str },
    Tolerance(f64),
    EmptySupport,
    PmfOutOfRange { index: u64, value: f64 },
    PrefixNotIncreasing { index: u64 },
    PrefixExceedsOne { index: u64, prefix: f64 },
    /// Total mass could not be pinned to 1 within the tolerance.
    MassNotCertified { index: u64, mass: f64, tail_bound: f64 },
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationError::Parameter { name, value, expected } => {
                write!(f, "parameter {name}={value} must satisfy {expected}")
            }
            ValidationError::Tolerance(t) => write!(f, "tolerance {t} must be positive"),
            ValidationError::EmptySupport => f.write_str("support is empty"),
            ValidationError::PmfOutOfRange { index, value } => {
                write!(f, "p_{index} = {value} is not in (0, 1)")
            }
            ValidationError::PrefixNotIncreasing { index } => {
                write!(f, "prefix sum does not increase at index {index}")
            }
            ValidationError::PrefixExceedsOne { index, prefix } => {
                write!(f, "prefix sum exceeds 1 at index {index} ({prefix})")
            }
            ValidationError::MassNotCertified { index, mass, tail_bound } => write!(
                f,
                "total mass not certified at index {index}: partial sum {mass}, tail bound {tail_bound:e}"
            ),
        }
    }
}

impl core::error::Error for ValidationError {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
