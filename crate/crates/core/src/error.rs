use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    Domain(&'static str),
    /// A table or buffer would exceed its configured memory budget.
    Resource { requested: u64, budget: u64 },
    /// A distance matrix cannot be realized with the required rational coordinates.
    Inconsistent(&'static str),
    /// Malformed matrix or point data.
    Format(String),
    /// A parameter choice makes a denominator vanish.
    DegenerateParameter,
    /// A value does not fit the fixed-width type it is stored in.
    Overflow,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Resource { requested, budget } => write!(
                f,
                "resource limit: {requested} bytes requested, budget is {budget} bytes"
            ),
            Error::Inconsistent(msg) => write!(f, "inconsistent distances: {msg}"),
            Error::Format(msg) => write!(f, "format error: {msg}"),
            Error::DegenerateParameter => write!(f, "degenerate parameter: zero denominator"),
            Error::Overflow => write!(f, "value does not fit into a 64-bit side length"),
        }
    }
}

impl core::error::Error for Error {}
