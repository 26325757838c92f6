use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("p-adic valuation of 0 is undefined")]
    ZeroValuation,
    #[error("{what} = {value} is outside the valid range ({bound})")]
    OutOfRange {
        what: &'static str,
        value: i64,
        bound: String,
    },
    #[error("regularity of p = {p} is unverified: the check is limited to p <= {bound}")]
    Unverified { p: u64, bound: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    pub(crate) fn out_of_range(what: &'static str, value: i64, bound: impl Into<String>) -> Self {
        Error::OutOfRange {
            what,
            value,
            bound: bound.into(),
        }
    }
}
