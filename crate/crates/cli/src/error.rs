use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] whcalc_core::Error),
    #[error("{what} = {value} exceeds WHCALC_MAX_DEGREE_CAP = {cap}")]
    Cap { what: &'static str, value: i64, cap: i64 },
    #[error("invalid WHCALC_MAX_DEGREE_CAP value {0:?}")]
    BadCap(String),
    #[error("verification failed: {0}")]
    Verify(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 0 ok, 1 internal inconsistency, 2 precondition, 3 range.
    pub fn exit_code(&self) -> i32 {
        use whcalc_core::Error as E;
        match self {
            CliError::Core(E::NotOddPrime(_) | E::Precondition(_) | E::Unverified { .. } | E::ZeroValuation) => 2,
            CliError::Core(E::OutOfRange { .. }) | CliError::Cap { .. } => 3,
            CliError::BadCap(_) => 2,
            CliError::Core(E::Inconsistency(_)) | CliError::Verify(_) => 1,
            CliError::Io(_) | CliError::Json(_) | CliError::Csv(_) => 1,
        }
    }
}
