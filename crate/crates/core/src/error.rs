use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("2-adic valuation of 0 is undefined")]
    ZeroValuation,
    #[error("{what} requires {param} >= {min}, got {got}")]
    ParamTooSmall {
        what: &'static str,
        param: &'static str,
        min: u64,
        got: u64,
    },
    #[error("{what} requires even n, got {n}")]
    OddArgument { what: &'static str, n: String },
    #[error("{what} is only defined for k in {{3, 4}}, got {k}")]
    UnsupportedK { what: &'static str, k: u64 },
    #[error("{what}: {param} = {got} exceeds configured limit {limit}")]
    OutOfRange {
        what: &'static str,
        param: &'static str,
        got: String,
        limit: String,
    },
    #[error("g_k({n}) did not reach its stable value for any k <= {k_max}")]
    ScanExhausted { n: String, k_max: u64 },
}
