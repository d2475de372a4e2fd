use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("sieve limit {limit} outside [2, {cap}]")]
    LimitOutOfRange { limit: u64, cap: u64 },

    #[error("argument {x} exceeds the sieve limit {limit}")]
    BeyondLimit { x: f64, limit: u64 },

    #[error("{function}({value}) is outside its domain {domain}")]
    Domain {
        function: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("no trusted splitting data for prime(s) {0:?}; supply bad_primes decompositions")]
    BadPrime(Vec<u64>),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: {message}")]
    Validation { line: usize, message: String },

    #[error("invalid polynomial: {0}")]
    Polynomial(String),

    #[error("{function} has a pole at {value}")]
    Pole { function: &'static str, value: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(function: &'static str, value: f64, domain: &'static str) -> Self {
        Error::Domain {
            function,
            value,
            domain,
        }
    }
}
