use thiserror::Error;

/// Errors raised by group construction and the induction computations.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed group spec at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("group order exceeds the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("action is not a homomorphism into Aut(Z/{modulus}): {reason}")]
    BadAction { modulus: u64, reason: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("subgroup is not a {0}-group")]
    NotPGroup(u64),

    #[error("group is not {0}-hyperelementary")]
    NotHyperelementary(u64),

    #[error("{prime} does not divide the group order {order}")]
    PrimeDoesNotDivide { prime: u64, order: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// No p-local solution to the induction system. Induction theory rules this out,
    /// so it points at a bug or an out-of-scope input.
    #[error("no {prime}-local induction certificate exists for the given family")]
    NoSolution { prime: u64 },

    /// A guaranteed mathematical outcome failed to materialize. Always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
