use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QwError {
    /// A parameter lies outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The amplitude support would leave the preallocated lattice window.
    #[error(
        "capacity exceeded: support [{lo}, {hi}] does not fit window [{window_lo}, {window_hi}]"
    )]
    Capacity {
        lo: i64,
        hi: i64,
        window_lo: i64,
        window_hi: i64,
    },

    /// Reduced density matrix is not positive semidefinite beyond rounding.
    #[error("reduced coin state inconsistent: eigenvalue radicand {radicand:e} outside [0, 1/4]")]
    NumericalConsistency { radicand: f64 },

    /// The dense reference evolution refuses lattices beyond its size limit.
    #[error("dense oracle dimension {dim} exceeds limit {limit}")]
    OracleTooLarge { dim: usize, limit: usize },
}

pub type Result<T, E = QwError> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(QwError::Domain(msg.into()))
}
