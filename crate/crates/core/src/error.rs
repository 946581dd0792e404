use thiserror::Error;

/// Errors raised when inputs violate a documented contract.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A pure state whose amplitudes are not unit norm.
    #[error(
        "state vector is not normalized: |norm^2 - 1| = {deviation:.3e} exceeds {tolerance:.1e}"
    )]
    NotNormalized { deviation: f64, tolerance: f64 },

    /// A density matrix that is not Hermitian within tolerance.
    #[error("density matrix is not Hermitian: max |rho - rho^dag| = {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    /// A density matrix whose trace is not 1 within tolerance.
    #[error("density matrix trace is {trace:?}, expected 1")]
    BadTrace { trace: (f64, f64) },

    /// A density matrix with a negative eigenvalue beyond tolerance.
    #[error("density matrix is not positive semidefinite: min eigenvalue = {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },

    /// A flip probability outside [0, 1/2].
    #[error("flip probability {value} is outside [0, 0.5]")]
    BadFlipProbability { value: f64 },

    /// A rank parameter outside 1..=4.
    #[error("rank {rank} is outside 1..=4")]
    BadRank { rank: u8 },

    /// A shot count of zero.
    #[error("shot count must be at least 1")]
    ZeroShots,

    /// A measurement sequence whose members do not pairwise commute.
    #[error("measurement sequence members do not pairwise commute: max |[A,B]| = {deviation:.3e}")]
    NonCommutingSequence { deviation: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
