//! Verification laboratory for state-independent quantum contextuality on
//! two qubits.
//!
//! The crate builds the 3x3 array of two-qubit Pauli products whose row and
//! column operator products are +-identity, checks the six operator
//! identities and all within-line compatibilities numerically, establishes
//! the classical bounds of the noncontextual-realist witnesses chi and
//! gamma by exhaustive enumeration, and simulates the two-setup sequential
//! measurement experiment that tests the gamma identity, shot by shot.
//!
//! Modules:
//!
//! * [`operator_algebra`] - fixed-size complex matrices, Pauli operators,
//!   tensor products.
//! * [`pm_square`] - the observable array, its line products, and the
//!   operator identity checks.
//! * [`states`] - pure and mixed two-qubit states, expectation values, and
//!   seeded random-state ensembles.
//! * [`ncr_models`] - exhaustive hidden-variable enumeration under both
//!   product-rule schemes.
//! * [`measurement_sim`] - sequential projective measurement with Lueders
//!   updates, outcome-flip noise, and statistical estimation.
//! * [`sign`], [`seeding`], [`eigen`] - shared support types.

pub mod eigen;
pub mod error;
pub mod measurement_sim;
pub mod ncr_models;
pub mod operator_algebra;
pub mod pm_square;
pub mod seeding;
pub mod sign;
pub mod states;

pub use error::{Error, Result};
pub use measurement_sim::{
    estimate, gamma_from_estimates, measure_once, run_setup, EstimateReport, GammaEstimate,
    MeasurementRecord, MeasurementSetup, NoiseModel, SetupLabel,
};
pub use ncr_models::{
    check_untested_lines, chi_of, enumerate_nine, enumerate_six, gamma_of, ncr_bounds,
    NcrBoundReport, NcrBounds, NineValueAssignment, SixValueAssignment,
};
pub use operator_algebra::{
    commutator, is_hermitian, is_involution, pauli_matrix, tensor, ComplexMatrix2, ComplexMatrix4,
    PauliLabel, ProductObservable, EPS_OP,
};
pub use pm_square::{build_square, Line, LineIdentityReport, PeresMerminSquare, SquarePosition};
pub use sign::Sign;
pub use states::{
    random_state, DensityMatrix, Ensemble, PureState, RandomStateConfig, EPS_STATE, RNG_ALGORITHM,
};
