//! One-dimensional discrete-time quantum walks with ordered and dynamically
//! disordered coin schedules, and the coin-position entanglement they produce.
//!
//! The numerical core is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases below fix the precision for the common case.
//!
//! ```
//! use qwalk_core::*;
//!
//! let seq = generate_sequence(&CoinSchedule::Sdd2, 100, 7).unwrap();
//! let mut state: WalkState64 = make_local_state(QubitSpec::new(0.0, 0.0), 100).unwrap();
//! evolve(&mut state, &seq).unwrap();
//! let s = entropy(&reduce_coin(&state)).unwrap();
//! assert!((0.0..=1.0).contains(&s));
//! ```

pub mod coins;
pub mod ensemble;
pub mod entanglement;
pub mod error;
pub mod evolution;
pub mod oracle;
pub mod scalar;
pub mod schedule;
pub mod state;

pub use coins::{
    coin_matrix, fourier, hadamard, sample_su2_uniform, sample_two_coin, CoinMatrix, CoinParams,
    UnitDraw,
};
pub use ensemble::{
    average_entanglement, average_over_sequence, best_p_scan, bloch_grid, entropy_series, eta,
    BlochGrid, EnsembleConfig, EnsembleResult, PScan, PositionInit, RealizationPolicy,
};
pub use entanglement::{entropy, reduce_coin, ReducedCoinState};
pub use error::{QwError, Result};
pub use evolution::{
    evolve, evolve_matrices, evolve_observed, reduced_series, step, step_reduced, variance_series,
    StepReport,
};
pub use oracle::{dense_oracle_evolve, dense_step_operator, DenseOperator};
pub use scalar::{CompensatedSum, Scalar};
pub use schedule::{
    generate_sequence, generate_sequence_on_stream, seeded_stream, stream_id, transient_p,
    CoinSchedule, CoinSequence, Disorder, TransientDirection, TransientShape,
};
pub use state::{
    gaussian_amplitudes, make_gaussian_state, make_local_state, make_qubit, position_probabilities,
    position_variance, GaussianSpec, QubitSpec, Spinor, WalkState,
};

pub type WalkState64 = WalkState<f64>;
pub type WalkState32 = WalkState<f32>;
pub type CoinMatrix64 = CoinMatrix<f64>;
pub type CoinMatrix32 = CoinMatrix<f32>;
pub type ReducedCoinState64 = ReducedCoinState<f64>;
pub type ReducedCoinState32 = ReducedCoinState<f32>;
pub type EnsembleResult64 = EnsembleResult<f64>;
pub type EnsembleResult32 = EnsembleResult<f32>;
pub type PScan64 = PScan<f64>;
