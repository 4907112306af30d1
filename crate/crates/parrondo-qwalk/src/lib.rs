//! Simulator for position-inhomogeneous discrete-time quantum walks and
//! Parrondo game analysis.
//!
//! Two SU(2) coins are alternated according to a repeating A/B schedule,
//! with an extra scalar phase applied to the coin whenever the walker sits
//! at the origin. The crate provides:
//!
//! - [`coin`]: SU(2) coin construction and the origin-phase modification
//! - [`walk`]: the state-vector stepper, plus a dense-matrix reference
//!   implementation used as a cross-check oracle
//! - [`observables`]: expected position, left/right probability imbalance,
//!   and coin-position entanglement entropy
//! - [`classical`]: the classical Parrondo baseline (Markov analysis and
//!   Monte Carlo)
//! - [`sweep`]: deterministic parallel parameter sweeps and experiment
//!   presets
//! - [`contour`]: zero-level-set extraction from 2D sweep grids
//! - [`output`]: CSV / JSON / SVG emitters

pub mod classical;
pub mod cli;
pub mod coin;
pub mod contour;
pub mod error;
pub mod observables;
pub mod output;
pub mod sweep;
pub mod walk;

pub use classical::{
    game_b_expected_value, simulate_classical, stationary_distribution, transition_matrix,
    ClassicalParams, ClassicalTrajectory, TransitionMatrix,
};
pub use coin::{apply_origin_phase, build_coin, unitarity_defect, CoinMatrix, CoinParams};
pub use contour::{zero_contour, GridField, Polyline};
pub use error::{Error, Result};
pub use observables::{
    coin_entropy, entanglement_entropy, expected_position, lr_probability_difference,
    position_std_dev, reduced_coin_density, CoinDensityMatrix, ObservableSeries,
};
pub use sweep::{
    preset, run_sweep, AxisName, BaseConfig, Preset, RecordMode, SweepAxis, SweepResult,
    SweepRow, SweepSpec, PRESET_NAMES,
};
pub use walk::{
    dense_oracle_evolve, evolve, init_state, step, CoinLabel, GameSpec, InitialCoin, Sequence,
    WalkState, ORACLE_MAX_STEPS,
};
