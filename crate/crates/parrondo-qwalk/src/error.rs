use thiserror::Error;

/// Errors produced by simulator construction and evolution.
#[derive(Debug, Error)]
pub enum Error {
    #[error("angle must be a finite real number, got {0}")]
    NonFiniteAngle(f64),

    #[error("initial coin angle out of range: {name} = {value} (expected {range})")]
    AngleOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("game sequence must be a nonempty string over {{A, B}}, got {0:?}")]
    InvalidSequence(String),

    #[error("lattice capacity exceeded: step {step} would reach the boundary of a half-width-{half_width} lattice")]
    Capacity { step: usize, half_width: usize },

    #[error("dense oracle limited to 8 steps, got {0}")]
    OracleCapacity(usize),

    #[error("classical bias c must satisfy 0 <= c < 1/10, got {0}")]
    InvalidBias(f64),

    #[error("linear solve failed: {0}")]
    SingularSystem(String),

    #[error("density-matrix eigenvalue {0} outside [0, 1] beyond numerical tolerance")]
    InvalidEigenvalue(f64),

    #[error("invalid sweep axis {name}: {reason}")]
    InvalidAxis { name: String, reason: String },

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("unknown preset {got:?}; valid presets: {valid}")]
    UnknownPreset { got: String, valid: String },

    #[error("zero contour requires a two-axis final-only sweep result")]
    ContourShape,

    #[error("grid-point {index} ({context}): {source}")]
    SweepPoint {
        index: usize,
        context: String,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
