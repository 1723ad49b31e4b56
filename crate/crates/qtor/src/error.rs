//! Error types shared across the solver.

use thiserror::Error;

/// Errors produced by the spectral solver pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// Structural mismatch between operands (angle dimension, component count).
    #[error("structural mismatch: {0}")]
    Structural(String),

    /// Model parameter sits on a degenerate boundary (e.g. 4π²μj² = 1).
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),

    /// No center directions: the requested torus has dimension zero.
    #[error("empty center spectrum: {0}")]
    EmptyCenter(String),

    /// The Lindstedt non-resonance condition fails.
    #[error("resonance at k={k:?}, j={j}: |F| = {value:.3e}")]
    Resonance { k: Vec<i64>, j: i64, value: f64 },

    /// A zero-mean or symmetry constraint is violated beyond tolerance.
    #[error("constraint violation: {0}")]
    Constraint(String),

    /// Exact resonance ω·k = 0 encountered.
    #[error("resonant frequency: omega.k = 0 at k={0:?}")]
    ResonantFrequency(Vec<i64>),

    /// Cohomology right-hand side has a non-removable average.
    #[error("cohomology solvability: |avg| = {avg:.3e} exceeds tolerance {tol:.3e}")]
    Solvability { avg: f64, tol: f64 },

    /// Graph-transform contraction estimate is not < 1.
    #[error("perturbation too large for splitting update: contraction {0:.3e} >= 1")]
    PerturbationTooLarge(f64),

    /// Cocycle evolution requested in a forbidden time direction.
    #[error("evolution direction not defined on bundle {bundle}: t = {t}")]
    Direction { bundle: char, t: f64 },

    /// Fitted decay rates do not certify a dichotomy.
    #[error("no dichotomy: fitted beta = {0:.3e} <= 0")]
    NoDichotomy(f64),

    /// The truncated direct system is singular.
    #[error("truncation resonance: direct Galerkin system is singular ({0})")]
    TruncationResonance(String),

    /// The averaged twist matrix is singular.
    #[error("twist failure: {0}")]
    Twist(String),

    /// Center-fiber geometry broke down (J_c singular, DK rank-deficient).
    #[error("center geometry: {0}")]
    Geometry(String),

    /// The Newton residual increased for two consecutive steps.
    #[error("divergence: residual grew from {from:.3e} to {to:.3e}")]
    Divergence { from: f64, to: f64 },

    /// The analyticity-loss schedule is exhausted.
    #[error("schedule exhausted: rho would drop to {rho:.3e} below rho_inf {rho_inf:.3e}")]
    ScheduleExhausted { rho: f64, rho_inf: f64 },

    /// A-posteriori precheck failed and --force was not given.
    #[error("a-posteriori precheck failed: {0}")]
    Precheck(String),

    /// Phase alignment found no root; the tori are genuinely distinct.
    #[error("alignment failure: {0}")]
    AlignmentFailure(String),

    /// Configuration is invalid.
    #[error("config error: {0}")]
    Config(String),

    /// Serialization / IO error.
    #[error("io error: {0}")]
    Io(String),

    /// A sub-solver error with the Newton step it occurred in.
    #[error("newton step {step}: {source}")]
    Step {
        step: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Attach a step context to a sub-solver error.
    pub fn with_step(self, step: usize) -> Self {
        Error::Step {
            step,
            source: Box::new(self),
        }
    }
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
