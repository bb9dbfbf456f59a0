use num_complex::Complex64;
use thiserror::Error;

use crate::coxaudit::Intersection;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("all amplitudes are below {0:e} in magnitude")]
    ZeroVector(f64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {0} is outside the supported range 1..=4096")]
    UnsupportedDimension(usize),

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("basis is not orthonormal (max deviation {0:e})")]
    NotOrthonormal(f64),

    #[error("rank {rank} is not in 1..={dim}")]
    InvalidRank { rank: usize, dim: usize },

    #[error("marginal entry {index} has imaginary residue {residue:e}")]
    ImaginaryResidue { index: usize, residue: f64 },

    #[error("postselection overlap |<b|a>| = {0:e} is below the admissible threshold")]
    NearOrthogonalPostSelection(f64),

    #[error("cross-basis overlap |<a{a}|b{b}>| = {magnitude:e} vanishes")]
    VanishingOverlap { a: usize, b: usize, magnitude: f64 },

    #[error("reconstructed matrix violates density-matrix invariants: {0}")]
    InvariantViolation(String),

    #[error("evidence {0} is not positive")]
    ZeroEvidence(f64),

    #[error("evidence {given} disagrees with the computed marginal {computed}")]
    InconsistentEvidence { given: f64, computed: f64 },

    #[error("invalid classical distribution: {0}")]
    InvalidDistribution(String),

    #[error("length mismatch: {0} values against {1} parameters")]
    LengthMismatch(usize, usize),

    #[error("curve needs at least two distinct points, got {0}")]
    TooFewPoints(usize),

    #[error("parameter is not strictly increasing at index {0}")]
    NonMonotoneParameter(usize),

    #[error("curve self-intersects at {} point(s)", .0.len())]
    CurveSelfIntersects(Vec<Intersection>),

    #[error("curve is closed (endpoint gap {0:e})")]
    CurveClosed(f64),

    #[error("plausibility scale is degenerate (v_false = {v_false}, v_true = {v_true})")]
    DegenerateScale { v_false: f64, v_true: f64 },

    #[error("query {query} lies {distance:e} away from the curve")]
    QueryOffCurve { query: Complex64, distance: f64 },

    #[error("points are collinear; no circle fits")]
    CollinearPoints,

    #[error("state has no zero-momentum component")]
    ZeroMomentumComponent,

    #[error("conditional values are not proportional to the wavefunction (max deviation {0:e})")]
    ProportionalityViolated(f64),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("postselection success probability {0:e} is too small")]
    PostSelectionFailed(f64),

    #[error("eigendecomposition failed to converge")]
    Eigendecomposition,
}

pub type Result<T> = std::result::Result<T, Error>;
