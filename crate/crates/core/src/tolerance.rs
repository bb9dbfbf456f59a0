//! Numerical policy.
//!
//! Every threshold the library compares against lives here so a run can
//! record (and override) the whole policy in one place.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Allowed deviation of Σ|amplitude|² or a trace from 1.
    pub norm: f64,
    /// Allowed deviation from Hermitian symmetry.
    pub hermitian: f64,
    /// Most negative eigenvalue accepted as positive semidefinite.
    pub psd: f64,
    /// Allowed deviation of a Gram matrix from the identity.
    pub orthonormal: f64,
    /// Magnitude below which a state counts as the zero vector.
    pub zero_vector: f64,
    /// Smallest admissible |<b|a>| denominator.
    pub overlap: f64,
    /// Imaginary residue of a marginal that signals corrupted input.
    pub imaginary_residue: f64,
    /// Agreement required between a supplied and a computed Bayes evidence.
    pub evidence: f64,
    /// Consecutive curve samples closer than this are merged.
    pub duplicate_point: f64,
    /// Distance at which two segments count as touching.
    pub intersection: f64,
    /// Endpoint gap below which a curve counts as closed.
    pub closure: f64,
    /// Distance within which a query snaps onto a curve.
    pub snap: f64,
    /// Smallest postselection success probability accepted by the meter model.
    pub post_selection: f64,
    /// Allowed deviation in the wavefunction proportionality check.
    pub proportionality: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        norm: 1e-10,
        hermitian: 1e-10,
        psd: 1e-9,
        orthonormal: 1e-10,
        zero_vector: 1e-15,
        overlap: 1e-12,
        imaginary_residue: 1e-8,
        evidence: 1e-12,
        duplicate_point: 1e-14,
        intersection: 1e-12,
        closure: 1e-9,
        snap: 1e-9,
        post_selection: 1e-15,
        proportionality: 1e-10,
    };

    /// Names of any non-positive entries.
    pub fn non_positive(&self) -> Vec<&'static str> {
        let fields = [
            ("norm", self.norm),
            ("hermitian", self.hermitian),
            ("psd", self.psd),
            ("orthonormal", self.orthonormal),
            ("zero_vector", self.zero_vector),
            ("overlap", self.overlap),
            ("imaginary_residue", self.imaginary_residue),
            ("evidence", self.evidence),
            ("duplicate_point", self.duplicate_point),
            ("intersection", self.intersection),
            ("closure", self.closure),
            ("snap", self.snap),
            ("post_selection", self.post_selection),
            ("proportionality", self.proportionality),
        ];
        fields
            .iter()
            .filter(|(_, v)| !(*v > 0.0))
            .map(|(name, _)| *name)
            .collect()
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
