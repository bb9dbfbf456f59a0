//! Builders for the worked examples: the orbital-angular-momentum conditional
//! density that traces a circle, the wavefunction read as a conditional
//! Kirkwood distribution, and a Kirkwood entry paired with its conjugate.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::coxaudit::SampledDistribution;
use crate::error::{Error, Result};
use crate::hilbert::{DensityMatrix, OrthonormalBasis, StateVector};
use crate::quasiprob::{conditional_kirkwood, kirkwood};
use crate::tolerance::Tolerances;

// ---------------------------------------------------------------------------
// Orbital angular momentum
// ---------------------------------------------------------------------------

/// Preselection |ψ_m⟩, postselection √(1−δ²)|ψ_n⟩ + δ|ψ_m⟩ on a `dim`-point
/// angle grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OamScenario {
    pub dim: usize,
    pub m: i64,
    pub n: i64,
    pub delta: f64,
}

impl OamScenario {
    pub fn new(dim: usize, m: i64, n: i64, delta: f64) -> Result<Self> {
        let s = OamScenario { dim, m, n, delta };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 4 {
            return Err(Error::InvalidScenario(format!("grid size {} is below 4", self.dim)));
        }
        crate::hilbert::check_dim(self.dim)?;
        if !(self.delta > 0.0 && self.delta <= 1.0) {
            return Err(Error::InvalidScenario(format!(
                "delta = {} is outside (0, 1]",
                self.delta
            )));
        }
        if self.grid_index(self.m) == self.grid_index(self.n) {
            return Err(Error::InvalidScenario(format!(
                "m = {} and n = {} coincide on a {}-point grid",
                self.m, self.n, self.dim
            )));
        }
        Ok(())
    }

    fn grid_index(&self, q: i64) -> usize {
        q.rem_euclid(self.dim as i64) as usize
    }

    pub fn phi_grid(&self) -> Vec<f64> {
        (0..self.dim).map(|k| 2.0 * PI * k as f64 / self.dim as f64).collect()
    }

    /// (|ψ_m⟩, |b⟩).
    pub fn states(&self) -> Result<(StateVector, StateVector)> {
        self.validate()?;
        let fourier = OrthonormalBasis::fourier(self.dim)?;
        let pre = fourier.vector(self.grid_index(self.m)).clone();
        let psi_n = fourier.vector(self.grid_index(self.n)).amplitudes();
        let keep = (1.0 - self.delta * self.delta).sqrt();
        let post = psi_n.scale(keep) + pre.amplitudes().scale(self.delta);
        Ok((pre, StateVector::new(post.iter().copied().collect())?))
    }
}

/// Closed form of the conditional density at angle `phi`.
pub fn oam_density(delta: f64, m_minus_n: i64, phi: f64) -> Complex64 {
    let (center, radius) = oam_circle(delta);
    Complex64::new(center, 0.0) + Complex64::from_polar(radius, phi * m_minus_n as f64)
}

/// Center and radius of the circle traced by the conditional density.
pub fn oam_circle(delta: f64) -> (f64, f64) {
    let center = 1.0 / (2.0 * PI);
    (center, (1.0 - delta * delta).sqrt() / (2.0 * PI * delta))
}

/// Conditional Kirkwood values of the angle basis between |ψ_m⟩ and |b⟩,
/// scaled by `dim/2π` to a density over φ.
pub fn oam_conditional(s: &OamScenario, tol: &Tolerances) -> Result<SampledDistribution> {
    let (pre, post) = s.states()?;
    let grid = OrthonormalBasis::computational(s.dim)?;
    let ck = conditional_kirkwood(&grid, &pre, &post, tol)?;
    let density = s.dim as f64 / (2.0 * PI);
    SampledDistribution::new(
        format!("oam(m={},n={},delta={})", s.m, s.n, s.delta),
        s.phi_grid(),
        ck.values.iter().map(|v| v * density).collect(),
    )
}

/// Appends the first sample again one `period` later, so the samples cover a
/// full closed period.
pub fn close_period(samples: &SampledDistribution, period: f64) -> SampledDistribution {
    let mut out = samples.clone();
    if let (Some(&v), Some(&t)) = (samples.values.first(), samples.param.first()) {
        out.values.push(v);
        out.param.push(t + period);
    }
    out
}

// ---------------------------------------------------------------------------
// Circle fit
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleFit {
    pub center: Complex64,
    pub radius: f64,
    pub rms_residual: f64,
}

/// Algebraic least-squares circle fit: minimizes Σ(|z − c|² − r²)² in the
/// linearized form x² + y² + Dx + Ey + F = 0.
pub fn circle_fit(points: &[Complex64]) -> Result<CircleFit> {
    if points.len() < 3 {
        return Err(Error::CollinearPoints);
    }
    let n = points.len() as f64;
    let centroid: Complex64 = points.iter().sum::<Complex64>() / n;
    let shifted: Vec<Complex64> = points.iter().map(|z| z - centroid).collect();
    let scale = shifted.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if !(scale > 0.0) {
        return Err(Error::CollinearPoints);
    }
    let unit: Vec<Complex64> = shifted.iter().map(|z| z / scale).collect();

    let design = DMatrix::from_fn(unit.len(), 3, |i, j| match j {
        0 => unit[i].re,
        1 => unit[i].im,
        _ => 1.0,
    });
    let rhs = DVector::from_fn(unit.len(), |i, _| -unit[i].norm_sqr());
    let svd = design.svd(true, true);
    let (smax, smin) = (svd.singular_values.max(), svd.singular_values.min());
    if smin <= 1e-10 * smax {
        return Err(Error::CollinearPoints);
    }
    let coef = svd.solve(&rhs, 0.0).map_err(|_| Error::CollinearPoints)?;
    let (d, e, f) = (coef[0], coef[1], coef[2]);
    let center_unit = Complex64::new(-d / 2.0, -e / 2.0);
    let r2 = center_unit.norm_sqr() - f;
    if !(r2 > 0.0) {
        return Err(Error::CollinearPoints);
    }
    let center = centroid + center_unit * scale;
    let radius = r2.sqrt() * scale;
    let rms = (points
        .iter()
        .map(|z| ((z - center).norm() - radius).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(CircleFit {
        center,
        radius,
        rms_residual: rms,
    })
}

// ---------------------------------------------------------------------------
// Wavefunction as a conditional Kirkwood distribution
// ---------------------------------------------------------------------------

/// Position-basis conditional Kirkwood values given preselection ψ and
/// postselection on zero momentum, with the proportionality constant `k_norm`.
#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionScenario {
    pub psi: StateVector,
    pub k_norm: Complex64,
    pub values: SampledDistribution,
}

impl WavefunctionScenario {
    pub fn dim(&self) -> usize {
        self.psi.dim()
    }
}

pub fn wavefunction_conditional(psi: &StateVector, tol: &Tolerances) -> Result<WavefunctionScenario> {
    let dim = psi.dim();
    let momentum = OrthonormalBasis::fourier(dim)?;
    let p0 = momentum.vector(0);
    if p0.overlap(psi)?.norm() < tol.overlap {
        return Err(Error::ZeroMomentumComponent);
    }
    let position = OrthonormalBasis::computational(dim)?;
    let ck = conditional_kirkwood(&position, psi, p0, tol)?;
    // Least-squares k: minimizes Σ|v_x − k ψ_x|² for unit-norm ψ.
    let k_norm: Complex64 = psi.amplitudes().iter().zip(&ck.values).map(|(p, v)| p.conj() * v).sum();
    let deviation = psi
        .amplitudes()
        .iter()
        .zip(&ck.values)
        .map(|(p, v)| (v - k_norm * p).norm())
        .fold(0.0, f64::max);
    if deviation > tol.proportionality {
        return Err(Error::ProportionalityViolated(deviation));
    }
    Ok(WavefunctionScenario {
        psi: psi.clone(),
        k_norm,
        values: SampledDistribution::new("wavefunction", (0..dim).map(|x| x as f64).collect(), ck.values)?,
    })
}

// ---------------------------------------------------------------------------
// Kirkwood entry and its conjugate along a one-parameter family
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyKind {
    /// Multiplies the last component of every B vector by e^{iθ}.
    PostselectionPhase,
    /// Rotates B by θ in the plane of the first and last components.
    RealRotation,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathFamily {
    pub kind: FamilyKind,
    pub entry: (usize, usize),
    pub theta_start: f64,
    pub theta_end: f64,
    pub samples: usize,
}

impl Default for PathFamily {
    fn default() -> Self {
        PathFamily {
            kind: FamilyKind::PostselectionPhase,
            entry: (0, 0),
            theta_start: 0.0,
            theta_end: PI,
            samples: 33,
        }
    }
}

impl PathFamily {
    pub fn thetas(&self) -> Vec<f64> {
        let steps = (self.samples - 1) as f64;
        (0..self.samples)
            .map(|k| self.theta_start + (self.theta_end - self.theta_start) * k as f64 / steps)
            .collect()
    }

    fn unitary(&self, dim: usize, theta: f64) -> DMatrix<Complex64> {
        let mut u = DMatrix::<Complex64>::identity(dim, dim);
        let last = dim - 1;
        match self.kind {
            FamilyKind::PostselectionPhase => u[(last, last)] = Complex64::from_polar(1.0, theta),
            FamilyKind::RealRotation => {
                let (s, c) = theta.sin_cos();
                u[(0, 0)] = Complex64::new(c, 0.0);
                u[(0, last)] = Complex64::new(-s, 0.0);
                u[(last, 0)] = Complex64::new(s, 0.0);
                u[(last, last)] = Complex64::new(c, 0.0);
            }
        }
        u
    }
}

/// K(a₀,b₀)(θ) and K(b₀,a₀)(θ) = conj K(a₀,b₀)(θ) along `family`.
pub fn conjugate_pair(
    rho: &DensityMatrix,
    basis_a: &OrthonormalBasis,
    basis_b: &OrthonormalBasis,
    family: &PathFamily,
) -> Result<(SampledDistribution, SampledDistribution)> {
    let dim = rho.dim();
    for d in [basis_a.dim(), basis_b.dim()] {
        if d != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: d,
            });
        }
    }
    if dim < 2 {
        return Err(Error::InvalidScenario("a path family needs dim ≥ 2".into()));
    }
    if family.samples < 2 || !(family.theta_end > family.theta_start) {
        return Err(Error::InvalidScenario(
            "family needs ≥ 2 samples over an increasing range".into(),
        ));
    }
    let (a0, b0) = family.entry;
    if a0 >= dim || b0 >= dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: a0.max(b0) + 1,
        });
    }
    let thetas = family.thetas();
    let mut forward = Vec::with_capacity(thetas.len());
    let mut backward = Vec::with_capacity(thetas.len());
    for &theta in &thetas {
        let b_theta = basis_b.transformed(&family.unitary(dim, theta), basis_b.label())?;
        forward.push(kirkwood(rho, basis_a, &b_theta)?.get(a0, b0));
        backward.push(kirkwood(rho, &b_theta, basis_a)?.get(b0, a0));
    }
    Ok((
        SampledDistribution::new(format!("K({a0},{b0})"), thetas.clone(), forward)?,
        SampledDistribution::new(format!("K({b0},{a0})"), thetas, backward)?,
    ))
}
