//! Idealized von Neumann weak measurement with a two-level meter.
//!
//! The meter starts in the +1 eigenstate of σ_x and couples to the system
//! observable through U = exp(−i·g·A⊗σ_y). After postselecting the system,
//! the meter's σ_z and σ_y expectations shift in proportion to Re A_w and
//! Im A_w. The readout is calibrated on the identity observable, so the
//! estimator returns exactly 1 there for every coupling.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{pauli, Observable, StateVector};
use crate::quasiprob::weak_value;
use crate::tolerance::Tolerances;

/// Identifier of the random stream used for Monte Carlo runs.
pub const RNG_ID: &str = "rand_chacha-0.3/ChaCha8Rng.seed_from_u64+rand_distr-0.4/Binomial";

#[derive(Debug, Clone, PartialEq)]
pub struct WeakMeasurementScenario {
    pub pre: StateVector,
    pub post: StateVector,
    pub observable: Observable,
    pub coupling: f64,
}

impl WeakMeasurementScenario {
    pub fn new(
        pre: StateVector,
        post: StateVector,
        observable: Observable,
        coupling: f64,
        tol: &Tolerances,
    ) -> Result<Self> {
        let s = WeakMeasurementScenario {
            pre,
            post,
            observable,
            coupling,
        };
        s.validate(tol)?;
        Ok(s)
    }

    pub fn validate(&self, tol: &Tolerances) -> Result<()> {
        if !(self.coupling >= 0.0 && self.coupling.is_finite()) {
            return Err(Error::InvalidScenario(format!(
                "coupling g = {} must be finite and ≥ 0",
                self.coupling
            )));
        }
        // Checks dimensions and the postselection overlap.
        weak_value(&self.observable, &self.pre, &self.post, tol).map(|_| ())
    }

    pub fn with_coupling(&self, coupling: f64) -> Self {
        WeakMeasurementScenario {
            coupling,
            ..self.clone()
        }
    }

    /// Analytic A_w = ⟨b|A|a⟩/⟨b|a⟩.
    pub fn weak_value(&self, tol: &Tolerances) -> Result<Complex64> {
        weak_value(&self.observable, &self.pre, &self.post, tol)
    }
}

/// Postselected meter state.
#[derive(Debug, Clone, PartialEq)]
pub struct MeterState {
    pub density: DMatrix<Complex64>,
    pub success_probability: f64,
}

impl MeterState {
    fn expectation(&self, op: &DMatrix<Complex64>) -> f64 {
        (&self.density * op).trace().re
    }

    pub fn sigma_x(&self) -> f64 {
        self.expectation(&pauli::x())
    }

    pub fn sigma_y(&self) -> f64 {
        self.expectation(&pauli::y())
    }

    pub fn sigma_z(&self) -> f64 {
        self.expectation(&pauli::z())
    }
}

/// exp(−i·g·A⊗σ_y) on system ⊗ meter, system index major.
pub fn joint_unitary(observable: &Observable, g: f64) -> Result<DMatrix<Complex64>> {
    let (eigenvalues, vectors) = observable.eigen()?;
    let d = observable.dim();
    let sy = pauli::y();
    let id = DMatrix::<Complex64>::identity(2, 2);
    let mut u = DMatrix::<Complex64>::zeros(2 * d, 2 * d);
    for (k, lambda) in eigenvalues.iter().enumerate() {
        // exp(−iθσ_y) = cos θ·I − i sin θ·σ_y
        let (s, c) = (g * lambda).sin_cos();
        let meter = id.scale(c) - sy.map(|z| z * Complex64::new(0.0, s));
        let v = vectors.column(k);
        let projector = v * v.adjoint();
        u += projector.kronecker(&meter);
    }
    Ok(u)
}

pub fn couple_and_postselect(s: &WeakMeasurementScenario, tol: &Tolerances) -> Result<MeterState> {
    s.validate(tol)?;
    let d = s.observable.dim();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let meter0 = DVector::from_vec(vec![Complex64::new(r, 0.0), Complex64::new(r, 0.0)]);
    let initial = s.pre.amplitudes().kronecker(&meter0);
    let evolved = joint_unitary(&s.observable, s.coupling)? * initial;
    // (⟨b| ⊗ I) applied to the joint state.
    let mut meter = DVector::<Complex64>::zeros(2);
    for sys in 0..d {
        let b = s.post.amplitude(sys).conj();
        meter[0] += b * evolved[2 * sys];
        meter[1] += b * evolved[2 * sys + 1];
    }
    let success = meter.norm_squared();
    if success < tol.post_selection {
        return Err(Error::PostSelectionFailed(success));
    }
    Ok(MeterState {
        density: (&meter * meter.adjoint()).unscale(success),
        success_probability: success,
    })
}

/// −⟨σ_z⟩ produced by the identity observable at coupling `g`.
pub fn calibration_slope(g: f64) -> Result<f64> {
    let one = StateVector::basis(1, 0)?;
    let s = WeakMeasurementScenario {
        pre: one.clone(),
        post: one,
        observable: Observable::identity(1)?,
        coupling: g,
    };
    Ok(-couple_and_postselect(&s, &Tolerances::DEFAULT)?.sigma_z())
}

fn readout(sigma_z: f64, sigma_y: f64, g: f64) -> Result<(Complex64, f64)> {
    if !(g > 0.0) {
        return Err(Error::InvalidScenario(format!("readout needs g > 0, got {g}")));
    }
    let slope = calibration_slope(g)?;
    if !(slope > 0.0) {
        return Err(Error::InvalidScenario(format!(
            "coupling g = {g} leaves no readout slope"
        )));
    }
    Ok((Complex64::new(-sigma_z, sigma_y) / slope, slope))
}

/// Weak-value estimate from the two transverse meter expectations.
pub fn estimate_weak_value(meter: &MeterState, g: f64) -> Result<Complex64> {
    readout(meter.sigma_z(), meter.sigma_y(), g).map(|(z, _)| z)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeakMeasurementRecord {
    pub estimate: Complex64,
    pub exact: Complex64,
    pub shots: u64,
    pub stderr: f64,
    pub g: f64,
    pub seed: u64,
    pub rng_id: String,
}

/// Outcome counts of the two meter readouts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeterCounts {
    pub z_shots: u64,
    pub z_plus: u64,
    pub y_shots: u64,
    pub y_plus: u64,
}

/// Samples `shots` meter readouts split evenly between the σ_z and σ_y
/// bases (σ_z takes the odd shot).
pub fn sample_meter(meter: &MeterState, shots: u64, rng: &mut ChaCha8Rng) -> MeterCounts {
    let z_shots = shots.div_ceil(2);
    let y_shots = shots / 2;
    let draw = |n: u64, expectation: f64, rng: &mut ChaCha8Rng| {
        if n == 0 {
            return 0;
        }
        let p = ((1.0 + expectation) / 2.0).clamp(0.0, 1.0);
        Binomial::new(n, p).expect("p is clamped to [0, 1]").sample(rng)
    };
    let z_plus = draw(z_shots, meter.sigma_z(), rng);
    let y_plus = draw(y_shots, meter.sigma_y(), rng);
    MeterCounts {
        z_shots,
        z_plus,
        y_shots,
        y_plus,
    }
}

/// Mean and variance of a ±1 readout from counts; no shots gives (0, 1).
fn pm_statistics(plus: u64, shots: u64) -> (f64, f64) {
    if shots == 0 {
        return (0.0, 1.0);
    }
    let mean = 2.0 * plus as f64 / shots as f64 - 1.0;
    (mean, (1.0 - mean * mean) / shots as f64)
}

/// Exact-expectation mode: no sampling, zero standard error.
pub fn exact_run(s: &WeakMeasurementScenario, seed: u64, tol: &Tolerances) -> Result<WeakMeasurementRecord> {
    let meter = couple_and_postselect(s, tol)?;
    Ok(WeakMeasurementRecord {
        estimate: estimate_weak_value(&meter, s.coupling)?,
        exact: s.weak_value(tol)?,
        shots: 0,
        stderr: 0.0,
        g: s.coupling,
        seed,
        rng_id: RNG_ID.into(),
    })
}

pub fn monte_carlo_run(
    s: &WeakMeasurementScenario,
    shots: u64,
    seed: u64,
    tol: &Tolerances,
) -> Result<WeakMeasurementRecord> {
    if shots == 0 {
        return Err(Error::InvalidScenario("Monte Carlo needs at least one shot".into()));
    }
    let meter = couple_and_postselect(s, tol)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let counts = sample_meter(&meter, shots, &mut rng);
    let (z, var_z) = pm_statistics(counts.z_plus, counts.z_shots);
    let (y, var_y) = pm_statistics(counts.y_plus, counts.y_shots);
    let (estimate, slope) = readout(z, y, s.coupling)?;
    Ok(WeakMeasurementRecord {
        estimate,
        exact: s.weak_value(tol)?,
        shots,
        stderr: (var_z + var_y).sqrt() / slope,
        g: s.coupling,
        seed,
        rng_id: RNG_ID.into(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepMode {
    Exact,
    MonteCarlo { shots: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub g: f64,
    pub estimate: Complex64,
    pub error: f64,
    pub record: WeakMeasurementRecord,
}

/// One record per coupling; `gs` must be positive and strictly decreasing.
/// Monte Carlo rows use seed `seed + row index`.
pub fn convergence_sweep(
    template: &WeakMeasurementScenario,
    gs: &[f64],
    mode: SweepMode,
    tol: &Tolerances,
) -> Result<Vec<SweepRow>> {
    if gs.is_empty() || gs.iter().any(|g| !(*g > 0.0)) || gs.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::InvalidScenario(
            "coupling sweep must be positive and strictly decreasing".into(),
        ));
    }
    gs.iter()
        .enumerate()
        .map(|(row, &g)| {
            let s = template.with_coupling(g);
            let record = match mode {
                SweepMode::Exact => exact_run(&s, 0, tol)?,
                SweepMode::MonteCarlo { shots, seed } => {
                    monte_carlo_run(&s, shots, seed.wrapping_add(row as u64), tol)?
                }
            };
            Ok(SweepRow {
                g,
                estimate: record.estimate,
                error: (record.estimate - record.exact).norm(),
                record,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{make_state, max_abs};
    use approx::assert_abs_diff_eq;

    const TOL: Tolerances = Tolerances::DEFAULT;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn aw_i(g: f64) -> WeakMeasurementScenario {
        WeakMeasurementScenario::new(
            make_state(vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap(),
            make_state(vec![c(1.0, 0.0), c(0.0, 1.0)]).unwrap(),
            Observable::pauli_z(),
            g,
            &TOL,
        )
        .unwrap()
    }

    fn generic(g: f64) -> WeakMeasurementScenario {
        // a = (2, 1)/√5, b = (1, 1 + i)/√3 gives A_w = 0.2 + 0.4i.
        WeakMeasurementScenario::new(
            make_state(vec![c(2.0, 0.0), c(1.0, 0.0)]).unwrap(),
            make_state(vec![c(1.0, 0.0), c(1.0, 1.0)]).unwrap(),
            Observable::pauli_z(),
            g,
            &TOL,
        )
        .unwrap()
    }

    #[test]
    fn joint_unitary_is_unitary() {
        let u = joint_unitary(&Observable::pauli_x(), 0.3).unwrap();
        let err = max_abs(&(u.adjoint() * &u - DMatrix::<Complex64>::identity(4, 4)));
        assert!(err < 1e-14);
    }

    #[test]
    fn identity_and_zero_coupling_leave_postselection_alone() {
        let s = aw_i(0.2).with_coupling(0.2);
        let id = WeakMeasurementScenario {
            observable: Observable::identity(2).unwrap(),
            ..s.clone()
        };
        let overlap2 = s.post.overlap(&s.pre).unwrap().norm_sqr();
        let m = couple_and_postselect(&id, &TOL).unwrap();
        assert_abs_diff_eq!(m.success_probability, overlap2, epsilon = 1e-15);

        let other = WeakMeasurementScenario {
            post: make_state(vec![c(1.0, 0.0), c(0.3, 0.0)]).unwrap(),
            ..id.clone()
        };
        let m2 = couple_and_postselect(&other, &TOL).unwrap();
        assert!(max_abs(&(m.density.clone() - m2.density)) < 1e-15);

        let free = couple_and_postselect(&s.with_coupling(0.0), &TOL).unwrap();
        assert_abs_diff_eq!(free.success_probability, overlap2, epsilon = 1e-15);
        assert_abs_diff_eq!(free.sigma_x(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn meter_shifts_linearly_with_coupling() {
        // For A_w = i: ⟨σ_y⟩ ≈ 2g·Im A_w and ⟨σ_z⟩ ≈ −2g·Re A_w.
        let g = 0.01;
        let m = couple_and_postselect(&aw_i(g), &TOL).unwrap();
        assert_abs_diff_eq!(m.sigma_y(), 2.0 * g, epsilon = 1e-5);
        assert_abs_diff_eq!(m.sigma_z(), 0.0, epsilon = 1e-15);

        let s = generic(g);
        let aw = s.weak_value(&TOL).unwrap();
        assert_abs_diff_eq!((aw - c(0.2, 0.4)).norm(), 0.0, epsilon = 1e-15);
        let m = couple_and_postselect(&s, &TOL).unwrap();
        assert_abs_diff_eq!(m.sigma_z(), -2.0 * g * aw.re, epsilon = 1e-3 * g);
        assert_abs_diff_eq!(m.sigma_y(), 2.0 * g * aw.im, epsilon = 1e-3 * g);
    }

    #[test]
    fn identity_calibration_is_exact() {
        for g in [1e-4, 0.01, 0.1, 0.25, 0.5] {
            let s = WeakMeasurementScenario {
                observable: Observable::identity(2).unwrap(),
                ..generic(g)
            };
            let est = estimate_weak_value(&couple_and_postselect(&s, &TOL).unwrap(), g).unwrap();
            assert_abs_diff_eq!((est - c(1.0, 0.0)).norm(), 0.0, epsilon = 1e-12);
        }
        assert!(estimate_weak_value(&couple_and_postselect(&generic(0.0), &TOL).unwrap(), 0.0).is_err());
    }

    #[test]
    fn bias_is_even_in_coupling() {
        // The meter model is symmetric under g → −g, so the readout bias is
        // second order: halving g quarters it.
        let s = generic(0.02);
        let aw = s.weak_value(&TOL).unwrap();
        let err = |g: f64| (exact_run(&s.with_coupling(g), 0, &TOL).unwrap().estimate - aw).norm();
        let ratio = err(0.01) / err(0.005);
        assert!((3.8..=4.2).contains(&ratio), "ratio {ratio}");
        assert!(err(0.005) / 0.005 < err(0.01) / 0.01);
    }

    #[test]
    fn monte_carlo_is_deterministic_and_consistent() {
        let s = aw_i(0.01);
        let a = monte_carlo_run(&s, 10_000, 42, &TOL).unwrap();
        let b = monte_carlo_run(&s, 10_000, 42, &TOL).unwrap();
        assert_eq!(a, b);
        let exact = exact_run(&s, 0, &TOL).unwrap();
        assert!((a.estimate - exact.estimate).norm() <= 5.0 * a.stderr);

        let one = monte_carlo_run(&s, 1, 3, &TOL).unwrap();
        assert!(one.estimate.re.is_finite() && one.estimate.im.is_finite());
        assert!(one.stderr >= 1.0);
        assert!(monte_carlo_run(&s, 0, 3, &TOL).is_err());
    }

    #[test]
    fn exact_mode_ignores_seed() {
        let s = generic(0.01);
        assert_eq!(
            exact_run(&s, 1, &TOL).unwrap().estimate,
            exact_run(&s, 2, &TOL).unwrap().estimate
        );
    }

    #[test]
    fn sweep_shapes() {
        let rows = convergence_sweep(&aw_i(0.1), &[0.02], SweepMode::Exact, &TOL).unwrap();
        assert_eq!(rows.len(), 1);

        let id = WeakMeasurementScenario {
            observable: Observable::identity(2).unwrap(),
            ..generic(0.1)
        };
        let rows = convergence_sweep(&id, &[0.02, 0.01, 0.005], SweepMode::Exact, &TOL).unwrap();
        assert!(rows.iter().all(|r| r.error <= 1e-12));

        assert!(convergence_sweep(&id, &[0.01, 0.02], SweepMode::Exact, &TOL).is_err());
        assert!(convergence_sweep(&id, &[0.01, -0.02], SweepMode::Exact, &TOL).is_err());

        let mc = SweepMode::MonteCarlo { shots: 1000, seed: 5 };
        let rows = convergence_sweep(&aw_i(0.1), &[0.02, 0.01], mc, &TOL).unwrap();
        assert_eq!(rows[1].record.seed, 6);
    }

    #[test]
    fn record_json_layout() {
        let rec = monte_carlo_run(&aw_i(0.01), 100, 9, &TOL).unwrap();
        let json = serde_json::to_value(&rec).unwrap();
        for key in ["estimate", "exact", "shots", "stderr", "g", "seed", "rng_id"] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
        assert_eq!(json["exact"][1].as_f64().unwrap(), 1.0);
    }
}
