//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each exported function returns a JSON string for the page to draw. The
//! `*_json` functions hold the logic and are plain Rust so they can be tested
//! natively.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use kirkwood::coxaudit::{audit, trace_curve, Intersection, PlausibilityScale, Verdict};
use kirkwood::hilbert::{pure_density, Observable, OrthonormalBasis, StateVector};
use kirkwood::scenarios::{
    circle_fit, close_period, conjugate_pair, oam_circle, oam_conditional, CircleFit, FamilyKind, OamScenario,
    PathFamily,
};
use kirkwood::weaksim::{convergence_sweep, SweepMode, WeakMeasurementScenario};
use kirkwood::{Complex64, Tolerances};
use serde::Serialize;
use wasm_bindgen::prelude::*;

const TOL: Tolerances = Tolerances::DEFAULT;

fn text<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(text)
}

#[derive(Serialize)]
struct CirclePlot {
    points: Vec<Complex64>,
    fit: CircleFit,
    expected_center: f64,
    expected_radius: f64,
    verdict: Verdict,
}

pub fn oam_curve_json(dim: usize, m: i32, n: i32, delta: f64) -> Result<String, String> {
    let scenario = OamScenario::new(dim, m.into(), n.into(), delta).map_err(text)?;
    let samples = oam_conditional(&scenario, &TOL).map_err(text)?;
    let fit = circle_fit(&samples.values).map_err(text)?;
    let period = close_period(&samples, 2.0 * PI);
    let curve = trace_curve(&period.values, &period.param, &period.label, &TOL).map_err(text)?;
    let verdict = audit(&[curve], PlausibilityScale::default(), &TOL).verdict;
    let (expected_center, expected_radius) = oam_circle(delta);
    to_json(&CirclePlot {
        points: period.values,
        fit,
        expected_center,
        expected_radius,
        verdict,
    })
}

#[derive(Serialize)]
struct PairPlot {
    theta: Vec<f64>,
    k: Vec<Complex64>,
    k_conj: Vec<Complex64>,
    verdict: Verdict,
    intersections: Vec<Intersection>,
    notes: String,
}

/// K(0,0) of |+⟩⟨+| between the computational and Hadamard bases while the
/// Hadamard basis is deformed by θ, together with its conjugate.
pub fn conjugate_pair_json(theta_end: f64, samples: usize, rotation: bool) -> Result<String, String> {
    let plus = StateVector::new(vec![Complex64::new(1.0, 0.0); 2]).map_err(text)?;
    let family = PathFamily {
        kind: if rotation {
            FamilyKind::RealRotation
        } else {
            FamilyKind::PostselectionPhase
        },
        theta_end,
        samples,
        ..PathFamily::default()
    };
    let a = OrthonormalBasis::computational(2).map_err(text)?;
    let b = OrthonormalBasis::hadamard(2).map_err(text)?;
    let (k, k_conj) = conjugate_pair(&pure_density(&plus), &a, &b, &family).map_err(text)?;
    let curves = [k.trace().map_err(text)?, k_conj.trace().map_err(text)?];
    let report = audit(&curves, PlausibilityScale::default(), &TOL);
    to_json(&PairPlot {
        theta: k.param,
        k: k.values,
        k_conj: k_conj.values,
        verdict: report.verdict,
        intersections: report.intersections,
        notes: report.notes,
    })
}

#[derive(Serialize)]
struct SweepPoint {
    g: f64,
    estimate: Complex64,
    error: f64,
    stderr: f64,
}

#[derive(Serialize)]
struct SweepPlot {
    weak_value: Complex64,
    rows: Vec<SweepPoint>,
}

/// σ_z between |+⟩ and (|0⟩ + e^{iη}|1⟩)/√2, whose weak value is i·tan(η/2).
/// Couplings halve `steps` times from `g_max`; `shots = 0` uses exact
/// expectations.
pub fn weak_value_sweep_json(eta: f64, g_max: f64, steps: usize, shots: u32, seed: u32) -> Result<String, String> {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let pre = StateVector::new(vec![h, h]).map_err(text)?;
    let post = StateVector::new(vec![h, Complex64::from_polar(FRAC_1_SQRT_2, eta)]).map_err(text)?;
    let scenario = WeakMeasurementScenario::new(pre, post, Observable::pauli_z(), g_max, &TOL).map_err(text)?;
    let gs: Vec<f64> = (0..steps.max(1)).map(|k| g_max / 2f64.powi(k as i32)).collect();
    let mode = match shots {
        0 => SweepMode::Exact,
        shots => SweepMode::MonteCarlo {
            shots: shots.into(),
            seed: seed.into(),
        },
    };
    let rows = convergence_sweep(&scenario, &gs, mode, &TOL).map_err(text)?;
    to_json(&SweepPlot {
        weak_value: scenario.weak_value(&TOL).map_err(text)?,
        rows: rows
            .into_iter()
            .map(|r| SweepPoint {
                g: r.g,
                estimate: r.estimate,
                error: r.error,
                stderr: r.record.stderr,
            })
            .collect(),
    })
}

#[wasm_bindgen]
pub fn oam_curve(dim: usize, m: i32, n: i32, delta: f64) -> Result<String, JsError> {
    oam_curve_json(dim, m, n, delta).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn conjugate_pair_audit(theta_end: f64, samples: usize, rotation: bool) -> Result<String, JsError> {
    conjugate_pair_json(theta_end, samples, rotation).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn weak_value_sweep(eta: f64, g_max: f64, steps: usize, shots: u32, seed: u32) -> Result<String, JsError> {
    weak_value_sweep_json(eta, g_max, steps, shots, seed).map_err(|e| JsError::new(&e))
}
