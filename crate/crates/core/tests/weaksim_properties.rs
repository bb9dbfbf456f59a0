use kirkwood::hilbert::{Observable, StateVector};
use kirkwood::weaksim::{
    calibration_slope, couple_and_postselect, estimate_weak_value, exact_run, sample_meter, WeakMeasurementScenario,
};
use kirkwood::Tolerances;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: Tolerances = Tolerances::DEFAULT;

fn random_qubit_scenario(rng: &mut ChaCha8Rng) -> WeakMeasurementScenario {
    loop {
        let pre = StateVector::random(2, rng).unwrap();
        let post = StateVector::random(2, rng).unwrap();
        if pre.overlap(&post).unwrap().norm() >= 0.2 {
            let obs = Observable::random(2, rng).unwrap();
            return WeakMeasurementScenario::new(pre, post, obs, 0.01, &TOL).unwrap();
        }
    }
}

fn error_at(s: &WeakMeasurementScenario, g: f64) -> f64 {
    let s = s.with_coupling(g);
    let meter = couple_and_postselect(&s, &TOL).unwrap();
    (estimate_weak_value(&meter, g).unwrap() - s.weak_value(&TOL).unwrap()).norm()
}

#[test]
fn calibration_slope_is_sin_two_g() {
    for k in 1..=500 {
        let g = k as f64 * 1e-3;
        assert!((calibration_slope(g).unwrap() - (2.0 * g).sin()).abs() <= 1e-14);
    }
}

#[test]
fn estimates_are_consistent_to_first_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    for _ in 0..50 {
        let s = random_qubit_scenario(&mut rng);
        let c = (error_at(&s, 0.02) / 0.02).max(error_at(&s, 0.01) / 0.01);
        assert!(error_at(&s, 0.005) <= c * 0.005 + 1e-12);
    }
}

#[test]
fn sampled_frequencies_concentrate() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..10 {
        let s = random_qubit_scenario(&mut rng).with_coupling(0.1);
        let meter = couple_and_postselect(&s, &TOL).unwrap();
        for shots in [10_000u64, 1_000_000] {
            let counts = sample_meter(&meter, shots, &mut rng);
            for (n, plus, expectation) in [
                (counts.z_shots, counts.z_plus, meter.sigma_z()),
                (counts.y_shots, counts.y_plus, meter.sigma_y()),
            ] {
                let p = (1.0 + expectation) / 2.0;
                let sigma = (p * (1.0 - p) / n as f64).sqrt();
                let tv = (plus as f64 / n as f64 - p).abs();
                assert!(tv <= 5.0 * sigma + 1e-12, "shots {shots}: tv {tv} > 5σ {}", 5.0 * sigma);
            }
        }
    }
}

proptest! {
    #[test]
    fn success_probability_is_a_probability(seed in any::<u64>(), g in 0.0f64..1.5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_qubit_scenario(&mut rng).with_coupling(g);
        let p = couple_and_postselect(&s, &TOL).unwrap().success_probability;
        prop_assert!(p > 0.0 && p <= 1.0 + 1e-12);
    }

    #[test]
    fn exact_mode_ignores_the_seed(seed in any::<u64>(), a in any::<u64>(), b in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_qubit_scenario(&mut rng).with_coupling(rng.gen_range(0.001..0.5));
        let x = exact_run(&s, a, &TOL).unwrap();
        let y = exact_run(&s, b, &TOL).unwrap();
        prop_assert_eq!(x.estimate, y.estimate);
        prop_assert_eq!(x.stderr, 0.0);
    }
}
