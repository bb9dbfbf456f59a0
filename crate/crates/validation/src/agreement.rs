//! The library's intersection checker and audit against the oracle.

use crate::{oracle, random_polyline};
use kirkwood::coxaudit::{audit, self_intersections, trace_curve, PlausibilityScale, Verdict};
use kirkwood::{Complex64, Tolerances};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: Tolerances = Tolerances::DEFAULT;

proptest! {
    #[test]
    fn admissible_means_open_and_simple(seed in any::<u64>(), n in 2usize..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pts = random_polyline(&mut rng, n);
        if rng.gen_bool(0.3) {
            pts.push(pts[0]);
        }
        let param: Vec<f64> = (0..pts.len()).map(|k| k as f64).collect();
        let c = trace_curve(&pts, &param, "random", &TOL).unwrap();
        let report = audit(std::slice::from_ref(&c), PlausibilityScale::default(), &TOL);
        let tuples: Vec<_> = c.points().iter().map(|z| (z.re, z.im)).collect();
        let crossings = oracle::brute_force(&tuples, 1e-12);
        let gap = (c.points()[0] - c.points()[c.points().len() - 1]).norm();
        if report.verdict == Verdict::Admissible {
            prop_assert!(crossings.is_empty());
            prop_assert!(gap >= 1e-9);
        }
        if gap < 1e-9 {
            prop_assert_eq!(report.verdict, Verdict::ClosedCurve);
        } else if !crossings.is_empty() {
            prop_assert_eq!(report.verdict, Verdict::SelfIntersecting);
        }
    }
}

#[test]
fn checker_matches_oracle_on_small_polylines() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..500 {
        let n = rng.gen_range(1..=12);
        let pts = random_polyline(&mut rng, n);
        let param: Vec<f64> = (0..pts.len()).map(|k| k as f64).collect();
        let c = trace_curve(&pts, &param, "r", &TOL).unwrap();
        let fast = self_intersections(&c, 1e-12);
        let tuples: Vec<_> = c.points().iter().map(|z| (z.re, z.im)).collect();
        let slow = oracle::brute_force(&tuples, 1e-12);
        assert_eq!(fast.len(), slow.len());
        for (f, (p, i, j)) in fast.iter().zip(&slow) {
            assert_eq!(f.segments, (*i, *j));
            assert!((f.point - Complex64::new(p.0, p.1)).norm() <= 1e-9);
        }
    }
}

#[test]
fn oracle_agrees_on_the_figure_eight() {
    let pts = [(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0)];
    let x = oracle::brute_force(&pts, 1e-12);
    assert_eq!(x.len(), 1);
    assert!((x[0].0 .0 - 0.5).abs() < 1e-15 && (x[0].0 .1 - 0.5).abs() < 1e-15);
}
