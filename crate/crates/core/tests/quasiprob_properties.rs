use kirkwood::hilbert::{
    fourier_basis, overlap, pure_density, random_density, Observable, OrthonormalBasis, StateVector,
};
use kirkwood::quasiprob::{
    bayes_update, conditional_kirkwood, kirkwood, marginal_over_a, marginal_over_b, reconstruct_density, weak_value,
    ClassicalDistribution, Evidence,
};
use kirkwood::{Complex64, Tolerances};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: Tolerances = Tolerances::DEFAULT;

#[test]
fn fourier_and_computational_are_mutually_unbiased() {
    for dim in 1..=64 {
        let f = fourier_basis(dim).unwrap();
        let e = OrthonormalBasis::computational(dim).unwrap();
        let expected = (dim as f64).sqrt().recip();
        for x in f.vectors() {
            for y in e.vectors() {
                assert!((overlap(x, y).unwrap().norm() - expected).abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn overlap_is_conjugate_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let dim = rng.gen_range(2..=16);
        let x = StateVector::random(dim, &mut rng).unwrap();
        let y = StateVector::random(dim, &mut rng).unwrap();
        let xy = overlap(&x, &y).unwrap();
        let yx = overlap(&y, &x).unwrap();
        assert!((xy - yx.conj()).norm() <= 1e-15);
    }
}

proptest! {
    #[test]
    fn pure_density_is_rank_one(seed in any::<u64>(), dim in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = pure_density(&StateVector::random(dim, &mut rng).unwrap());
        prop_assert!((rho.trace() - Complex64::new(1.0, 0.0)).norm() <= 1e-10);
        let ev = rho.eigenvalues().unwrap();
        prop_assert!((ev[dim - 1] - 1.0).abs() <= 1e-10);
        for e in &ev[..dim - 1] {
            prop_assert!(e.abs() <= 1e-10);
        }
    }

    #[test]
    fn random_density_is_valid(seed in any::<u64>(), dim in 1usize..10, rank_frac in 0.0f64..1.0) {
        let rank = 1 + ((dim - 1) as f64 * rank_frac) as usize;
        let rho = random_density(dim, rank, seed).unwrap();
        prop_assert!(rho.eigenvalues().unwrap()[0] >= -1e-9);
        prop_assert_eq!(rho, random_density(dim, rank, seed).unwrap());
    }

    #[test]
    fn kirkwood_sum_and_marginals(seed in any::<u64>(), dim in prop::sample::select(vec![2usize, 3, 4, 8, 16])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_density(dim, rng.gen_range(1..=dim), rng.gen()).unwrap();
        let a = OrthonormalBasis::random(dim, &mut rng).unwrap();
        let b = OrthonormalBasis::random(dim, &mut rng).unwrap();
        let k = kirkwood(&rho, &a, &b).unwrap();
        prop_assert!((k.total() - Complex64::new(1.0, 0.0)).norm() <= 1e-10);
        let pa = marginal_over_b(&k, &TOL).unwrap();
        let pb = marginal_over_a(&k, &TOL).unwrap();
        for (i, p) in pa.distribution.probs().iter().enumerate() {
            prop_assert!((p - rho.probability(a.vector(i)).unwrap()).abs() <= 1e-11);
        }
        for (j, p) in pb.distribution.probs().iter().enumerate() {
            prop_assert!((p - rho.probability(b.vector(j)).unwrap()).abs() <= 1e-11);
        }
    }

    #[test]
    fn swapping_bases_conjugates_pure_tables(seed in any::<u64>(), dim in 2usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = pure_density(&StateVector::random(dim, &mut rng).unwrap());
        let a = OrthonormalBasis::random(dim, &mut rng).unwrap();
        let b = OrthonormalBasis::random(dim, &mut rng).unwrap();
        let ab = kirkwood(&rho, &a, &b).unwrap();
        let ba = kirkwood(&rho, &b, &a).unwrap();
        for i in 0..dim {
            for j in 0..dim {
                prop_assert!((ba.get(j, i) - ab.get(i, j).conj()).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn conditional_kirkwood_is_complete(seed in any::<u64>(), dim in 2usize..16) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = OrthonormalBasis::random(dim, &mut rng).unwrap();
        let pre = StateVector::random(dim, &mut rng).unwrap();
        let post = StateVector::random(dim, &mut rng).unwrap();
        let ck = conditional_kirkwood(&m, &pre, &post, &TOL).unwrap();
        prop_assert!((ck.total() - Complex64::new(1.0, 0.0)).norm() <= 1e-10);
    }

    #[test]
    fn reconstruction_round_trips(seed in any::<u64>(), dim in 1usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_density(dim, rng.gen_range(1..=dim), rng.gen()).unwrap();
        let a = OrthonormalBasis::random(dim, &mut rng).unwrap();
        let b = OrthonormalBasis::random(dim, &mut rng).unwrap();
        let floor = 0.1 / (dim as f64).sqrt();
        let min_overlap = a.vectors().iter()
            .flat_map(|x| b.vectors().iter().map(move |y| overlap(x, y).unwrap().norm()))
            .fold(f64::INFINITY, f64::min);
        prop_assume!(min_overlap >= floor);
        let back = reconstruct_density(&kirkwood(&rho, &a, &b).unwrap(), &TOL).unwrap();
        prop_assert!(back.frobenius_distance(&rho).unwrap() <= 1e-10);
    }

    #[test]
    fn weak_value_of_eigenstate_is_eigenvalue(seed in any::<u64>(), dim in 1usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let basis = OrthonormalBasis::random(dim, &mut rng).unwrap();
        let values: Vec<f64> = (0..dim).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let u = basis.matrix();
        let d = DMatrix::from_diagonal(&DVector::from_iterator(dim, values.iter().map(|&v| Complex64::new(v, 0.0))));
        let m = &u * d * u.adjoint();
        let obs = Observable::new((&m + m.adjoint()).scale(0.5)).unwrap();
        let k = rng.gen_range(0..dim);
        let pre = basis.vector(k).clone();
        let mut post = StateVector::random(dim, &mut rng).unwrap();
        while post.overlap(&pre).unwrap().norm() < 0.1 {
            post = StateVector::random(dim, &mut rng).unwrap();
        }
        let w = weak_value(&obs, &pre, &post, &TOL).unwrap();
        prop_assert!((w - Complex64::new(values[k], 0.0)).norm() <= 1e-12 * values[k].abs().max(1.0));
    }

    #[test]
    fn bayes_keeps_delta_priors(n in 2usize..8, index in 0usize..8, seed in any::<u64>()) {
        let index = index % n;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let prior = ClassicalDistribution::delta(n, index).unwrap();
        let mut likelihood: Vec<f64> = (0..n).map(|_| rng.gen()).collect();
        likelihood[index] = likelihood[index].max(1e-3);
        let post = bayes_update(&prior, &likelihood, Evidence::Computed, &TOL).unwrap();
        prop_assert_eq!(post, prior);
    }

    #[test]
    fn bayes_posterior_is_normalized(seed in any::<u64>(), n in 1usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() + 0.01).collect();
        let total: f64 = w.iter().sum();
        let prior = ClassicalDistribution::with_sum_tolerance(w.iter().map(|x| x / total).collect(), 1e-12).unwrap();
        let likelihood: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * 0.9 + 0.1).collect();
        let post = bayes_update(&prior, &likelihood, Evidence::Computed, &TOL).unwrap();
        prop_assert!((post.probs().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
    }
}
