//! Reports are fixed by `(seed, workers)`, and worker counts only change the
//! sample partition.

use proptest::prelude::*;
use rand::Rng;
use serde_json::Value;
use wordmeasure::{parse_word, DominantWeight, FreeWord, MonomialSpec, SeededRng};
use wordmeasure_lab::parallel::{run, Merge};
use wordmeasure_lab::stats::ComplexWelford;
use wordmeasure_lab::{run_cli, Lab, Metric, Report};

fn without_elapsed(r: &Report) -> String {
    let mut v: Value = serde_json::from_str(&r.to_json()).unwrap();
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v.to_string()
}

fn all_experiments(lab: &Lab) -> Vec<Report> {
    let w = |s: &str| parse_word(s).unwrap();
    let lambda = DominantWeight::new(vec![1, 0, -1]).unwrap();
    vec![
        lab.mc_fourier(&w("x1 x2 x1^-1 x2^-1"), &lambda).unwrap(),
        lab.mc_convolution_identity(&w("x1^2"), &w("x1 x2"), &lambda).unwrap(),
        lab.mc_spread_failure(&w("x1"), 17, 0.5, 0.3, Some(0.2)).unwrap(),
        lab.mc_approx_eigenvectors(&w("x1 x2"), 8, 1, 0.3).unwrap(),
        lab.mc_projection_law(2, 5, 0.3).unwrap(),
        lab.mc_small_ball(&FreeWord::commutator(), 2, 0.3, Metric::Geodesic).unwrap(),
        lab.mc_small_ball(&w("x1"), 3, 0.4, Metric::Hs).unwrap(),
        lab.mc_trace_moment(&FreeWord::commutator(), 16, 1).unwrap(),
        lab.mc_weingarten_crosscheck(&MonomialSpec::abs_power(1, 2, 2).unwrap(), 3).unwrap(),
    ]
}

#[test]
fn identical_seeds_give_identical_reports() {
    let first = all_experiments(&Lab::new(400, 2024, 3));
    let second = all_experiments(&Lab::new(400, 2024, 3));
    for (a, b) in first.iter().zip(&second) {
        assert_eq!(without_elapsed(a), without_elapsed(b));
    }
    let other = all_experiments(&Lab::new(400, 2025, 3));
    assert_ne!(without_elapsed(&first[0]), without_elapsed(&other[0]));
}

#[test]
fn worker_counts_agree_statistically() {
    let w = parse_word("x1^3").unwrap();
    let lambda = DominantWeight::new(vec![1, 0, -1]).unwrap();
    let one = Lab::new(30_000, 17, 1).mc_fourier(&w, &lambda).unwrap();
    let four = Lab::new(30_000, 17, 4).mc_fourier(&w, &lambda).unwrap();
    assert_ne!(without_elapsed(&one), without_elapsed(&four));
    let gap = ((one.estimate.mean_re - four.estimate.mean_re).powi(2) + (one.estimate.mean_im - four.estimate.mean_im).powi(2)).sqrt();
    let se = (one.estimate.stderr.powi(2) + four.estimate.stderr.powi(2)).sqrt();
    assert!(gap <= 3.0 * se, "gap {gap}, stderr {se}");
}

#[test]
fn cli_output_is_reproducible() {
    let go = || {
        let mut out = Vec::new();
        let args = ["wordmeasure", "small-ball", "--n", "2", "--delta", "0.3", "--samples", "3000", "--seed", "9", "--workers", "2"];
        assert_eq!(run_cli(args, &mut out, &mut Vec::new()), 0);
        let mut v: Value = serde_json::from_slice(&out).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v.to_string()
    };
    assert_eq!(go(), go());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn merged_welford_matches_sequential(seed in any::<u64>(), workers in 1usize..8, samples in 2u64..400) {
        let root = SeededRng::new(seed);
        let step = |rng: &mut rand_chacha::ChaCha8Rng, acc: &mut ComplexWelford| {
            acc.push(num_complex::Complex64::new(rng.random::<f64>() * 3.0, rng.random::<f64>() - 0.5));
            Ok(())
        };
        let merged: ComplexWelford = run(&root, samples, workers, step).unwrap();
        let mut sequential = ComplexWelford::default();
        for (w, share) in wordmeasure_lab::parallel::shares(samples, workers).into_iter().enumerate() {
            let mut rng = root.child(w as u64);
            let mut part = ComplexWelford::default();
            for _ in 0..share {
                step(&mut rng, &mut part).unwrap();
            }
            sequential.merge(part);
        }
        prop_assert_eq!(&merged, &sequential);
        let mut flat = ComplexWelford::default();
        for (w, share) in wordmeasure_lab::parallel::shares(samples, workers).into_iter().enumerate() {
            let mut rng = root.child(w as u64);
            for _ in 0..share {
                step(&mut rng, &mut flat).unwrap();
            }
        }
        prop_assert_eq!(merged.count(), flat.count());
        prop_assert!((merged.mean() - flat.mean()).norm() < 1e-12);
        prop_assert!((merged.variance() - flat.variance()).abs() < 1e-9 * flat.variance().max(1.0));
    }
}
