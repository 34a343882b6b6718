//! Randomized invariants of the exact kernels, words, sampling and spectra.

use nalgebra::DVector;
use num_complex::Complex64;
use proptest::prelude::*;
use wordmeasure::branching::count_strict_expansions;
use wordmeasure::inequalities::{
    chi_of_t_check, dim_ineq_check, multiplicity_bound_holds, products_lemma_holds, small_rep_bound_holds,
};
use wordmeasure::spectral::{approx_eigenvector_defect, char_value_from_eigenvalues, MetricReport};
use wordmeasure::unitary::{haar_special_unitary, haar_tuple, haar_unitary};
use wordmeasure::weingarten::MonomialSpec;
use wordmeasure::{
    char_value, dim_hook_content, dim_weyl, dual_partition, integrate_monomial, invariant_dim, parse_word, restrict,
    word_eval, BlockSubgroup, DominantWeight, FreeWord, Partition, Rational, SeededRng, SpectrumOnCircle,
};

fn partition_strategy(max_weight: u32, max_len: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=max_weight, 0..=max_len).prop_filter_map("weight too large", move |mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let p = Partition::new(parts).ok()?;
        (p.weight() <= max_weight).then_some(p)
    })
}

fn weight_strategy(n: std::ops::RangeInclusive<usize>, lo: i64, hi: i64) -> impl Strategy<Value = DominantWeight> {
    n.prop_flat_map(move |n| prop::collection::vec(lo..=hi, n)).prop_map(|mut e| {
        e.sort_unstable_by(|a, b| b.cmp(a));
        DominantWeight::new(e).unwrap()
    })
}

fn word_strategy() -> impl Strategy<Value = FreeWord> {
    prop::collection::vec((1usize..=3, any::<bool>()), 1..=8).prop_filter_map("trivial word", |letters| {
        let text: Vec<String> =
            letters.iter().map(|(g, inv)| if *inv { format!("x{g}^-1") } else { format!("x{g}") }).collect();
        parse_word(&text.join(" ")).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn weyl_and_hook_content_agree(lambda in partition_strategy(12, 10), extra in 0usize..6) {
        let n = lambda.length().max(1) + extra;
        let weight = DominantWeight::from_partition(&lambda, n).unwrap();
        prop_assert_eq!(dim_weyl::<Rational>(&weight), dim_hook_content::<Rational>(&lambda, n).unwrap());
    }

    #[test]
    fn dual_is_involutive(lambda in partition_strategy(12, 6), extra in 0usize..3) {
        // with ℓ(λ) = n the double dual drops the common factor det^{λ_n}
        let n = lambda.length() + 1 + extra;
        let dual = dual_partition(&lambda, n).unwrap();
        prop_assert_eq!(dual_partition(&dual, n).unwrap(), lambda.clone());
        let full = lambda.length().max(1);
        let shift = lambda.part(full - 1);
        let reduced = Partition::new(lambda.parts().iter().map(|p| p - shift).collect()).unwrap();
        prop_assert_eq!(dual_partition(&dual_partition(&lambda, full).unwrap(), full).unwrap(), reduced);
    }

    #[test]
    fn lr_is_symmetric(lambda in partition_strategy(4, 3), mu in partition_strategy(4, 3), nu_parts in partition_strategy(8, 4)) {
        prop_assert_eq!(count_strict_expansions(&lambda, &mu, &nu_parts), count_strict_expansions(&mu, &lambda, &nu_parts));
        prop_assert_eq!(count_strict_expansions(&lambda, &Partition::empty(), &nu_parts), u64::from(lambda == nu_parts));
    }

    #[test]
    fn restriction_balances_dimensions(lambda in weight_strategy(2..=5, -3, 3), k in 1usize..5) {
        prop_assume!(k < lambda.rank());
        let table = restrict(&lambda, k).unwrap();
        prop_assert!(table.dimension_balanced());
        prop_assert!(multiplicity_bound_holds(&table));
    }

    #[test]
    fn invariants_ignore_block_order(lambda in weight_strategy(2..=6, -2, 2), seed in any::<u64>()) {
        let n = lambda.rank();
        let mut blocks = Vec::new();
        let mut left = n;
        let mut s = seed;
        while left > 0 {
            let b = 1 + (s % left as u64) as usize;
            s /= 7;
            blocks.push(b);
            left -= b;
        }
        let forward = invariant_dim(&lambda, &BlockSubgroup::new(blocks.clone()).unwrap()).unwrap();
        blocks.reverse();
        let backward = invariant_dim(&lambda, &BlockSubgroup::new(blocks.clone()).unwrap()).unwrap();
        prop_assert_eq!(forward, backward);
        blocks.rotate_left(1);
        prop_assert_eq!(forward, invariant_dim(&lambda, &BlockSubgroup::new(blocks).unwrap()).unwrap());
    }

    #[test]
    fn products_lemma(xs in prop::collection::btree_set(-60i64..60, 2..=10), mask in any::<u16>()) {
        let xs: Vec<i64> = xs.into_iter().collect();
        let (y, z): (Vec<(usize, i64)>, Vec<(usize, i64)>) = xs.iter().copied().enumerate().partition(|(i, _)| mask >> i & 1 == 1);
        let y: Vec<i64> = y.into_iter().map(|(_, v)| v).collect();
        let z: Vec<i64> = z.into_iter().map(|(_, v)| v).collect();
        prop_assert!(products_lemma_holds(&y, &z).unwrap());
    }

    #[test]
    fn dim_inequality(lambda in weight_strategy(2..=8, -4, 6), m in 1usize..8) {
        prop_assume!(m < lambda.rank());
        prop_assert!(dim_ineq_check(&lambda, m).unwrap().is_ok());
    }

    #[test]
    fn small_representations_are_large(mu in partition_strategy(10, 10), extra in 0usize..20) {
        prop_assume!(mu.weight() > 0);
        let n = mu.weight() as usize + extra;
        prop_assert!(small_rep_bound_holds(&mu, n).unwrap());
    }

    #[test]
    fn monomial_integrals_respect_relabeling(
        maps in prop::collection::vec((1usize..=3, 1usize..=3, 1usize..=3, 1usize..=3), 1..=3),
        perm_seed in 0usize..24,
    ) {
        let n = 4;
        let spec = MonomialSpec::new(
            maps.iter().map(|m| m.0).collect(),
            maps.iter().map(|m| m.1).collect(),
            maps.iter().map(|m| m.2).collect(),
            maps.iter().map(|m| m.3).collect(),
        ).unwrap();
        let mut perm: Vec<usize> = (1..=n).collect();
        let mut s = perm_seed;
        for i in (1..n).rev() {
            perm.swap(i, s % (i + 1));
            s /= i + 1;
        }
        prop_assert_eq!(integrate_monomial(&spec, n).unwrap(), integrate_monomial(&spec.relabeled(&perm), n).unwrap());
    }

    #[test]
    fn words_stay_reduced(w in word_strategy(), t in 1usize..4) {
        for pair in w.letters().windows(2) {
            prop_assert!(!(pair[0].generator == pair[1].generator && pair[0].inverse != pair[1].inverse));
        }
        prop_assert_eq!(parse_word(&w.to_string()).unwrap(), w.clone());
        let powered = w.self_concat(t).unwrap();
        prop_assert_eq!(powered.length(), t * w.length());
        prop_assert_eq!(w.concat(&w).length(), 2 * w.length());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn word_inverse_is_adjoint(w in word_strategy(), seed in any::<u64>()) {
        let tuple = haar_tuple(3, w.rank(), &mut SeededRng::new(seed).child(0));
        let value = word_eval(&w, &tuple).unwrap();
        let inverse = word_eval(&w.inverse(), &tuple).unwrap();
        prop_assert!((value.adjoint().matrix() - inverse.matrix()).norm() < 1e-10);
        prop_assert!(value.unitarity_defect() < 1e-10);
    }

    #[test]
    fn character_at_identity_is_dimension(lambda in weight_strategy(1..=8, -3, 4)) {
        prop_assume!(lambda.total() - lambda.rank() as i64 * lambda.last() <= 20);
        let value = char_value(&lambda, &wordmeasure::UnitaryMatrix::identity(lambda.rank())).unwrap();
        let dim = dim_weyl::<f64>(&lambda);
        prop_assert!((value.re / dim - 1.0).abs() < 1e-8 && value.im.abs() < 1e-8 * dim);
    }

    #[test]
    fn symmetric_power_modulus(n in 2usize..=5, m in 0i64..=6, seed in any::<u64>()) {
        // |h_m(g)|² = Σ_{c <= m} ρ_{(c,0,…,0,-c)}(g)
        let g = haar_unitary(n, &mut SeededRng::new(seed).child(0));
        let mut sym = vec![0; n];
        sym[0] = m;
        let h = char_value(&DominantWeight::new(sym).unwrap(), &g).unwrap();
        let sum: Complex64 = (0..=m).map(|c| {
            let mut e = vec![0; n];
            e[0] = c;
            e[n - 1] -= c;
            char_value(&DominantWeight::new(e).unwrap(), &g).unwrap()
        }).sum();
        prop_assert!((h.norm_sqr() - sum).norm() < 1e-6);
    }

    #[test]
    fn exterior_generating_function(n in 1usize..=6, seed in any::<u64>()) {
        let mut rng = SeededRng::new(seed).child(0);
        let g = haar_unitary(n, &mut rng);
        let zetas = SpectrumOnCircle::of(&g).points();
        for k in 0..5 {
            let t = Complex64::new(-1.5 + 0.7 * k as f64, 0.3 * k as f64);
            let product: Complex64 = zetas.iter().map(|z| 1.0 + z * t).product();
            let series: Complex64 = (0..=n).map(|j| {
                let lambda = DominantWeight::fundamental(n, j);
                char_value(&lambda, &g).unwrap() * t.powu(j as u32)
            }).sum();
            prop_assert!((product - series).norm() < 1e-8 * product.norm().max(1.0));
        }
    }

    #[test]
    fn metric_sandwich(n in 2usize..=5, seed in any::<u64>()) {
        let mut rng = SeededRng::new(seed).child(0);
        let g = haar_special_unitary(n, &mut rng);
        let h = haar_special_unitary(n, &mut rng);
        prop_assert!(MetricReport::between(&g, &h).unwrap().is_sandwiched(1e-10));
    }

    #[test]
    fn defect_is_a_minimal_residual(n in 2usize..=6, seed in any::<u64>()) {
        let mut rng = SeededRng::new(seed).child(0);
        let g = haar_unitary(n, &mut rng);
        let v: DVector<Complex64> = haar_unitary(n, &mut rng).matrix().column(0).into_owned();
        let defect = approx_eigenvector_defect(&g, &v).unwrap();
        let gv = g.matrix() * &v;
        for k in 0..12 {
            let zeta = Complex64::from_polar(1.0, k as f64 * std::f64::consts::PI / 6.0);
            prop_assert!(defect <= (&gv - &v * zeta).norm() + 1e-12);
        }
    }

    #[test]
    fn character_bound_for_separated_tori(
        n in 2usize..=6, m_frac in 0.0f64..1.0, lambda_seed in prop::collection::vec(-3i64..=5, 6),
        angles in prop::collection::vec(-3.14f64..3.14, 6),
    ) {
        let m = 1 + (m_frac * (n - 1) as f64) as usize;
        prop_assume!(m < n);
        let mut e: Vec<i64> = lambda_seed[..n].to_vec();
        e.sort_unstable_by(|a, b| b.cmp(a));
        let lambda = DominantWeight::new(e).unwrap();
        let points: Vec<Complex64> = angles[..n].iter().map(|&t| Complex64::from_polar(1.0, t)).collect();
        let (alphas, betas) = points.split_at(m);
        let check = chi_of_t_check(&lambda, alphas, betas);
        prop_assume!(check.is_ok());
        let check = check.unwrap();
        prop_assert!(check.holds(), "{:?}", check);
        let direct = char_value_from_eigenvalues(&lambda, &points).unwrap().norm().log2();
        prop_assert!((direct - check.lhs).abs() < 1e-9 || direct < -20.0);
    }
}
