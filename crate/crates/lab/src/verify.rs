//! Randomized falsification suites over the exact kernels. Every suite is a
//! deterministic function of its seed and counts instances and violations.

use num_complex::Complex64;
use rand::seq::IndexedRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use wordmeasure::inequalities::{
    chi_of_t_check, dim_ineq_check, large_weight_above, multiplicity_bound_holds, products_lemma_holds,
    separated_bound_check, small_rep_bound_holds, spread_bound_check, weingarten_bound_report, weingarten_regime,
};
use wordmeasure::spectral::{spread_implies_separated_check, MetricReport};
use wordmeasure::weingarten::weingarten_function;
use wordmeasure::{
    char_value, class_size, convolve, dim_hook_content, dim_weyl, haar_special_unitary, haar_unitary, lr_coefficient,
    mn_character, restrict, ClassFunction, CycleType, DominantWeight, Partition, Rational, SeededRng, UnitaryMatrix,
};

use crate::experiments::projection_cdf;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub instances: u64,
    pub violations: u64,
    /// Draws that did not meet the statement's hypotheses.
    pub skipped: u64,
    pub first_violation: Option<String>,
}

impl CheckOutcome {
    fn new(name: &str) -> Self {
        Self { name: name.to_string(), instances: 0, violations: 0, skipped: 0, first_violation: None }
    }

    fn record(&mut self, holds: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !holds {
            self.violations += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(describe());
            }
        }
    }

    fn skip(&mut self) {
        self.skipped += 1;
    }

    /// No violations, and at least one instance was checked.
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.instances > 0
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    SeededRng::new(seed).child(stream)
}

pub fn random_partition<R: Rng + ?Sized>(rng: &mut R, max_part: u32, max_len: usize) -> Partition {
    let len = rng.random_range(0..=max_len);
    let mut parts: Vec<u32> = (0..len).map(|_| rng.random_range(0..=max_part)).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(parts).expect("sorted parts")
}

pub fn random_weight<R: Rng + ?Sized>(rng: &mut R, n: usize, lo: i64, hi: i64) -> DominantWeight {
    let mut e: Vec<i64> = (0..n).map(|_| rng.random_range(lo..=hi)).collect();
    e.sort_unstable_by(|a, b| b.cmp(a));
    DominantWeight::new(e).expect("sorted entries")
}

fn random_angles<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI)).collect()
}

/// `Wg_{m,n} * n^{cyc} = δ_e` in exact arithmetic for `m <= max_m` and
/// `n ∈ {m, m+1, 2m, 10}`.
pub fn weingarten_inverse(max_m: u32) -> CheckOutcome {
    let mut out = CheckOutcome::new("weingarten_inverse");
    for m in 1..=max_m {
        let mut ns = vec![m as usize, m as usize + 1, 2 * m as usize, 10];
        ns.sort_unstable();
        ns.dedup();
        for n in ns.into_iter().filter(|&n| n >= m as usize) {
            let holds = weingarten_function::<Rational>(m, n)
                .and_then(|wg| convolve(&wg, &ClassFunction::cycle_power(m, n)))
                .map(|c| c == ClassFunction::delta_identity(m))
                .unwrap_or(false);
            out.record(holds, || format!("m={m}, n={n}"));
        }
    }
    out
}

/// Weyl's formula against hook-content on random partitions.
pub fn dimension_formulas(seed: u64, count: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("dim_weyl_vs_hook_content");
    let mut rng = rng(seed, 1);
    for _ in 0..count {
        let lambda = random_partition(&mut rng, 9, 8);
        let n = lambda.length().max(1) + rng.random_range(0..=4);
        let weyl: Rational = dim_weyl(&DominantWeight::from_partition(&lambda, n).expect("fits"));
        let hook: Rational = dim_hook_content(&lambda, n).expect("fits");
        out.record(weyl == hook, || format!("{lambda} at n={n}: {weyl} vs {hook}"));
    }
    out
}

/// `char_value(λ, I) = dim ρ_λ` to `1e-8` relative.
pub fn character_at_identity(seed: u64, count: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("char_value_at_identity");
    let mut rng = rng(seed, 2);
    for _ in 0..count {
        let n = rng.random_range(1..=8);
        let lambda = random_weight(&mut rng, n, -3, 4);
        let dim = dim_weyl::<f64>(&lambda);
        let holds = match char_value(&lambda, &UnitaryMatrix::identity(n)) {
            Ok(v) => (v - dim).norm() <= 1e-8 * dim,
            Err(_) => false,
        };
        out.record(holds, || format!("{lambda}"));
    }
    out
}

/// `Σ N dim dim = dim` and the multiplicity bound on random restrictions.
pub fn restriction_balance(seed: u64, count: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("restriction_dimension_identity");
    let mut rng = rng(seed, 3);
    for _ in 0..count {
        let n = rng.random_range(2..=6);
        let lambda = random_weight(&mut rng, n, -3, 3);
        let k = rng.random_range(1..n);
        let holds = restrict(&lambda, k).map(|t| t.dimension_balanced() && multiplicity_bound_holds(&t)).unwrap_or(false);
        out.record(holds, || format!("{lambda} restricted at k={k}"));
    }
    out
}

/// `⟨χ_ν, Ind(χ_λ ⊠ χ_μ)⟩` from Murnaghan–Nakayama characters.
pub fn induced_multiplicity(lambda: &Partition, mu: &Partition, nu: &Partition) -> Rational {
    let (a, b) = (lambda.weight(), mu.weight());
    let mut total = Rational::from_integer(0.into());
    for c1 in CycleType::all_of(a) {
        for c2 in CycleType::all_of(b) {
            let mut joined: Vec<u32> = c1.cycles().parts().iter().chain(c2.cycles().parts()).copied().collect();
            joined.sort_unstable_by(|x, y| y.cmp(x));
            let c = CycleType::new(Partition::new(joined).expect("sorted"));
            let size = class_size::<Rational>(&c1) * class_size::<Rational>(&c2);
            let chi = mn_character::<Rational>(lambda, &c1).expect("in cap")
                * mn_character::<Rational>(mu, &c2).expect("in cap")
                * mn_character::<Rational>(nu, &c).expect("in cap");
            total += size * chi;
        }
    }
    let order = |k: u32| Rational::from_integer((1..=k as i64).product::<i64>().into());
    total / (order(a) * order(b))
}

/// LR coefficients against the character inner product for `|ν| <= max_weight`.
pub fn lr_character_oracle(max_weight: u32) -> CheckOutcome {
    let mut out = CheckOutcome::new("lr_vs_character_oracle");
    for total in 0..=max_weight {
        for nu in Partition::all_of(total) {
            for a in 0..=total {
                for lambda in Partition::all_of(a) {
                    for mu in Partition::all_of(total - a) {
                        let expected = induced_multiplicity(&lambda, &mu, &nu);
                        let got = lr_coefficient(&lambda, &mu, &nu).map(|v| Rational::from_integer(v.into()));
                        out.record(got.as_ref() == Ok(&expected), || format!("N^{nu}_{lambda},{mu}"));
                    }
                }
            }
        }
    }
    out
}

/// `|h_m(g)|² = Σ_{c <= m} ρ_{(c,0,…,0,-c)}(g)` to `1e-6`.
pub fn symmetric_power_identity(seed: u64, count: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("symmetric_power_modulus");
    let mut rng = rng(seed, 4);
    for _ in 0..count {
        let n = rng.random_range(2..=5);
        let m = rng.random_range(0..=6i64);
        let g = haar_unitary(n, &mut rng);
        let at = |first: i64, last: i64| {
            let mut e = vec![0; n];
            e[0] += first;
            e[n - 1] -= last;
            char_value(&DominantWeight::new(e).expect("dominant"), &g).expect("in cap")
        };
        let h = at(m, 0);
        let sum: Complex64 = (0..=m).map(|c| at(c, c)).sum();
        let gap = (h.norm_sqr() - sum).norm();
        out.record(gap <= 1e-6, || format!("n={n}, m={m}: gap {gap:e}"));
    }
    out
}

/// A `(2β, ε)`-spread element is `(β, ε/n)`-separated.
pub fn spread_implies_separated(seed: u64, qualifying: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("spread_implies_separated");
    let mut rng = rng(seed, 5);
    let mut attempts = 0;
    while (out.instances as usize) < qualifying && attempts < 100 * qualifying {
        attempts += 1;
        let n = rng.random_range(2..=8);
        let beta = rng.random_range(0.02..0.5);
        let eps = rng.random_range(1e-3..1.0f64).powi(2);
        let angles = random_angles(&mut rng, n);
        match spread_implies_separated_check(&UnitaryMatrix::from_angles(&angles), beta, eps) {
            Ok(holds) => out.record(holds, || format!("angles {angles:?}, β={beta}, ε={eps}")),
            Err(_) => out.skip(),
        }
    }
    out
}

/// The torus character bound for random weights and eigenvalue splits.
pub fn chi_of_t(seed: u64, count: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("chi_of_t_bound");
    let mut rng = rng(seed, 6);
    for _ in 0..count {
        let n = rng.random_range(2..=6);
        let m = rng.random_range(1..n);
        let lambda = random_weight(&mut rng, n, -4, 6);
        let points: Vec<Complex64> = random_angles(&mut rng, n).into_iter().map(|t| Complex64::from_polar(1.0, t)).collect();
        let (alphas, betas) = points.split_at(m);
        match chi_of_t_check(&lambda, alphas, betas) {
            Ok(check) => out.record(check.holds(), || format!("{lambda}: {check:?}")),
            Err(_) => out.skip(),
        }
    }
    out
}

/// The products lemma on random integer sets and splits.
pub fn products(seed: u64, count: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("products_lemma");
    let mut rng = rng(seed, 7);
    let pool: Vec<i64> = (-80..80).collect();
    for _ in 0..count {
        let size = rng.random_range(2..=10);
        let xs: Vec<i64> = pool.choose_multiple(&mut rng, size).copied().collect();
        let cut = rng.random_range(0..=size);
        let (y, z) = xs.split_at(cut);
        let holds = products_lemma_holds(y, z).unwrap_or(false);
        out.record(holds, || format!("Y={y:?}, Z={z:?}"));
    }
    out
}

/// The dimension inequality over all splits of random weights.
pub fn dim_ineq(seed: u64, count: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("dim_inequality");
    let mut rng = rng(seed, 8);
    for _ in 0..count {
        let n = rng.random_range(2..=8);
        let lambda = random_weight(&mut rng, n, -5, 8);
        let m = rng.random_range(1..n);
        let result = dim_ineq_check(&lambda, m);
        out.record(matches!(result, Ok(Ok(_))), || format!("{lambda}, m={m}: {result:?}"));
    }
    out
}

/// `ρ_{μ,n}(1) >= (n/m)^m` for random `μ ⊢ m <= n`.
pub fn small_reps(seed: u64, count: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("small_representations");
    let mut rng = rng(seed, 9);
    while (out.instances as usize) < count {
        let mu = random_partition(&mut rng, 8, 8);
        if mu.weight() == 0 {
            out.skip();
            continue;
        }
        let n = (mu.weight() as usize).max(mu.length()) + rng.random_range(0..=24);
        let holds = small_rep_bound_holds(&mu, n).unwrap_or(false);
        out.record(holds, || format!("{mu} at n={n}"));
    }
    out
}

/// `|Wg(σ)| <= Wg(e) <= 2/n^m` at in-regime `(m, n)`.
pub fn weingarten_bound(seed: u64, per_degree: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("weingarten_bound_in_regime");
    let mut rng = rng(seed, 10);
    for m in 1..=4u32 {
        let first = (1..).find(|&n| weingarten_regime(m, n)).expect("regime is reached");
        let mut ns = vec![first];
        ns.extend((0..per_degree).map(|_| first + rng.random_range(0..4 * first)));
        for n in ns {
            match weingarten_bound_report(m, n) {
                Ok(r) if r.in_regime => out.record(r.holds, || format!("m={m}, n={n}")),
                _ => out.skip(),
            }
        }
    }
    out
}

/// `d_HS <= d <= (π/2) d_HS` on random pairs in `SU(n)`.
pub fn hs_sandwich(seed: u64, count: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("hs_sandwich");
    let mut rng = rng(seed, 11);
    for _ in 0..count {
        let n = rng.random_range(2..=6);
        let g = haar_special_unitary(n, &mut rng);
        let h = haar_special_unitary(n, &mut rng);
        let report = MetricReport::between(&g, &h);
        let holds = report.as_ref().map(|r| r.is_sandwiched(1e-10)).unwrap_or(false);
        out.record(holds, || format!("n={n}: {report:?}"));
    }
    out
}

/// `4^{-n} ε^{2d} <= P(‖P_d v‖ <= ε) <= 2^n ε^{2d}` under the exact law.
pub fn sphere_bracket(seed: u64, count: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("sphere_bracket");
    let mut rng = rng(seed, 12);
    for _ in 0..count {
        let n = rng.random_range(2..=24);
        let d = rng.random_range(1..n);
        let eps: f64 = rng.random_range(1e-3..=1.0);
        let p = projection_cdf(d, n, eps);
        let scale = eps.powi(2 * d as i32);
        let (lower, upper) = (4f64.powi(-(n as i32)) * scale, 2f64.powi(n as i32) * scale);
        let tol = 1e-12 * upper;
        out.record(lower <= p + tol && p <= upper + tol, || format!("d={d}, n={n}, ε={eps}: {p}"));
    }
    out
}

/// The exponential bounds for separated and spread elements at `n = 2, 3`.
pub fn exponential_bounds(seed: u64, count: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("exponential_character_bounds");
    let mut rng = rng(seed, 13);
    for i in 0..count {
        let n = 2 + i % 2;
        let bits = rng.random_range(if n == 2 { 400..1500 } else { 1000..2000 });
        let jitter: Vec<u64> = (0..2).map(|_| rng.random_range(0..1000)).collect();
        let lambda = large_weight_above(n, bits, &jitter).expect("n is 2 or 3");
        let roots: Vec<(u64, u64)> = (0..n)
            .map(|_| {
                let q = rng.random_range(3..40);
                (rng.random_range(0..q), q)
            })
            .collect();
        let gamma = if n == 2 { rng.random_range(0.2..0.5) } else { rng.random_range(0.25..0.334) };
        for check in [separated_bound_check(&lambda, gamma, &roots), spread_bound_check(&lambda, gamma, &roots)] {
            match check {
                Ok(Some(c)) => out.record(c.holds(), || format!("n={n}, roots {roots:?}: {c:?}")),
                _ => out.skip(),
            }
        }
    }
    out
}

/// The inequality verifiers, at the given number of draws per suite.
pub fn inequality_suite(seed: u64, draws: usize) -> Vec<CheckOutcome> {
    vec![
        chi_of_t(seed, draws),
        products(seed, draws),
        dim_ineq(seed, draws / 4),
        small_reps(seed, draws),
        weingarten_bound(seed, 3),
        hs_sandwich(seed, draws),
        sphere_bracket(seed, draws),
        exponential_bounds(seed, draws / 10),
    ]
}

/// Every exact property suite, as run by `verify-all`.
pub fn property_suite(seed: u64, draws: usize) -> Vec<CheckOutcome> {
    let mut all = vec![
        weingarten_inverse(5),
        dimension_formulas(seed, draws),
        character_at_identity(seed, draws / 5),
        restriction_balance(seed, draws / 5),
        lr_character_oracle(5),
        symmetric_power_identity(seed, draws / 10),
        spread_implies_separated(seed, draws),
    ];
    all.extend(inequality_suite(seed, draws));
    all
}
