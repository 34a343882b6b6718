//! Seeded Monte Carlo experiments. Each run returns a [`Report`] whose verdict
//! is recomputable from the experiment name, parameters and seed.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use nalgebra::DVector;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use statrs::function::beta::beta_reg;
use wordmeasure::branching::LrCache;
use wordmeasure::inequalities::weingarten_regime;
use wordmeasure::spectral::{approx_eigenvector_defect, ball_volume_bounds, SpectrumOnCircle};
use wordmeasure::unitary::{haar_special_tuple, haar_tuple};
use wordmeasure::weingarten::MAX_MOMENT;
use wordmeasure::{
    char_value, dim_weyl, geodesic_distance, haar_special_unitary, haar_unitary, hs_distance, integrate_monomial,
    moment_tr_exact, word_eval, DominantWeight, Error, FreeWord, MonomialSpec, SeededRng, UnitaryMatrix,
};

use crate::error::{LabError, Result};
use crate::parallel::{self, Merge};
use crate::report::{all_checks, Estimate, Report};
use crate::stats::{ComplexWelford, Tally, GATE_SIGMAS};

/// Largest monomial degree estimated by sampling.
pub const MAX_MC_MONOMIAL_DEGREE: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    Hs,
    Geodesic,
}

impl FromStr for Metric {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "hs" => Ok(Metric::Hs),
            "geodesic" => Ok(Metric::Geodesic),
            other => Err(LabError::Usage(format!("unknown metric {other:?}; expected hs or geodesic"))),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Hs => "hs",
            Metric::Geodesic => "geodesic",
        })
    }
}

impl Metric {
    pub fn distance(self, g: &UnitaryMatrix, h: &UnitaryMatrix) -> wordmeasure::Result<f64> {
        match self {
            Metric::Hs => hs_distance(g, h),
            Metric::Geodesic => geodesic_distance(g, h),
        }
    }
}

/// True when some generator occurs exactly once; the word value is then
/// Haar distributed.
pub fn is_haar_distributed(w: &FreeWord) -> bool {
    (1..=w.rank()).any(|g| w.letters().iter().filter(|l| l.generator == g).count() == 1)
}

/// Uniform unit vector in `C^n`.
pub fn unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DVector<Complex64> {
    let v = DVector::from_fn(n, |_, _| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)));
    let norm = v.norm();
    v.unscale(norm)
}

/// `P(‖P_d v‖ <= ε)` for `v` uniform on the unit sphere of `C^n`; the
/// squared projection is `Beta(d, n-d)`.
pub fn projection_cdf(d: usize, n: usize, eps: f64) -> f64 {
    if d == n {
        return if eps >= 1.0 { 1.0 } else { 0.0 };
    }
    beta_reg(d as f64, (n - d) as f64, (eps * eps).min(1.0))
}

/// `μ(B(I, δ))` in `SU(2)` for the geodesic metric: a cap of the round `S³`.
pub fn su2_cap_volume(delta: f64) -> f64 {
    let psi = PI * delta;
    (2.0 * psi - (2.0 * psi).sin()) / (2.0 * PI)
}

fn ln_factorial(k: u64) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

fn to_f64(q: &wordmeasure::Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn domain(msg: String) -> LabError {
    LabError::Core(Error::Domain(msg))
}

fn timed(body: impl FnOnce() -> Result<Report>) -> Result<Report> {
    let start = Instant::now();
    let mut report = body()?;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Run budget and shared state for the experiments.
pub struct Lab {
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
    /// Run outside a theorem's hypotheses as an informational measurement.
    pub force: bool,
    cache: Option<LrCache>,
}

impl Lab {
    pub fn new(samples: u64, seed: u64, workers: usize) -> Self {
        Self { samples, seed, workers: workers.max(1), force: false, cache: None }
    }

    pub fn forced(mut self, force: bool) -> Self {
        self.force = force;
        self
    }

    pub fn with_cache(mut self, cache: LrCache) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn cache(&self) -> &LrCache {
        self.cache.as_ref().unwrap_or_else(|| LrCache::global())
    }

    /// Independent stream `tag` of the run seed; tag 0 is the seed itself.
    fn stream(&self, tag: u64) -> SeededRng {
        let root = SeededRng::new(self.seed);
        if tag == 0 {
            root
        } else {
            root.derive(tag)
        }
    }

    fn sample<A, F>(&self, tag: u64, step: F) -> Result<A>
    where
        A: Merge,
        F: Fn(&mut ChaCha8Rng, &mut A) -> wordmeasure::Result<()> + Sync,
    {
        Ok(parallel::run(&self.stream(tag), self.samples, self.workers, step)?)
    }

    fn report(&self, experiment: &str, estimate: Estimate, n_samples: u64) -> Report {
        Report::new(experiment, estimate, n_samples, self.seed, self.workers)
    }

    fn hypothesis(&self, holds: bool, what: impl FnOnce() -> String) -> Result<()> {
        if holds || self.force {
            Ok(())
        } else {
            Err(LabError::Hypothesis(what()))
        }
    }

    fn character_mean(&self, word: &FreeWord, lambda: &DominantWeight, tag: u64) -> Result<ComplexWelford> {
        let (n, r) = (lambda.rank(), word.rank());
        char_value(lambda, &UnitaryMatrix::identity(n))?;
        self.sample(tag, |rng, acc: &mut ComplexWelford| {
            let value = word_eval(word, &haar_tuple(n, r, rng))?;
            acc.push(char_value(lambda, &value)?);
            Ok(())
        })
    }

    /// Exact `E ρ_λ(w)` when it is known: trivial `λ`, or a power word.
    pub fn exact_fourier(&self, word: &FreeWord, lambda: &DominantWeight) -> Option<f64> {
        if lambda.is_zero() {
            return Some(1.0);
        }
        let (_, ell, _) = word.as_power()?;
        self.cache().power_word_fourier_exact(lambda, ell).ok().map(|v| v as f64)
    }

    /// Empirical Fourier coefficient `E ρ_λ(w(X_1, ..., X_r))`.
    pub fn mc_fourier(&self, word: &FreeWord, lambda: &DominantWeight) -> Result<Report> {
        timed(|| {
            let acc = self.character_mean(word, lambda, 0)?;
            let mut report = self
                .report("mc_fourier", (&acc).into(), acc.count())
                .param("word", word.to_string())
                .param("n", lambda.rank())
                .param("lambda", lambda.entries().to_vec())
                .derived("dim", dim_weyl::<f64>(lambda));
            if let Some(exact) = self.exact_fourier(word, lambda) {
                report = report
                    .derived("exact", exact)
                    .derived("deviation", (acc.mean() - exact).norm())
                    .with_pass(Some(acc.agrees_with(exact.into())));
            }
            Ok(report)
        })
    }

    /// Compares `a_{w1*w2}` with `a_{w1} a_{w2} / ρ(1)` from three
    /// independent estimates.
    pub fn mc_convolution_identity(&self, w1: &FreeWord, w2: &FreeWord, lambda: &DominantWeight) -> Result<Report> {
        timed(|| {
            let joined = w1.concat(w2);
            let left = self.character_mean(&joined, lambda, 1)?;
            let a1 = self.character_mean(w1, lambda, 2)?;
            let a2 = self.character_mean(w2, lambda, 3)?;
            let dim = dim_weyl::<f64>(lambda);
            let right = a1.mean() * a2.mean() / dim;
            let var_right =
                (a2.mean().norm_sqr() * a1.stderr().powi(2) + a1.mean().norm_sqr() * a2.stderr().powi(2)) / (dim * dim);
            let pooled = (left.stderr().powi(2) + var_right).sqrt();
            let diff = left.mean() - right;
            let pass = diff.norm() <= GATE_SIGMAS * pooled + crate::stats::GATE_FLOOR;
            let estimate = Estimate { mean_re: diff.re, mean_im: diff.im, stderr: pooled };
            Ok(self
                .report("mc_convolution_identity", estimate, left.count() + a1.count() + a2.count())
                .param("word", w1.to_string())
                .param("word2", w2.to_string())
                .param("n", lambda.rank())
                .param("lambda", lambda.entries().to_vec())
                .derived("joined_word", joined.to_string())
                .derived("left_re", left.mean().re)
                .derived("left_im", left.mean().im)
                .derived("right_re", right.re)
                .derived("right_im", right.im)
                .derived("dim", dim)
                .with_pass(Some(pass)))
        })
    }

    /// `P(w value is not (β, ε)-spread)` against `2^{3n²} ε^{n²(1-β)²/(4(ℓ+1))}`.
    pub fn mc_spread_failure(&self, word: &FreeWord, n: usize, beta: f64, eps: f64, gamma: Option<f64>) -> Result<Report> {
        timed(|| {
            if !(beta > 0.0 && beta < 1.0) || !(eps > 0.0) || n == 0 {
                return Err(domain(format!("need 0 < β < 1, ε > 0, n >= 1; got β={beta}, ε={eps}, n={n}")));
            }
            let ell = word.length() as f64;
            let threshold = (4.0 * ell / (1.0 - beta)).max(8.0 / (1.0 - beta)).max(16.0);
            let theorem = n as f64 > threshold;
            self.hypothesis(theorem, || format!("n = {n} must exceed max(4ℓ/(1-β), 8/(1-β), 16) = {threshold}"))?;
            let r = word.rank();
            let (failures, separated): (Tally, Tally) = self.sample(0, |rng, acc: &mut (Tally, Tally)| {
                let spectrum = SpectrumOnCircle::of(&word_eval(word, &haar_tuple(n, r, rng))?);
                acc.0.record(!spectrum.is_spread(beta, eps));
                if let Some(gamma) = gamma {
                    acc.1.record(spectrum.is_separated(gamma, eps));
                }
                Ok(())
            })?;
            let nn = (n * n) as f64;
            let log2_bound = 3.0 * nn + nn * (1.0 - beta).powi(2) / (4.0 * (ell + 1.0)) * eps.log2();
            let (lo, hi) = failures.wilson();
            let pass = theorem.then(|| log2_bound >= 0.0 || hi <= log2_bound.exp2());
            let mut report = self
                .report("mc_spread_failure", (&failures).into(), failures.trials)
                .param("word", word.to_string())
                .param("n", n)
                .param("beta", beta)
                .param("eps", eps)
                .derived("failures", failures.hits)
                .derived("wilson_lo", lo)
                .derived("wilson_hi", hi)
                .derived("log2_bound", log2_bound)
                .derived("vacuous", log2_bound >= 0.0)
                .derived("theorem", theorem)
                .derived("threshold", threshold)
                .with_bound(log2_bound.exp2())
                .with_pass(pass);
            if let Some(gamma) = gamma {
                report = report.param("gamma", gamma).derived("separated_rate", separated.rate());
            }
            Ok(report)
        })
    }

    /// `P(m uniform unit vectors are all ε-approximate eigenvectors of the
    /// w value)` against `2^{3nm(ℓ+1)} ε^{m(2n-2m(ℓ+1)-1)}`.
    pub fn mc_approx_eigenvectors(&self, word: &FreeWord, n: usize, m: usize, eps: f64) -> Result<Report> {
        timed(|| {
            if m == 0 || n == 0 || !(eps > 0.0) {
                return Err(domain(format!("need m >= 1, n >= 1, ε > 0; got m={m}, n={n}, ε={eps}")));
            }
            let ell = word.length();
            let theorem = n > m * (ell + 1);
            self.hypothesis(theorem, || format!("n = {n} must exceed m(ℓ+1) = {}", m * (ell + 1)))?;
            let r = word.rank();
            let hits: Tally = self.sample(0, |rng, acc: &mut Tally| {
                let g = word_eval(word, &haar_tuple(n, r, rng))?;
                let mut all = true;
                for _ in 0..m {
                    all &= approx_eigenvector_defect(&g, &unit_vector(n, rng))? <= eps;
                }
                acc.record(all);
                Ok(())
            })?;
            let (nf, mf, lf) = (n as f64, m as f64, ell as f64);
            let log2_bound = 3.0 * nf * mf * (lf + 1.0) + mf * (2.0 * nf - 2.0 * mf * (lf + 1.0) - 1.0) * eps.log2();
            let (lo, hi) = hits.wilson();
            let bound_check = theorem.then(|| log2_bound >= 0.0 || hi <= log2_bound.exp2());
            let mut report = self
                .report("mc_approx_eigenvectors", (&hits).into(), hits.trials)
                .param("word", word.to_string())
                .param("n", n)
                .param("m", m)
                .param("eps", eps)
                .derived("wilson_lo", lo)
                .derived("wilson_hi", hi)
                .derived("log2_bound", log2_bound)
                .derived("vacuous", log2_bound >= 0.0)
                .derived("theorem", theorem)
                .with_bound(log2_bound.exp2());
            let mut oracle_check = None;
            if m == 1 && is_haar_distributed(word) {
                // gv is uniform and independent of v, so 1 - defect² ~ Beta(1, n-1)
                let e = eps.min(1.0);
                let oracle = e.powi(2 * (n as i32 - 1));
                let d = 2 * (n as i32 - 1);
                report = report
                    .derived("oracle", oracle)
                    .derived("sphere_lower", 4f64.powi(-(n as i32)) * e.powi(d))
                    .derived("sphere_upper", 2f64.powi(n as i32) * e.powi(d));
                oracle_check = Some(lo <= oracle && oracle <= hi);
            }
            Ok(report.with_pass(all_checks(&[bound_check, oracle_check])))
        })
    }

    /// Law of the norm of the projection of a uniform unit vector in `C^n`
    /// onto the first `d` coordinates.
    pub fn mc_projection_law(&self, d: usize, n: usize, eps: f64) -> Result<Report> {
        timed(|| {
            if d == 0 || d > n {
                return Err(domain(format!("need 1 <= d <= n, got d={d}, n={n}")));
            }
            if !(eps >= 0.0) || !eps.is_finite() {
                return Err(domain(format!("radius {eps} must be a finite non-negative number")));
            }
            let hits: Tally = self.sample(0, |rng, acc: &mut Tally| {
                let v = unit_vector(n, rng);
                acc.record(v.rows(0, d).norm() <= eps);
                Ok(())
            })?;
            let exact = projection_cdf(d, n, eps);
            let (lo, hi) = hits.wilson();
            let mut report = self
                .report("mc_projection_law", (&hits).into(), hits.trials)
                .param("d", d)
                .param("n", n)
                .param("eps", eps)
                .derived("exact", exact)
                .derived("wilson_lo", lo)
                .derived("wilson_hi", hi);
            let law_check = Some(lo <= exact && exact <= hi);
            let mut bracket_check = None;
            if d < n && eps <= 1.0 {
                let scale = eps.powi(2 * d as i32);
                let (lower, upper) = (4f64.powi(-(n as i32)) * scale, 2f64.powi(n as i32) * scale);
                report = report
                    .derived("bracket_lower", lower)
                    .derived("bracket_upper", upper)
                    .derived("bracket_exact_holds", lower <= exact && exact <= upper)
                    .with_bound(upper);
                bracket_check = Some(hi >= lower && lo <= upper && lower <= exact && exact <= upper);
            }
            Ok(report.with_pass(all_checks(&[law_check, bracket_check])))
        })
    }

    /// Word measure and Haar measure of `B(I, δ)` in `SU(n)`.
    pub fn mc_small_ball(&self, word: &FreeWord, n: usize, delta: f64, metric: Metric) -> Result<Report> {
        timed(|| {
            if n < 2 {
                return Err(domain(format!("small balls need n >= 2, got {n}")));
            }
            if !(delta > 0.0 && delta < 1.0) {
                return Err(domain(format!("radius {delta} must lie in (0, 1)")));
            }
            let r = word.rank();
            let id = UnitaryMatrix::identity(n);
            let (tau, mu, mu2): (Tally, Tally, Tally) = self.sample(0, |rng, acc: &mut (Tally, Tally, Tally)| {
                let g = word_eval(word, &haar_special_tuple(n, r, rng))?;
                acc.0.record(metric.distance(&id, &g)? <= delta);
                let h = haar_special_unitary(n, rng);
                let dh = metric.distance(&id, &h)?;
                acc.1.record(dh <= delta);
                acc.2.record(dh <= 2.0 * delta);
                Ok(())
            })?;
            let eps_w = 1.0 / (256.0 * (word.length() as f64 + 1.0));
            let (tau_lo, tau_hi) = tau.wilson();
            let (mu_lo, mu_hi) = mu.wilson();
            let (mu2_lo, mu2_hi) = mu2.wilson();
            let tau_check = Some(tau_lo <= mu_hi.powf(eps_w));
            let mut report = self
                .report("mc_small_ball", (&tau).into(), tau.trials)
                .param("word", word.to_string())
                .param("n", n)
                .param("delta", delta)
                .param("metric", metric.to_string())
                .derived("tau_hits", tau.hits)
                .derived("mu_hits", mu.hits)
                .derived("mu_2delta_hits", mu2.hits)
                .derived("tau_lo", tau_lo)
                .derived("tau_hi", tau_hi)
                .derived("mu_hat", mu.rate())
                .derived("mu_lo", mu_lo)
                .derived("mu_hi", mu_hi)
                .derived("mu_2delta_hat", mu2.rate())
                .derived("exponent", eps_w)
                .derived("ratio", tau.rate() / mu.rate())
                .with_bound(mu.rate().powf(eps_w));
            let (mut volume_check, mut doubling_check, mut cap_check) = (None, None, None);
            if metric == Metric::Geodesic {
                let (lower, upper) = ball_volume_bounds(n, delta)?;
                let growth = 2f64.powi((n * n - 1) as i32);
                report = report
                    .derived("volume_lower", lower)
                    .derived("volume_upper", upper)
                    .derived("doubling_factor", growth)
                    .derived("doubling_ratio", mu2.rate() / mu.rate());
                volume_check = Some(mu_hi >= lower && mu_lo <= upper);
                doubling_check = Some(mu2_lo <= growth * mu_hi && mu_lo <= mu2_hi);
                if n == 2 {
                    let cap = su2_cap_volume(delta);
                    report = report.derived("cap_oracle", cap);
                    cap_check = Some(mu_lo <= cap && cap <= mu_hi);
                }
            }
            Ok(report.with_pass(all_checks(&[tau_check, volume_check, doubling_check, cap_check])))
        })
    }

    /// `E|tr w|^{2M}` against `2^ℓ (Mℓ)!²`, asserted when `(8Mℓ)^{7/4} <= n`.
    pub fn mc_trace_moment(&self, word: &FreeWord, n: usize, moment: u32) -> Result<Report> {
        timed(|| {
            if moment == 0 || n == 0 {
                return Err(domain(format!("need M >= 1 and n >= 1, got M={moment}, n={n}")));
            }
            let w = word.cyclically_reduce();
            let ell = w.length() as u64;
            let r = w.rank();
            let acc: ComplexWelford = self.sample(0, |rng, acc: &mut ComplexWelford| {
                let t = word_eval(&w, &haar_tuple(n, r, rng))?.trace();
                acc.push_real(t.norm_sqr().powi(moment as i32));
                Ok(())
            })?;
            let log_bound = ell as f64 * 2f64.ln() + 2.0 * ln_factorial(moment as u64 * ell);
            let bound = log_bound.exp();
            let regime = weingarten_regime(moment * ell as u32, n);
            let mean = acc.mean().re;
            let mut report = self
                .report("mc_trace_moment", (&acc).into(), acc.count())
                .param("word", word.to_string())
                .param("n", n)
                .param("M", moment)
                .derived("reduced_word", w.to_string())
                .derived("in_regime", regime)
                .derived("ln_bound", log_bound)
                .with_bound(bound);
            let bound_check = regime.then(|| mean - GATE_SIGMAS * acc.stderr() <= bound);
            let mut oracle_check = None;
            if is_haar_distributed(&w) && moment as usize <= n && moment <= MAX_MOMENT {
                let exact = to_f64(&moment_tr_exact(moment, n)?);
                report = report.derived("exact", exact);
                oracle_check = Some(acc.agrees_with(exact.into()));
            }
            Ok(report.with_pass(all_checks(&[bound_check, oracle_check])))
        })
    }

    /// Empirical mean of a Haar monomial against its Weingarten integral.
    pub fn mc_weingarten_crosscheck(&self, spec: &MonomialSpec, n: usize) -> Result<Report> {
        timed(|| {
            let m = spec.degree();
            if m > MAX_MC_MONOMIAL_DEGREE {
                return Err(LabError::Core(Error::Cap {
                    what: format!("sampled monomial of degree {m}"),
                    cap: MAX_MC_MONOMIAL_DEGREE,
                }));
            }
            let exact = to_f64(&integrate_monomial(spec, n)?);
            let acc: ComplexWelford = self.sample(0, |rng, acc: &mut ComplexWelford| {
                let x = haar_unitary(n, rng);
                let x = x.matrix();
                let mut value = Complex64::new(1.0, 0.0);
                for i in 0..m {
                    value *= x[(spec.f1[i] - 1, spec.f2[i] - 1)] * x[(spec.h1[i] - 1, spec.h2[i] - 1)].conj();
                }
                acc.push(value);
                Ok(())
            })?;
            Ok(self
                .report("mc_weingarten_crosscheck", (&acc).into(), acc.count())
                .param("m", m)
                .param("n", n)
                .param("monomial", format_monomial(spec))
                .derived("exact", exact)
                .with_pass(Some(acc.agrees_with(exact.into()))))
        })
    }
}

/// `f1;f2;h1;h2` with comma-separated 1-based indices.
pub fn format_monomial(spec: &MonomialSpec) -> String {
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    format!("{};{};{};{}", join(&spec.f1), join(&spec.f2), join(&spec.h1), join(&spec.h2))
}

pub fn parse_monomial(text: &str) -> Result<MonomialSpec> {
    let bad = || LabError::Usage(format!("bad monomial {text:?}; expected four ';'-separated index lists like 1,2;1,1;1,2;1,1"));
    let maps: Vec<Vec<usize>> = text
        .split(';')
        .map(|part| {
            let part = part.trim();
            if part.is_empty() {
                return Ok(Vec::new());
            }
            part.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| bad())).collect()
        })
        .collect::<Result<_>>()?;
    let [f1, f2, h1, h2]: [Vec<usize>; 4] = maps.try_into().map_err(|_| bad())?;
    Ok(MonomialSpec::new(f1, f2, h1, h2)?)
}
