//! Streaming estimators that merge exactly, so that the result depends only
//! on the order in which worker partials are combined.

use num_complex::Complex64;

use crate::parallel::Merge;

/// Width of every mean gate and confidence interval, in standard errors.
pub const GATE_SIGMAS: f64 = 5.0;

/// Absolute slack added to mean gates, covering exact zero-variance cases.
pub const GATE_FLOOR: f64 = 1e-12;

/// Welford accumulator for complex samples; real and imaginary parts keep
/// separate second moments.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ComplexWelford {
    n: u64,
    mean: Complex64,
    m2_re: f64,
    m2_im: f64,
}

impl ComplexWelford {
    pub fn push(&mut self, z: Complex64) {
        self.n += 1;
        let delta = z - self.mean;
        self.mean += delta / self.n as f64;
        let after = z - self.mean;
        self.m2_re += delta.re * after.re;
        self.m2_im += delta.im * after.im;
    }

    pub fn push_real(&mut self, x: f64) {
        self.push(Complex64::new(x, 0.0));
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    pub fn mean(&self) -> Complex64 {
        self.mean
    }

    /// Sample variance of the real and imaginary parts, summed.
    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            return f64::NAN;
        }
        (self.m2_re + self.m2_im) / (self.n - 1) as f64
    }

    /// `sqrt((var_re + var_im) / N)`.
    pub fn stderr(&self) -> f64 {
        (self.variance() / self.n as f64).sqrt()
    }

    /// `|mean - target| <= 5 stderr + 1e-12`.
    pub fn agrees_with(&self, target: Complex64) -> bool {
        (self.mean - target).norm() <= GATE_SIGMAS * self.stderr() + GATE_FLOOR
    }
}

impl Merge for ComplexWelford {
    fn merge(&mut self, other: Self) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = other;
            return;
        }
        let (na, nb) = (self.n as f64, other.n as f64);
        let n = na + nb;
        let delta = other.mean - self.mean;
        self.mean += delta * (nb / n);
        self.m2_re += other.m2_re + delta.re * delta.re * na * nb / n;
        self.m2_im += other.m2_im + delta.im * delta.im * na * nb / n;
        self.n += other.n;
    }
}

/// Success counter for a Bernoulli event.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub hits: u64,
    pub trials: u64,
}

impl Tally {
    pub fn record(&mut self, hit: bool) {
        self.trials += 1;
        self.hits += u64::from(hit);
    }

    pub fn rate(&self) -> f64 {
        if self.trials == 0 {
            return f64::NAN;
        }
        self.hits as f64 / self.trials as f64
    }

    /// Binomial standard error of the rate.
    pub fn stderr(&self) -> f64 {
        let p = self.rate();
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }

    /// Wilson score interval at `GATE_SIGMAS`.
    pub fn wilson(&self) -> (f64, f64) {
        wilson(self.hits, self.trials, GATE_SIGMAS)
    }
}

impl Merge for Tally {
    fn merge(&mut self, other: Self) {
        self.hits += other.hits;
        self.trials += other.trials;
    }
}

/// Wilson score interval for `successes` out of `trials` at `z` standard
/// deviations, clamped to `[0, 1]`.
pub fn wilson(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}
