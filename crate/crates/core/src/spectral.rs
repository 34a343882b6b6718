//! Spectral predicates on unitary matrices, numerical characters, metrics on
//! `SU(n)` and metric-ball volume bounds.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Pow, ToPrimitive};

use crate::error::{Error, Result};
use crate::partition::DominantWeight;
use crate::unitary::UnitaryMatrix;
use crate::Rational;

/// Slack used when counting eigenvalues inside closed arcs.
pub const ARC_TOLERANCE: f64 = 1e-12;
/// Largest `|λ - λ_n|` accepted by [`char_value`].
pub const MAX_CHAR_WEIGHT: i64 = 60;

/// Eigenvalue angles in `(-π, π]`, sorted increasingly.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumOnCircle {
    angles: Vec<f64>,
}

impl SpectrumOnCircle {
    pub fn of(g: &UnitaryMatrix) -> Self {
        let (_, t) = g.matrix().clone().schur().unpack();
        Self::from_points(t.diagonal().iter().copied())
    }

    pub fn from_points(points: impl IntoIterator<Item = Complex64>) -> Self {
        Self::from_angles(points.into_iter().map(|z| z.arg()).collect())
    }

    /// Angles are wrapped into `(-π, π]`.
    pub fn from_angles(mut angles: Vec<f64>) -> Self {
        for a in &mut angles {
            *a = wrap_angle(*a);
        }
        angles.sort_by(f64::total_cmp);
        Self { angles }
    }

    pub fn n(&self) -> usize {
        self.angles.len()
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn points(&self) -> Vec<Complex64> {
        self.angles.iter().map(|&t| Complex64::from_polar(1.0, t)).collect()
    }

    /// Largest number of eigenvalues in a closed arc whose endpoints are at
    /// chordal distance `2ε`; the whole circle once `ε >= 1`.
    pub fn max_in_arc(&self, eps: f64) -> usize {
        let n = self.n();
        if eps >= 1.0 {
            return n;
        }
        let width = 2.0 * eps.asin() + ARC_TOLERANCE;
        (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| (self.angles[j] - self.angles[i]).rem_euclid(2.0 * PI) <= width)
                    .count()
            })
            .max()
            .unwrap_or(0)
    }

    pub fn is_spread(&self, beta: f64, eps: f64) -> bool {
        self.max_in_arc(eps) as f64 <= (1.0 - beta) * self.n() as f64 + 1e-9
    }

    /// Sizes of the components of the graph linking eigenvalues at chordal
    /// distance `< ε`.
    pub fn cluster_sizes(&self, eps: f64) -> Vec<usize> {
        let pts = self.points();
        let n = pts.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for i in 0..n {
            for j in i + 1..n {
                if (pts[i] - pts[j]).norm() < eps {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        let mut sizes = vec![0; n];
        for i in 0..n {
            let root = find(&mut parent, i);
            sizes[root] += 1;
        }
        sizes.retain(|&s| s > 0);
        sizes
    }

    /// Whether some union of clusters has size in `[⌈γn⌉, n - ⌈γn⌉]`.
    pub fn is_separated(&self, gamma: f64, eps: f64) -> bool {
        let n = self.n();
        let lo = (gamma * n as f64 - 1e-9).ceil().max(0.0) as usize;
        if 2 * lo > n {
            return false;
        }
        let mut reachable = vec![false; n + 1];
        reachable[0] = true;
        for s in self.cluster_sizes(eps) {
            for total in (s..=n).rev() {
                reachable[total] |= reachable[total - s];
            }
        }
        (lo.max(1)..=n - lo.max(1)).any(|t| reachable[t])
    }
}

fn wrap_angle(a: f64) -> f64 {
    let r = (a + PI).rem_euclid(2.0 * PI) - PI;
    if r <= -PI {
        r + 2.0 * PI
    } else {
        r
    }
}

/// At most `(1-β)n` eigenvalues of `g` lie in any arc of chordal diameter `2ε`.
pub fn is_spread(g: &UnitaryMatrix, beta: f64, eps: f64) -> bool {
    SpectrumOnCircle::of(g).is_spread(beta, eps)
}

/// The eigenvalues split into two sides of size at least `γn` at chordal
/// distance at least `ε` from each other.
pub fn is_separated(g: &UnitaryMatrix, gamma: f64, eps: f64) -> bool {
    SpectrumOnCircle::of(g).is_separated(gamma, eps)
}

/// For `(2β, ε)`-spread `g`, returns whether `g` is `(β, ε/n)`-separated.
pub fn spread_implies_separated_check(g: &UnitaryMatrix, beta: f64, eps: f64) -> Result<bool> {
    let spectrum = SpectrumOnCircle::of(g);
    if !spectrum.is_spread(2.0 * beta, eps) {
        return Err(Error::Precondition(format!("matrix is not ({}, {eps})-spread", 2.0 * beta)));
    }
    Ok(spectrum.is_separated(beta, eps / spectrum.n() as f64))
}

/// `‖gv - ⟨gv, v⟩v‖` for a unit vector `v`.
pub fn approx_eigenvector_defect(g: &UnitaryMatrix, v: &DVector<Complex64>) -> Result<f64> {
    if v.len() != g.n() {
        return Err(Error::SizeMismatch(format!("vector of length {} for n = {}", v.len(), g.n())));
    }
    let norm = v.norm();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::Norm(norm));
    }
    let gv = g.matrix() * v;
    let coeff = v.dotc(&gv);
    Ok((gv - v * coeff).norm())
}

/// `ρ_λ(g) = det(g)^{λ_n} s_{λ - λ_n}(g)`, with the Schur polynomial from
/// the Jacobi–Trudi determinant and `h_k` from the power sums `tr(g^k)`.
pub fn char_value(lambda: &DominantWeight, g: &UnitaryMatrix) -> Result<Complex64> {
    check_char_args(lambda, g.n())?;
    let k_max = char_degree_needed(lambda);
    let mut power_sums = Vec::with_capacity(k_max);
    let mut pow = g.matrix().clone();
    for k in 1..=k_max {
        if k > 1 {
            pow = &pow * g.matrix();
        }
        power_sums.push(pow.trace());
    }
    let det = if lambda.last() == 0 { Complex64::one() } else { g.det() };
    Ok(char_from_power_sums(lambda, &power_sums, det))
}

/// [`char_value`] for the unitary with the given eigenvalues.
pub fn char_value_from_eigenvalues(lambda: &DominantWeight, eigenvalues: &[Complex64]) -> Result<Complex64> {
    check_char_args(lambda, eigenvalues.len())?;
    let k_max = char_degree_needed(lambda);
    let mut power_sums = vec![Complex64::new(0.0, 0.0); k_max];
    for &z in eigenvalues {
        let mut zk = Complex64::one();
        for p in power_sums.iter_mut() {
            zk *= z;
            *p += zk;
        }
    }
    let det = eigenvalues.iter().product();
    Ok(char_from_power_sums(lambda, &power_sums, det))
}

fn check_char_args(lambda: &DominantWeight, n: usize) -> Result<()> {
    if lambda.rank() != n {
        return Err(Error::Rank(format!("weight of rank {} at a {n}x{n} matrix", lambda.rank())));
    }
    let size = lambda.total() - n as i64 * lambda.last();
    if size > MAX_CHAR_WEIGHT {
        return Err(Error::Cap { what: format!("character of shifted weight size {size}"), cap: MAX_CHAR_WEIGHT as usize });
    }
    Ok(())
}

fn char_degree_needed(lambda: &DominantWeight) -> usize {
    let shifted = lambda.shifted(-lambda.last());
    let len = shifted.entries().iter().filter(|&&e| e > 0).count();
    (shifted.entries()[0] as usize + len).saturating_sub(1)
}

fn char_from_power_sums(lambda: &DominantWeight, p: &[Complex64], det: Complex64) -> Complex64 {
    let shifted: Vec<i64> = lambda.entries().iter().map(|e| e - lambda.last()).filter(|&e| e > 0).collect();
    let h = complete_from_power_sums(p);
    let len = shifted.len();
    let schur = if len == 0 {
        Complex64::one()
    } else {
        let jt = DMatrix::from_fn(len, len, |i, j| {
            let idx = shifted[i] - i as i64 + j as i64;
            if idx < 0 {
                Complex64::new(0.0, 0.0)
            } else {
                h[idx as usize]
            }
        });
        jt.lu().determinant()
    };
    let twist = if lambda.last() == 0 { Complex64::one() } else { det.powi(lambda.last() as i32) };
    twist * schur
}

/// `h_0, ..., h_K` from `p_1, ..., p_K` by `k h_k = Σ_{i=1}^k p_i h_{k-i}`.
pub fn complete_from_power_sums(p: &[Complex64]) -> Vec<Complex64> {
    let mut h = vec![Complex64::one()];
    for k in 1..=p.len() {
        let s: Complex64 = (1..=k).map(|i| p[i - 1] * h[k - i]).sum();
        h.push(s / k as f64);
    }
    h
}

/// `β_n = 4π² ⌊n/2⌋⌈n/2⌉ / n`.
pub fn beta_n(n: usize) -> f64 {
    4.0 * PI * PI * ((n / 2) * n.div_ceil(2)) as f64 / n as f64
}

fn check_same_size(g: &UnitaryMatrix, h: &UnitaryMatrix) -> Result<()> {
    if g.n() != h.n() {
        return Err(Error::SizeMismatch(format!("{} vs {}", g.n(), h.n())));
    }
    Ok(())
}

/// `‖g - h‖_HS / √β_n`.
pub fn hs_distance(g: &UnitaryMatrix, h: &UnitaryMatrix) -> Result<f64> {
    check_same_size(g, h)?;
    Ok((g.matrix() - h.matrix()).norm() / beta_n(g.n()).sqrt())
}

/// `‖log(g⁻¹h)‖_HS / √β_n` with the principal logarithm.
pub fn geodesic_distance(g: &UnitaryMatrix, h: &UnitaryMatrix) -> Result<f64> {
    check_same_size(g, h)?;
    let rel = UnitaryMatrix::trusted(g.matrix().adjoint() * h.matrix());
    let spectrum = SpectrumOnCircle::of(&rel);
    Ok(spectrum.angles().iter().map(|t| t * t).sum::<f64>().sqrt() / beta_n(g.n()).sqrt())
}

/// Both distances between two group elements.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricReport {
    pub hs: f64,
    pub geodesic: f64,
}

impl MetricReport {
    pub fn between(g: &UnitaryMatrix, h: &UnitaryMatrix) -> Result<Self> {
        Ok(Self { hs: hs_distance(g, h)?, geodesic: geodesic_distance(g, h)? })
    }

    /// `hs <= geodesic <= (π/2) hs`, up to `tol`.
    pub fn is_sandwiched(&self, tol: f64) -> bool {
        self.hs <= self.geodesic + tol && self.geodesic <= PI / 2.0 * self.hs + tol
    }
}

/// `(δ^{n²-1}, 6^{n²} δ^{n²-1})`, bounds on the Haar measure of a
/// `δ`-ball in `SU(n)`.
pub fn ball_volume_bounds(n: usize, delta: f64) -> Result<(f64, f64)> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain(format!("radius {delta} must lie in (0, 1)")));
    }
    if n < 2 {
        return Err(Error::Domain(format!("ball volumes need n >= 2, got {n}")));
    }
    let d = (n * n) as f64;
    let lower = ((d - 1.0) * delta.ln()).exp();
    let upper = (d * 6f64.ln() + (d - 1.0) * delta.ln()).exp();
    Ok((lower, upper))
}

/// `rational · π^{pi_exponent} · √sqrt_of`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicConstant {
    pub rational: Rational,
    pub pi_exponent: i64,
    pub sqrt_of: Rational,
}

impl SymbolicConstant {
    pub fn value(&self) -> f64 {
        let r = self.rational.to_f64().unwrap_or(f64::NAN);
        let s = self.sqrt_of.to_f64().unwrap_or(f64::NAN).sqrt();
        r * PI.powi(self.pi_exponent as i32) * s
    }
}

impl fmt::Display for SymbolicConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·π^{}", self.rational, self.pi_exponent)?;
        if !self.sqrt_of.is_one() {
            write!(f, "·√({})", self.sqrt_of)?;
        }
        Ok(())
    }
}

/// `(α_n, β_n)` with `β_n = 4π²⌊n/2⌋⌈n/2⌉/n` and
/// `α_n = β_n^{(n²-1)/2} ∏_{k<n} k! / ((2π)^{(n²+n-2)/2} √n)`.
pub fn su_n_normalization(n: usize) -> Result<(SymbolicConstant, SymbolicConstant)> {
    if n < 2 {
        return Err(Error::Domain(format!("normalization needs n >= 2, got {n}")));
    }
    let b = Rational::new(BigInt::from(4 * (n / 2) * n.div_ceil(2)), BigInt::from(n));
    let dim = n * n - 1;
    let k = (n * n + n - 2) / 2;
    let factorials: BigInt = (1..n).map(|j| (1..=j).map(BigInt::from).product::<BigInt>()).product();
    let rational = Pow::pow(&b, dim as u32 / 2) * Rational::from_integer(factorials)
        / Rational::from_integer(BigInt::from(2).pow(k as u32));
    let sqrt_of = if n % 2 == 0 { b.clone() } else { Rational::one() } / Rational::from_integer(BigInt::from(n));
    let alpha = SymbolicConstant { rational, pi_exponent: dim as i64 - k as i64, sqrt_of };
    let beta = SymbolicConstant { rational: b, pi_exponent: 2, sqrt_of: Rational::one() };
    Ok((alpha, beta))
}
