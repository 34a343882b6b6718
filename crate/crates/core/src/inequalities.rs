//! Checks of the dimension and character inequalities. Each function
//! evaluates one instance and reports whether the inequality holds; the
//! polynomial-size quantities are compared exactly, character values in
//! `log₂` space.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::branching::BranchingTable;
use crate::error::{Error, Result};
use crate::partition::{dim_hook_content, dim_weyl, DominantWeight, Partition};
use crate::spectral::{char_value_from_eigenvalues, SpectrumOnCircle};
use crate::weingarten::weingarten_table;
use crate::symgroup::CycleType;
use crate::Rational;

/// `(|Y|² + |Z|²) / (|Y|² + |Y||Z| + |Z|²)` in lowest terms.
pub fn split_exponent(y: usize, z: usize) -> (u32, u32) {
    let p = (y * y + z * z) as u32;
    let q = (y * y + y * z + z * z) as u32;
    let g = p.gcd(&q);
    (p / g, q / g)
}

fn difference_product(xs: &[i64]) -> BigInt {
    let mut acc = BigInt::one();
    for (i, a) in xs.iter().enumerate() {
        for b in &xs[i + 1..] {
            acc *= BigInt::from((a - b).abs());
        }
    }
    acc
}

fn two_pow(e: u64) -> BigInt {
    BigInt::one() << e
}

/// `∏_Y (y₂-y₁) ∏_Z (z₂-z₁) < 2^{|X|} (∏_X (x₂-x₁))^{e}` for `X = Y ⊔ Z`,
/// compared after raising both sides to the denominator of `e`.
pub fn products_lemma_holds(y: &[i64], z: &[i64]) -> Result<bool> {
    let mut x: Vec<i64> = y.iter().chain(z).copied().collect();
    x.sort_unstable();
    if x.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Domain("the sets must be disjoint and without repeats".into()));
    }
    let (p, q) = split_exponent(y.len(), z.len());
    let lhs = difference_product(y) * difference_product(z);
    let rhs = difference_product(&x);
    Ok(Pow::pow(&lhs, q) < two_pow(x.len() as u64 * q as u64) * Pow::pow(&rhs, p))
}

fn staircase_product(k: usize) -> BigInt {
    (1..k).map(|i| Pow::pow(BigInt::from(i), (k - i) as u32)).product()
}

fn integer(q: &Rational) -> BigInt {
    debug_assert!(q.is_integer());
    q.to_integer()
}

/// For `G = U(n)`, `H = U(m) × U(n-m)` and every `H`-dominant `μ` with
/// `μ + δ_H` a permutation of `λ + δ_G`:
/// `A · ρ_{μ,H}(1) <= 2^n (ρ_λ(1) · C)^{e}`. Returns the number of `μ`
/// checked, or the first violating pair.
pub fn dim_ineq_check(lambda: &DominantWeight, m: usize) -> Result<std::result::Result<usize, (DominantWeight, DominantWeight)>> {
    let n = lambda.rank();
    if m == 0 || m >= n {
        return Err(Error::Rank(format!("split {m} must satisfy 1 <= m < {n}")));
    }
    let x: Vec<i64> = lambda.entries().iter().enumerate().map(|(i, e)| e + (n - 1 - i) as i64).collect();
    let (p, q) = split_exponent(m, n - m);
    let a = staircase_product(m) * staircase_product(n - m);
    let c = staircase_product(n);
    let rhs = two_pow(n as u64 * q as u64) * Pow::pow(integer(&dim_weyl::<Rational>(lambda)) * c, p);
    let mut count = 0;
    for subset in combinations(n, m) {
        let y: Vec<i64> = subset.iter().map(|&i| x[i]).collect();
        let z: Vec<i64> = (0..n).filter(|i| !subset.contains(i)).map(|i| x[i]).collect();
        let mu = DominantWeight::new(y.iter().enumerate().map(|(i, v)| v - (m - 1 - i) as i64).collect())?;
        let nu = DominantWeight::new(z.iter().enumerate().map(|(j, v)| v - (n - m - 1 - j) as i64).collect())?;
        let rho_h = integer(&dim_weyl::<Rational>(&mu)) * integer(&dim_weyl::<Rational>(&nu));
        if Pow::pow(&a * rho_h, q) > rhs {
            return Ok(Err((mu, nu)));
        }
        count += 1;
    }
    Ok(Ok(count))
}

/// Increasing `k`-subsets of `0..n`.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `ρ_{μ,n}(1) >= (n/m)^m` for `μ ⊢ m`, `1 <= m <= n`.
pub fn small_rep_bound_holds(mu: &Partition, n: usize) -> Result<bool> {
    let m = mu.weight();
    if m == 0 || m as usize > n {
        return Err(Error::Domain(format!("need 1 <= |μ| <= n, got |μ|={m}, n={n}")));
    }
    let dim = integer(&dim_hook_content::<Rational>(mu, n)?);
    Ok(dim * Pow::pow(BigInt::from(m), m) >= Pow::pow(BigInt::from(n), m))
}

/// Every multiplicity in a restriction is at most the dimension of its factor.
pub fn multiplicity_bound_holds(table: &BranchingTable) -> bool {
    table.entries.iter().all(|((mu, nu), &mult)| {
        Rational::from_integer(BigInt::from(mult)) <= dim_weyl::<Rational>(mu) * dim_weyl::<Rational>(nu)
    })
}

/// `(8m)^{7/4} <= n`.
pub fn weingarten_regime(m: u32, n: usize) -> bool {
    (8 * m as u128).pow(7) <= (n as u128).pow(4)
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeingartenBoundReport {
    pub m: u32,
    pub n: usize,
    pub in_regime: bool,
    /// `|Wg(σ)| <= Wg(e) <= 2/n^m` for every class.
    pub holds: bool,
}

pub fn weingarten_bound_report(m: u32, n: usize) -> Result<WeingartenBoundReport> {
    let wg = weingarten_table(m, n)?;
    let at_id = wg.get(&CycleType::identity(m)).expect("identity class").clone();
    let cap = Rational::new(BigInt::from(2), Pow::pow(BigInt::from(n), m));
    let holds = at_id <= cap && wg.iter().all(|(_, v)| v.abs() <= at_id);
    Ok(WeingartenBoundReport { m, n, in_regime: weingarten_regime(m, n), holds })
}

/// Both sides of a character inequality in `log₂` scale.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Log2Check {
    pub lhs: f64,
    pub rhs: f64,
}

impl Log2Check {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs + 1e-9 * self.rhs.abs().max(1.0)
    }
}

/// `|ρ_λ(t)| <= 2^{2n² log₂ n} ε^{-m(n-m)} ρ_λ(1)^{e}` where `t` has
/// eigenvalues `alphas ⊔ betas` and `ε = min |α_i - β_j|`.
pub fn chi_of_t_check(lambda: &DominantWeight, alphas: &[Complex64], betas: &[Complex64]) -> Result<Log2Check> {
    let (m, n) = (alphas.len(), alphas.len() + betas.len());
    if m == 0 || betas.is_empty() {
        return Err(Error::Domain("both eigenvalue groups must be non-empty".into()));
    }
    let eps = alphas
        .iter()
        .flat_map(|a| betas.iter().map(move |b| (a - b).norm()))
        .fold(f64::INFINITY, f64::min);
    if eps <= 0.0 {
        return Err(Error::Domain("the groups share an eigenvalue".into()));
    }
    let eigs: Vec<Complex64> = alphas.iter().chain(betas).copied().collect();
    let value = char_value_from_eigenvalues(lambda, &eigs)?;
    let (p, q) = split_exponent(m, n - m);
    let nf = n as f64;
    let rhs = 2.0 * nf * nf * nf.log2() - (m * (n - m)) as f64 * eps.log2()
        + p as f64 / q as f64 * log2_big(&integer(&dim_weyl::<Rational>(lambda)));
    Ok(Log2Check { lhs: value.norm().log2(), rhs })
}

/// `log₂ x` for a positive big integer.
pub fn log2_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    (x >> shift).to_f64().unwrap_or(f64::NAN).log2() + shift as f64
}

/// A dominant weight with arbitrary-precision entries, for representations
/// far beyond machine-size highest weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LargeWeight {
    entries: Vec<BigInt>,
}

impl LargeWeight {
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        if entries.is_empty() || entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain("weight must be non-empty and non-increasing".into()));
        }
        Ok(Self { entries })
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// Weyl dimension formula.
    pub fn dim(&self) -> BigInt {
        let n = self.rank();
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for i in 0..n {
            for j in i + 1..n {
                num *= &self.entries[i] - &self.entries[j] + BigInt::from(j - i);
                den *= BigInt::from(j - i);
            }
        }
        num / den
    }

    /// `ρ_λ(g)` for `g` with eigenvalues `e^{2πi p_k/q_k}`, by the
    /// bialternant formula with exponents reduced modulo each `q_k`.
    pub fn char_at_roots_of_unity(&self, roots: &[(u64, u64)]) -> Result<Complex64> {
        let n = self.rank();
        if roots.len() != n {
            return Err(Error::Rank(format!("{} eigenvalues for rank {n}", roots.len())));
        }
        let power = |(p, q): (u64, u64), e: &BigInt| -> Complex64 {
            let r = e.mod_floor(&BigInt::from(q)).to_u64().expect("residue fits");
            let k = ((p as u128 * r as u128) % q as u128) as f64;
            Complex64::from_polar(1.0, TAU * k / q as f64)
        };
        let num = DMatrix::from_fn(n, n, |i, j| power(roots[j], &(&self.entries[i] + BigInt::from(n - 1 - i))));
        let den = DMatrix::from_fn(n, n, |i, j| power(roots[j], &BigInt::from(n - 1 - i)));
        let d = den.determinant();
        if d.norm() < 1e-12 {
            return Err(Error::Domain("eigenvalues must be distinct".into()));
        }
        Ok(num.determinant() / d)
    }
}

fn root_points(roots: &[(u64, u64)]) -> SpectrumOnCircle {
    SpectrumOnCircle::from_angles(roots.iter().map(|&(p, q)| TAU * (p % q) as f64 / q as f64).collect())
}

/// The exponential bound for separated elements: if
/// `ρ(1) > 2^{(16/γ) n² log₂ n}` and `g` is `(γ, ρ(1)^{-γ(1-γ)/n²})`-separated,
/// then `|ρ(g)| <= ρ(1)^{1 - γ(1-γ)/2}`. `None` when the hypotheses fail.
pub fn separated_bound_check(lambda: &LargeWeight, gamma: f64, roots: &[(u64, u64)]) -> Result<Option<Log2Check>> {
    let n = lambda.rank() as f64;
    let log_dim = log2_big(&lambda.dim());
    if log_dim <= 16.0 / gamma * n * n * n.log2() {
        return Ok(None);
    }
    let eps = (-log_dim * gamma * (1.0 - gamma) / (n * n)).exp2();
    if !root_points(roots).is_separated(gamma, eps) {
        return Ok(None);
    }
    let value = lambda.char_at_roots_of_unity(roots)?;
    Ok(Some(Log2Check { lhs: value.norm().log2(), rhs: (1.0 - gamma * (1.0 - gamma) / 2.0) * log_dim }))
}

/// The spread corollary: if `ρ(1) > 2^{(8/β) n² log₂ n}` and `g` is
/// `(β, ρ(1)^{-β(2-β)/(8n²)})`-spread, then `|ρ(g)| <= ρ(1)^{1 - β(2-β)/8}`.
pub fn spread_bound_check(lambda: &LargeWeight, beta: f64, roots: &[(u64, u64)]) -> Result<Option<Log2Check>> {
    let n = lambda.rank() as f64;
    let log_dim = log2_big(&lambda.dim());
    if log_dim <= 8.0 / beta * n * n * n.log2() {
        return Ok(None);
    }
    let eps = (-log_dim * beta * (2.0 - beta) / (8.0 * n * n)).exp2();
    if !root_points(roots).is_spread(beta, eps) {
        return Ok(None);
    }
    let value = lambda.char_at_roots_of_unity(roots)?;
    Ok(Some(Log2Check { lhs: value.norm().log2(), rhs: (1.0 - beta * (2.0 - beta) / 8.0) * log_dim }))
}

/// A weight of rank 2 or 3 whose dimension exceeds `2^bits`.
pub fn large_weight_above(n: usize, bits: u64, jitter: &[u64]) -> Result<LargeWeight> {
    let j = |i: usize| BigInt::from(jitter.get(i).copied().unwrap_or(0));
    match n {
        2 => LargeWeight::new(vec![two_pow(bits + 1) + j(0), BigInt::zero()]),
        3 => {
            let k = two_pow(bits.div_ceil(3) + 1);
            let (a, b) = (j(0), j(1));
            let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
            LargeWeight::new(vec![&k * 2 + hi, &k + lo, BigInt::zero()])
        }
        _ => Err(Error::Rank(format!("large weights are built for n = 2, 3 only, got {n}"))),
    }
}
