//! Irreducible characters of `S_m` and class functions on `S_m`.
//!
//! Everything is indexed by conjugacy class (cycle type); sums over `S_m`
//! are rewritten class-wise with class sizes.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::partition::{parse_parts, sym_dim, Partition};
use crate::scalar::{factorial, pow_int, Scalar};

/// Largest degree accepted by [`mn_character`].
pub const MAX_CHARACTER_DEGREE: u32 = 16;

/// A conjugacy class of `S_m`, given by the multiset of cycle lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    cycles: Partition,
}

impl CycleType {
    pub fn new(cycles: Partition) -> Self {
        Self { cycles }
    }

    pub fn identity(m: u32) -> Self {
        Self::new(Partition::column(m))
    }

    /// Cycle type of a permutation given in one-line notation on `0..m`.
    pub fn of_permutation(perm: &[usize]) -> Self {
        let mut seen = vec![false; perm.len()];
        let mut lengths = Vec::new();
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(Partition::from_sorted(lengths))
    }

    pub fn degree(&self) -> u32 {
        self.cycles.weight()
    }

    pub fn cycles(&self) -> &Partition {
        &self.cycles
    }

    /// Number of cycles, fixed points included.
    pub fn num_cycles(&self) -> usize {
        self.cycles.length()
    }

    /// `(-1)^{m - #cycles}`.
    pub fn sign(&self) -> i64 {
        if (self.degree() as usize - self.num_cycles()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All cycle types of `S_m`.
    pub fn all_of(m: u32) -> Vec<CycleType> {
        Partition::all_of(m).into_iter().map(CycleType::new).collect()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.cycles.to_string();
        write!(f, "({})", &body[1..body.len() - 1])
    }
}

impl FromStr for CycleType {
    type Err = Error;

    /// Parses `"(3,1,1)"`.
    fn from_str(s: &str) -> Result<Self> {
        Ok(Self::new(parse_parts(s, '(', ')')?))
    }
}

/// `m! / ∏_j (j^{a_j} a_j!)`.
pub fn class_size<T: Scalar>(c: &CycleType) -> T {
    let centralizer = c
        .cycles
        .multiplicities()
        .iter()
        .enumerate()
        .fold(T::one(), |acc, (j, &a)| {
            acc * pow_int(&T::from_int(j as i64 + 1), a) * factorial::<T>(a)
        });
    factorial::<T>(c.degree()) / centralizer
}

type CharacterMemo = RwLock<HashMap<(Partition, Partition), i64>>;

fn character_memo() -> &'static CharacterMemo {
    static MEMO: OnceLock<CharacterMemo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Removes every rim hook of length `k` from `lambda`, yielding the
/// remaining shapes with their height signs.
fn remove_rim_hooks(lambda: &Partition, k: u32) -> Vec<(Partition, i64)> {
    let len = lambda.length();
    // beta-numbers λ_i + (len - 1 - i), strictly decreasing
    let beta: Vec<i64> = (0..len)
        .map(|i| i64::from(lambda.part(i)) + (len - 1 - i) as i64)
        .collect();
    let k = i64::from(k);
    let mut out = Vec::new();
    for (idx, &b) in beta.iter().enumerate() {
        let target = b - k;
        if target < 0 || beta.contains(&target) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.clone();
        next[idx] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let parts = next
            .iter()
            .enumerate()
            .map(|(i, &x)| (x - (len - 1 - i) as i64) as u32)
            .collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        out.push((Partition::from_sorted(parts), sign));
    }
    out
}

fn mn_recursive(lambda: &Partition, cycles: &[u32]) -> i64 {
    if cycles.is_empty() {
        return i64::from(lambda.is_empty());
    }
    let key = (lambda.clone(), Partition::from_sorted(cycles.to_vec()));
    if let Some(&v) = character_memo().read().expect("character memo poisoned").get(&key) {
        return v;
    }
    let value = remove_rim_hooks(lambda, cycles[0])
        .iter()
        .map(|(rest, sign)| sign * mn_recursive(rest, &cycles[1..]))
        .sum();
    character_memo().write().expect("character memo poisoned").insert(key, value);
    value
}

/// `χ_λ(σ)` for `σ` of cycle type `c`, by the Murnaghan–Nakayama rule.
pub fn mn_character<T: Scalar>(lambda: &Partition, c: &CycleType) -> Result<T> {
    if lambda.weight() != c.degree() {
        return Err(Error::DegreeMismatch { left: lambda.weight(), right: c.degree() });
    }
    if c.degree() > MAX_CHARACTER_DEGREE {
        return Err(Error::Cap { what: format!("S_{} character", c.degree()), cap: MAX_CHARACTER_DEGREE as usize });
    }
    Ok(T::from_int(mn_recursive(lambda, c.cycles.parts())))
}

/// A class function on `S_m`, stored by cycle type.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassFunction<T> {
    degree: u32,
    values: BTreeMap<CycleType, T>,
}

impl<T: Scalar> ClassFunction<T> {
    pub fn from_fn(degree: u32, mut f: impl FnMut(&CycleType) -> T) -> Self {
        let values = CycleType::all_of(degree).into_iter().map(|c| {
            let v = f(&c);
            (c, v)
        });
        Self { degree, values: values.collect() }
    }

    /// Builds a class function from explicit values; every class must be present.
    pub fn from_values(degree: u32, values: BTreeMap<CycleType, T>) -> Result<Self> {
        let classes = CycleType::all_of(degree);
        if values.len() != classes.len() || classes.iter().any(|c| !values.contains_key(c)) {
            return Err(Error::Domain(format!("class function on S_{degree} must cover every class")));
        }
        Ok(Self { degree, values })
    }

    pub fn constant(degree: u32, v: T) -> Self {
        Self::from_fn(degree, |_| v.clone())
    }

    /// Indicator of the identity.
    pub fn delta_identity(degree: u32) -> Self {
        let id = CycleType::identity(degree);
        Self::from_fn(degree, |c| if *c == id { T::one() } else { T::zero() })
    }

    /// `σ ↦ n^{cyc(σ)}`.
    pub fn cycle_power(degree: u32, n: usize) -> Self {
        let base = T::from_int(n as i64);
        Self::from_fn(degree, |c| pow_int(&base, c.num_cycles() as u32))
    }

    pub fn irreducible(lambda: &Partition) -> Result<Self> {
        let degree = lambda.weight();
        let mut err = None;
        let f = Self::from_fn(degree, |c| {
            mn_character(lambda, c).unwrap_or_else(|e| {
                err = Some(e);
                T::zero()
            })
        });
        err.map_or(Ok(f), Err)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn get(&self, c: &CycleType) -> Option<&T> {
        self.values.get(c)
    }

    pub fn at_identity(&self) -> &T {
        &self.values[&CycleType::identity(self.degree)]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CycleType, &T)> {
        self.values.iter()
    }

    /// Coefficients `f̂_λ = ⟨f, χ_λ⟩` of the expansion `f = Σ f̂_λ χ_λ`.
    pub fn character_coefficients(&self) -> Result<BTreeMap<Partition, T>> {
        let order = factorial::<T>(self.degree);
        Partition::all_of(self.degree)
            .into_iter()
            .map(|lambda| {
                let mut acc = T::zero();
                for (c, v) in &self.values {
                    let chi: T = mn_character(&lambda, c)?;
                    acc = acc + class_size::<T>(c) * v.clone() * chi;
                }
                Ok((lambda, acc / order.clone()))
            })
            .collect()
    }
}

/// Group-algebra convolution `(f * g)(π) = Σ_σ f(σ) g(σ⁻¹π)`, computed in
/// the character basis where it is diagonal with factor `m!/χ_λ(1)`.
pub fn convolve<T: Scalar>(f: &ClassFunction<T>, g: &ClassFunction<T>) -> Result<ClassFunction<T>> {
    if f.degree != g.degree {
        return Err(Error::DegreeMismatch { left: f.degree, right: g.degree });
    }
    let m = f.degree;
    let order = factorial::<T>(m);
    let fh = f.character_coefficients()?;
    let gh = g.character_coefficients()?;
    let weights: Vec<(Partition, T)> = fh
        .into_iter()
        .map(|(lambda, a)| {
            let b = gh[&lambda].clone();
            let w = a * b * order.clone() / sym_dim::<T>(&lambda);
            (lambda, w)
        })
        .collect();
    let mut out = BTreeMap::new();
    for c in CycleType::all_of(m) {
        let mut acc = T::zero();
        for (lambda, w) in &weights {
            if !w.is_zero() {
                acc = acc + w.clone() * mn_character::<T>(lambda, &c)?;
            }
        }
        out.insert(c, acc);
    }
    Ok(ClassFunction { degree: m, values: out })
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn ct(cycles: &[u32]) -> CycleType {
        CycleType::new(p(cycles))
    }

    fn chi(lambda: &[u32], c: &[u32]) -> i64 {
        mn_character::<f64>(&p(lambda), &ct(c)).unwrap() as i64
    }

    fn q(v: i64) -> BigRational {
        BigRational::from_int(v)
    }

    /// All permutations of 0..m in one-line notation.
    fn permutations(m: usize) -> Vec<Vec<usize>> {
        fn go(m: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == m {
                out.push(cur.clone());
                return;
            }
            for i in 0..m {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    go(m, cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(m, &mut Vec::new(), &mut vec![false; m], &mut out);
        out
    }

    #[test]
    fn trivial_and_sign_characters() {
        for m in 1..=7 {
            for c in CycleType::all_of(m) {
                assert_eq!(mn_character::<BigRational>(&Partition::row(m), &c).unwrap(), q(1));
                assert_eq!(mn_character::<BigRational>(&Partition::column(m), &c).unwrap(), q(c.sign()));
            }
        }
    }

    #[test]
    fn s3_table() {
        assert_eq!(chi(&[2, 1], &[3]), -1);
        assert_eq!(chi(&[2, 1], &[2, 1]), 0);
        assert_eq!(chi(&[2, 1], &[1, 1, 1]), 2);
    }

    #[test]
    fn identity_value_is_degree() {
        for m in 1..=8 {
            for lambda in Partition::all_of(m) {
                let v: BigRational = mn_character(&lambda, &CycleType::identity(m)).unwrap();
                assert_eq!(v, sym_dim::<BigRational>(&lambda));
            }
        }
    }

    #[test]
    fn degree_mismatch_and_cap() {
        assert!(matches!(
            mn_character::<f64>(&p(&[2, 1]), &ct(&[2])),
            Err(Error::DegreeMismatch { left: 3, right: 2 })
        ));
        assert!(matches!(mn_character::<f64>(&Partition::row(17), &ct(&[17])), Err(Error::Cap { .. })));
    }

    #[test]
    fn row_orthogonality() {
        for m in 1..=7 {
            let parts = Partition::all_of(m);
            let order: BigRational = factorial(m);
            for a in &parts {
                for b in &parts {
                    let s = CycleType::all_of(m).iter().fold(q(0), |acc, c| {
                        acc + class_size::<BigRational>(c)
                            * mn_character::<BigRational>(a, c).unwrap()
                            * mn_character::<BigRational>(b, c).unwrap()
                    });
                    let expected = if a == b { order.clone() } else { q(0) };
                    assert_eq!(s, expected, "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn class_sizes() {
        assert_eq!(class_size::<BigRational>(&CycleType::identity(5)), q(1));
        assert_eq!(class_size::<BigRational>(&ct(&[2])), q(1));
        assert_eq!(class_size::<BigRational>(&ct(&[3])), q(2));
        for m in 1..=6 {
            let mut counts: BTreeMap<CycleType, i64> = BTreeMap::new();
            for perm in permutations(m) {
                *counts.entry(CycleType::of_permutation(&perm)).or_default() += 1;
            }
            for (c, n) in counts {
                assert_eq!(class_size::<BigRational>(&c), q(n));
            }
        }
    }

    #[test]
    fn cycle_type_text() {
        assert_eq!(ct(&[3, 1, 1]).to_string(), "(3,1,1)");
        assert_eq!("(3, 1,1)".parse::<CycleType>().unwrap(), ct(&[3, 1, 1]));
        assert!("[3,1]".parse::<CycleType>().is_err());
    }

    /// Direct O((m!)^2) convolution over explicit permutations.
    fn brute_convolve(f: &ClassFunction<BigRational>, g: &ClassFunction<BigRational>) -> ClassFunction<BigRational> {
        let m = f.degree() as usize;
        let perms = permutations(m);
        let inverse = |s: &[usize]| {
            let mut inv = vec![0; s.len()];
            for (i, &v) in s.iter().enumerate() {
                inv[v] = i;
            }
            inv
        };
        ClassFunction::from_fn(m as u32, |c| {
            let pi = perms.iter().find(|s| CycleType::of_permutation(s) == *c).unwrap();
            perms.iter().fold(q(0), |acc, sigma| {
                let sinv = inverse(sigma);
                let rest: Vec<usize> = (0..m).map(|i| sinv[pi[i]]).collect();
                acc + f.get(&CycleType::of_permutation(sigma)).unwrap().clone()
                    * g.get(&CycleType::of_permutation(&rest)).unwrap().clone()
            })
        })
    }

    #[test]
    fn convolution_examples() {
        let g = ClassFunction::<BigRational>::from_fn(4, |c| q(c.num_cycles() as i64 * 3 - 2));
        let delta = ClassFunction::delta_identity(4);
        assert_eq!(convolve(&delta, &g).unwrap(), g);

        let one = ClassFunction::<BigRational>::constant(2, q(1));
        assert_eq!(convolve(&one, &one).unwrap(), ClassFunction::constant(2, q(2)));

        for m in 1..=4 {
            let f = ClassFunction::<BigRational>::from_fn(m, |c| q(c.cycles().part(0) as i64 - 1));
            let h = ClassFunction::<BigRational>::cycle_power(m, 3);
            assert_eq!(convolve(&f, &h).unwrap(), brute_convolve(&f, &h));
        }
        assert!(convolve(&one, &delta).is_err());
    }

    #[test]
    fn schur_weyl_degree_identity() {
        for m in 1..=6 {
            for n in 1..=6usize {
                let total = Partition::all_of(m)
                    .iter()
                    .filter(|l| l.length() <= n)
                    .fold(q(0), |acc, l| {
                        acc + sym_dim::<BigRational>(l)
                            * crate::partition::dim_hook_content::<BigRational>(l, n).unwrap()
                    });
                assert_eq!(total, q((n as i64).pow(m)));
            }
        }
    }
}
