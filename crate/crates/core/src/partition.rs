//! Partitions, dominant weights of `U(n)` and the dimension formulas.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{factorial, Scalar};

/// A partition in canonical form: weakly decreasing positive parts.
///
/// Trailing zeros are stripped on construction, so `(2,1,0)` and `(2,1)`
/// are the same value.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("parts {parts:?} are not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Self { parts })
    }

    /// Builds a partition from parts already known to be weakly decreasing.
    pub(crate) fn from_sorted(mut parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Self { parts }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// The one-row partition `(m)`.
    pub fn row(m: u32) -> Self {
        Self::from_sorted(vec![m])
    }

    /// The one-column partition `(1^m)`.
    pub fn column(m: u32) -> Self {
        Self::from_sorted(vec![1; m as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let cols = (1..=width)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition::from_sorted(cols)
    }

    /// Whether the Young diagram of `other` fits inside this one.
    pub fn contains(&self, other: &Partition) -> bool {
        other.length() <= self.length() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// Cells `(i, j)`, 1-based, in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p as usize).map(move |j| (i + 1, j)))
    }

    /// Multiplicities `a_j` of each part size `j = 1..=max part`.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut counts = vec![0u32; self.part(0) as usize];
        for &p in &self.parts {
            counts[p as usize - 1] += 1;
        }
        counts
    }

    /// All partitions of `m`, in reverse lexicographic order.
    pub fn all_of(m: u32) -> Vec<Partition> {
        Self::bounded(m, m, usize::MAX)
    }

    /// Partitions of `m` with every part at most `max_part` and at most
    /// `max_len` parts.
    pub fn bounded(m: u32, max_part: u32, max_len: usize) -> Vec<Partition> {
        fn go(rest: u32, cap: u32, max_len: usize, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition::from_sorted(prefix.clone()));
                return;
            }
            if prefix.len() == max_len {
                return;
            }
            for p in (1..=cap.min(rest)).rev() {
                prefix.push(p);
                go(rest - p, p, max_len, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(m, max_part, max_len, &mut Vec::new(), &mut out);
        out
    }

    /// Every partition whose diagram fits inside `self`, including the empty one.
    pub fn subdiagrams(&self) -> Vec<Partition> {
        fn go(outer: &[u32], i: usize, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if i == outer.len() {
                out.push(Partition::from_sorted(prefix.clone()));
                return;
            }
            for p in 0..=cap.min(outer[i]) {
                prefix.push(p);
                go(outer, i + 1, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(&self.parts, 0, self.part(0), &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

fn parse_list<T: FromStr>(text: &str, open: char, close: char) -> Result<Vec<T>> {
    let inner = text
        .trim()
        .strip_prefix(open)
        .and_then(|s| s.strip_suffix(close))
        .ok_or_else(|| Error::Parse(format!("expected {open}...{close}, got {text:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<T>()
                .map_err(|_| Error::Parse(format!("bad entry {tok:?} in {text:?}")))
        })
        .collect()
}

pub(crate) fn parse_parts(text: &str, open: char, close: char) -> Result<Partition> {
    Partition::new(parse_list(text, open, close)?)
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"[2,1]"`.
    fn from_str(s: &str) -> Result<Self> {
        parse_parts(s, '[', ']')
    }
}

/// A dominant weight of `U(n)`: a weakly decreasing integer vector of length `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominantWeight {
    entries: Vec<i64>,
}

impl DominantWeight {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Rank("a dominant weight needs rank n >= 1".into()));
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("weight {entries:?} is not dominant")));
        }
        Ok(Self { entries })
    }

    pub(crate) fn from_sorted(entries: Vec<i64>) -> Self {
        debug_assert!(!entries.is_empty() && entries.windows(2).all(|w| w[0] >= w[1]));
        Self { entries }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_sorted(vec![0; n])
    }

    /// The constant weight `(c, ..., c)`, i.e. `det^c`.
    pub fn constant(n: usize, c: i64) -> Self {
        Self::from_sorted(vec![c; n])
    }

    /// The fundamental weight `(1^m, 0^{n-m})`.
    pub fn fundamental(n: usize, m: usize) -> Self {
        Self::from_sorted((0..n).map(|i| i64::from(i < m)).collect())
    }

    pub fn from_partition(lambda: &Partition, n: usize) -> Result<Self> {
        if lambda.length() > n {
            return Err(Error::Rank(format!("partition {lambda} has more than {n} parts")));
        }
        Ok(Self::from_sorted((0..n).map(|i| i64::from(lambda.part(i))).collect()))
    }

    /// Parses a weight list and pads it to rank `n` by inserting zeros
    /// between the non-negative and the negative entries, so `[1,-1]` at
    /// `n = 3` becomes `(1,0,-1)`.
    pub fn parse_padded(text: &str, n: usize) -> Result<Self> {
        let mut entries: Vec<i64> = parse_list(text, '[', ']')?;
        if entries.len() > n {
            return Err(Error::Rank(format!("{text} has more than {n} entries")));
        }
        let split = entries.iter().position(|&e| e < 0).unwrap_or(entries.len());
        let pad = n - entries.len();
        entries.splice(split..split, std::iter::repeat_n(0, pad));
        Self::new(entries)
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn last(&self) -> i64 {
        self.entries[self.entries.len() - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn total(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// Adds `c` to every entry (tensoring with `det^c`).
    pub fn shifted(&self, c: i64) -> Self {
        Self::from_sorted(self.entries.iter().map(|e| e + c).collect())
    }

    pub fn to_partition(&self) -> Option<Partition> {
        if self.last() < 0 {
            return None;
        }
        Some(Partition::from_sorted(self.entries.iter().map(|&e| e as u32).collect()))
    }

    /// Coefficients `a_i` with `λ = Σ a_i ϖ_i`: `a_i = λ_i - λ_{i+1}`, `a_n = λ_n`.
    pub fn fundamental_coefficients(&self) -> Vec<i64> {
        let n = self.rank();
        (0..n)
            .map(|i| if i + 1 < n { self.entries[i] - self.entries[i + 1] } else { self.entries[i] })
            .collect()
    }

    /// Entrywise sum of two weights of the same rank.
    pub fn add(&self, other: &DominantWeight) -> Result<DominantWeight> {
        if self.rank() != other.rank() {
            return Err(Error::Rank(format!("ranks {} and {} differ", self.rank(), other.rank())));
        }
        Ok(Self::from_sorted(self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect()))
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]@n={}", self.rank())
    }
}

impl FromStr for DominantWeight {
    type Err = Error;

    /// Parses `"[2,1,0,-1]@n=4"`; the rank suffix must match the entry count.
    fn from_str(s: &str) -> Result<Self> {
        let (list, rank) = s
            .trim()
            .split_once("@n=")
            .ok_or_else(|| Error::Parse(format!("expected [..]@n=<rank>, got {s:?}")))?;
        let n: usize = rank
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
        let entries: Vec<i64> = parse_list(list, '[', ']')?;
        if entries.len() != n {
            return Err(Error::Parse(format!("{s:?} has {} entries, expected {n}", entries.len())));
        }
        Self::new(entries)
    }
}

/// Hook length of every cell, keyed by 1-based `(row, column)`.
pub fn hook_lengths(lambda: &Partition) -> BTreeMap<(usize, usize), u32> {
    let conj = lambda.conjugate();
    lambda
        .cells()
        .map(|(i, j)| {
            let arm = lambda.part(i - 1) as usize - j;
            let leg = conj.part(j - 1) as usize - i;
            ((i, j), (arm + leg + 1) as u32)
        })
        .collect()
}

fn hook_product<T: Scalar>(lambda: &Partition) -> T {
    hook_lengths(lambda)
        .values()
        .fold(T::one(), |acc, &h| acc * T::from_int(i64::from(h)))
}

/// Degree `χ_λ(1)` of the irreducible character of `S_m` (hook-length formula).
pub fn sym_dim<T: Scalar>(lambda: &Partition) -> T {
    factorial::<T>(lambda.weight()) / hook_product(lambda)
}

/// `ρ_{λ,n}(1)` via the hook-content formula.
pub fn dim_hook_content<T: Scalar>(lambda: &Partition, n: usize) -> Result<T> {
    if lambda.length() > n {
        return Err(Error::Rank(format!("partition {lambda} has more than {n} parts")));
    }
    let contents = lambda
        .cells()
        .fold(T::one(), |acc, (i, j)| acc * T::from_int(n as i64 + j as i64 - i as i64));
    Ok(contents / hook_product(lambda))
}

/// `ρ_λ(1)` via the Weyl dimension formula; valid for any dominant weight.
pub fn dim_weyl<T: Scalar>(lambda: &DominantWeight) -> T {
    let e = lambda.entries();
    let n = e.len();
    let mut num = T::one();
    let mut den = T::one();
    for i in 0..n {
        for j in i + 1..n {
            num = num * T::from_int(e[i] - e[j] + (j - i) as i64);
            den = den * T::from_int((j - i) as i64);
        }
    }
    num / den
}

/// Splits `λ = λ_- + λ_+`, where `λ_-` collects the fundamental weights
/// `ϖ_i` with `i <= ⌊n/2⌋` and `λ_+` the rest.
pub fn split_plus_minus(lambda: &DominantWeight) -> (DominantWeight, DominantWeight) {
    let n = lambda.rank();
    let a = lambda.fundamental_coefficients();
    let cut = n / 2;
    // ϖ_i contributes 1 to entries 0..i, so entry k of a partial sum is Σ_{i > k} a_i.
    let partial = |range: std::ops::Range<usize>| -> DominantWeight {
        let entries = (0..n)
            .map(|k| range.clone().filter(|&i| i > k).map(|i| a[i - 1]).sum())
            .collect();
        DominantWeight::from_sorted(entries)
    };
    (partial(1..cut + 1), partial(cut + 1..n + 1))
}

/// `λ^{∨,n} = (λ_1 - λ_n, λ_1 - λ_{n-1}, ..., λ_1 - λ_1)`, canonicalized.
pub fn dual_partition(lambda: &Partition, n: usize) -> Result<Partition> {
    if lambda.length() > n {
        return Err(Error::Rank(format!("partition {lambda} has more than {n} parts")));
    }
    let top = lambda.part(0);
    Ok(Partition::from_sorted((0..n).rev().map(|i| top - lambda.part(i)).collect()))
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn w(entries: &[i64]) -> DominantWeight {
        DominantWeight::new(entries.to_vec()).unwrap()
    }

    fn exact(v: i64) -> BigRational {
        BigRational::from_int(v)
    }

    /// Counts cells (a,b) with (a = i and b >= j) or (a >= i and b = j).
    fn brute_hooks(lambda: &Partition) -> BTreeMap<(usize, usize), u32> {
        let cells: Vec<_> = lambda.cells().collect();
        cells
            .iter()
            .map(|&(i, j)| {
                let h = cells
                    .iter()
                    .filter(|&&(a, b)| (a == i && b >= j) || (a >= i && b == j))
                    .count();
                ((i, j), h as u32)
            })
            .collect()
    }

    #[test]
    fn canonical_form_strips_zeros() {
        assert_eq!(p(&[2, 1, 0, 0]), p(&[2, 1]));
        assert_eq!(p(&[2, 1, 0]).to_string(), "[2,1]");
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!("[3, 1,1]".parse::<Partition>().unwrap(), p(&[3, 1, 1]));
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
    }

    #[test]
    fn hook_length_examples() {
        let h = hook_lengths(&p(&[2, 1]));
        assert_eq!(h, BTreeMap::from([((1, 1), 3), ((1, 2), 1), ((2, 1), 1)]));
        assert_eq!(hook_lengths(&p(&[1])), BTreeMap::from([((1, 1), 1)]));
        let h = hook_lengths(&p(&[2, 2]));
        assert_eq!(h, BTreeMap::from([((1, 1), 3), ((1, 2), 2), ((2, 1), 2), ((2, 2), 1)]));
        assert!(hook_lengths(&Partition::empty()).is_empty());
        for m in 0..=9 {
            for lambda in Partition::all_of(m) {
                assert_eq!(hook_lengths(&lambda), brute_hooks(&lambda), "{lambda}");
            }
        }
    }

    #[test]
    fn sym_dim_examples() {
        assert_eq!(sym_dim::<BigRational>(&p(&[2, 1])), exact(2));
        assert_eq!(sym_dim::<BigRational>(&p(&[7])), exact(1));
        assert_eq!(sym_dim::<BigRational>(&p(&[1, 1, 1])), exact(1));
        assert_eq!(sym_dim::<f64>(&p(&[3, 2])), 5.0);
    }

    #[test]
    fn hook_content_examples() {
        for n in 1..7 {
            assert_eq!(dim_hook_content::<BigRational>(&p(&[1]), n).unwrap(), exact(n as i64));
        }
        // (1^m) at rank n gives binomial(n, m)
        assert_eq!(dim_hook_content::<BigRational>(&Partition::column(3), 6).unwrap(), exact(20));
        assert_eq!(dim_hook_content::<BigRational>(&p(&[2, 1]), 3).unwrap(), exact(8));
        assert!(matches!(dim_hook_content::<BigRational>(&p(&[1, 1, 1]), 2), Err(Error::Rank(_))));
    }

    #[test]
    fn weyl_examples() {
        // Sym^m at rank n: binomial(n+m-1, m)
        let sym3 = DominantWeight::from_partition(&Partition::row(3), 4).unwrap();
        assert_eq!(dim_weyl::<BigRational>(&sym3), exact(20));
        assert_eq!(dim_weyl::<BigRational>(&w(&[1, -1])), exact(3));
        assert_eq!(dim_weyl::<BigRational>(&DominantWeight::zero(5)), exact(1));
        assert_eq!(dim_weyl::<BigRational>(&w(&[3, 1, -2]).shifted(7)), dim_weyl::<BigRational>(&w(&[3, 1, -2])));
    }

    #[test]
    fn split_examples() {
        let (minus, plus) = split_plus_minus(&DominantWeight::fundamental(4, 1));
        assert_eq!(minus, DominantWeight::fundamental(4, 1));
        assert!(plus.is_zero());

        let (minus, plus) = split_plus_minus(&DominantWeight::constant(5, 1));
        assert!(minus.is_zero());
        assert_eq!(plus, DominantWeight::constant(5, 1));

        let (minus, plus) = split_plus_minus(&w(&[2, 1, 0, 0]));
        assert_eq!(minus, w(&[2, 1, 0, 0]));
        assert!(plus.is_zero());

        let lambda = w(&[5, 3, 3, 1, -2]);
        let (minus, plus) = split_plus_minus(&lambda);
        assert_eq!(minus.add(&plus).unwrap(), lambda);
        assert_eq!(minus, w(&[2, 0, 0, 0, 0]));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_partition(&p(&[1]), 2).unwrap(), p(&[1]));
        assert_eq!(dual_partition(&p(&[4, 4, 4]), 3).unwrap(), Partition::empty());
        assert_eq!(dual_partition(&p(&[2, 1]), 3).unwrap(), p(&[2, 1]));
        assert_eq!(dual_partition(&p(&[3, 1]), 4).unwrap(), p(&[3, 3, 2]));
        assert!(dual_partition(&p(&[1, 1, 1]), 2).is_err());
    }

    #[test]
    fn weight_text_encoding() {
        let lambda: DominantWeight = "[2,1,0,-1]@n=4".parse().unwrap();
        assert_eq!(lambda, w(&[2, 1, 0, -1]));
        assert_eq!(lambda.to_string(), "[2,1,0,-1]@n=4");
        assert!("[2,1]@n=3".parse::<DominantWeight>().is_err());
        assert!("[1,2]@n=2".parse::<DominantWeight>().is_err());
        assert_eq!(DominantWeight::parse_padded("[1,-1]", 3).unwrap(), w(&[1, 0, -1]));
        assert_eq!(DominantWeight::parse_padded("[2]", 3).unwrap(), w(&[2, 0, 0]));
        assert!(DominantWeight::parse_padded("[1,1,1]", 2).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (0..10).map(|m| Partition::all_of(m).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
        assert_eq!(p(&[2, 1]).subdiagrams().len(), 5);
        assert_eq!(Partition::bounded(4, 2, 2), vec![p(&[2, 2])]);
    }
}
