//! Littlewood–Richardson coefficients and branching from `U(n)` to block
//! subgroups `U(k) × U(n-k)`, including the invariant dimensions that give
//! exact Fourier coefficients of power words.

use std::collections::{BTreeMap, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Mutex, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::partition::{dim_weyl, DominantWeight, Partition};
use crate::scalar::Scalar;

/// Largest `|ν|` for which LR coefficients are enumerated.
pub const MAX_LR_WEIGHT: u32 = 40;

/// Counts the strict `mu`-expansions of `lambda` whose shape is `nu`,
/// i.e. the Littlewood–Richardson coefficient `N^ν_{λ,μ}`.
///
/// Boxes added at step `j` carry label `j`; no two boxes of one step share a
/// column. The expansion is strict when, reading rows top to bottom and each
/// row right to left, every prefix holds at least as many `p` labels as
/// `p + 1` labels.
pub fn count_strict_expansions(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.weight() + mu.weight() != nu.weight() || !nu.contains(lambda) || !nu.contains(mu) {
        return 0;
    }
    let rows = nu.length();
    let shape: Vec<u32> = (0..rows).map(|r| lambda.part(r)).collect();
    let target: Vec<u32> = nu.parts().to_vec();
    let labels = vec![Vec::new(); rows];
    let mut count = 0;
    expand(&shape, &labels, mu.parts(), 0, &target, &mut count);
    count
}

fn expand(shape: &[u32], labels: &[Vec<u8>], mu: &[u32], step: usize, target: &[u32], count: &mut u64) {
    if step == mu.len() {
        if shape == target {
            *count += 1;
        }
        return;
    }
    let mut next = shape.to_vec();
    add_strip(shape, &mut next, 0, mu[step], target, &mut |new_shape| {
        let mut new_labels = labels.to_vec();
        for (r, row) in new_labels.iter_mut().enumerate() {
            row.extend(std::iter::repeat_n(step as u8 + 1, (new_shape[r] - shape[r]) as usize));
        }
        if step == 0 || is_lattice(&new_labels, step as u8, step as u8 + 1) {
            expand(new_shape, &new_labels, mu, step + 1, target, count);
        }
    });
}

/// Enumerates horizontal strips of `remaining` boxes added to `old`, rows `r..`.
fn add_strip(old: &[u32], new: &mut Vec<u32>, r: usize, remaining: u32, target: &[u32], f: &mut dyn FnMut(&[u32])) {
    if r == old.len() {
        if remaining == 0 {
            f(new);
        }
        return;
    }
    let cap = if r == 0 { target[0] } else { target[r].min(old[r - 1]) };
    let room = cap.saturating_sub(old[r]);
    // boxes that later rows can still absorb
    let later: u32 = (r + 1..old.len())
        .map(|s| target[s].min(old[s - 1]).saturating_sub(old[s]))
        .sum();
    let lo = remaining.saturating_sub(later);
    for add in lo..=room.min(remaining) {
        new[r] = old[r] + add;
        add_strip(old, new, r + 1, remaining - add, target, f);
    }
    new[r] = old[r];
}

/// Reading order: rows top to bottom, right to left within a row.
fn is_lattice(labels: &[Vec<u8>], p: u8, q: u8) -> bool {
    let (mut cp, mut cq) = (0usize, 0usize);
    for row in labels {
        for &l in row.iter().rev() {
            if l == p {
                cp += 1;
            } else if l == q {
                cq += 1;
                if cq > cp {
                    return false;
                }
            }
        }
    }
    true
}

type LrKey = (Partition, Partition, Partition);

/// Memoized LR coefficients, optionally persisted as append-only text
/// records `λ;μ;ν;N` (canonical partition encodings) at a file path.
#[derive(Debug, Default)]
pub struct LrCache {
    path: Option<PathBuf>,
    loaded: OnceLock<Result<()>>,
    table: RwLock<HashMap<LrKey, u64>>,
    writer: Mutex<()>,
}

impl LrCache {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// A cache backed by `path`. The file is read on first lookup; new
    /// coefficients are appended as they are computed.
    pub fn with_file(path: impl Into<PathBuf>) -> Self {
        Self { path: Some(path.into()), ..Self::default() }
    }

    /// The process-wide in-memory cache used by the free functions.
    pub fn global() -> &'static LrCache {
        static GLOBAL: OnceLock<LrCache> = OnceLock::new();
        GLOBAL.get_or_init(LrCache::in_memory)
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("lr cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn ensure_loaded(&self) -> Result<()> {
        self.loaded
            .get_or_init(|| {
                let Some(path) = &self.path else { return Ok(()) };
                if !path.exists() {
                    return Ok(());
                }
                let records = read_records(path)?;
                self.table.write().expect("lr cache poisoned").extend(records);
                Ok(())
            })
            .clone()
    }

    /// `N^ν_{λ,μ}`.
    pub fn coefficient(&self, lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
        if nu.weight() > MAX_LR_WEIGHT {
            return Err(Error::Cap { what: format!("LR coefficient with |ν| = {}", nu.weight()), cap: MAX_LR_WEIGHT as usize });
        }
        if lambda.weight() + mu.weight() != nu.weight() || !nu.contains(lambda) || !nu.contains(mu) {
            return Ok(0);
        }
        self.ensure_loaded()?;
        let key = (lambda.clone(), mu.clone(), nu.clone());
        if let Some(&v) = self.table.read().expect("lr cache poisoned").get(&key) {
            return Ok(v);
        }
        let value = count_strict_expansions(lambda, mu, nu);
        let fresh = self.table.write().expect("lr cache poisoned").insert(key, value).is_none();
        if fresh {
            if let Some(path) = &self.path {
                let _guard = self.writer.lock().expect("lr cache writer poisoned");
                let mut file = OpenOptions::new().create(true).append(true).open(path)?;
                writeln!(file, "{lambda};{mu};{nu};{value}")?;
            }
        }
        Ok(value)
    }

    pub fn restrict(&self, lambda: &DominantWeight, k: usize) -> Result<BranchingTable> {
        let n = lambda.rank();
        if k == 0 || k >= n {
            return Err(Error::Rank(format!("split point {k} must satisfy 1 <= k < {n}")));
        }
        let shift = -lambda.last();
        let top = lambda.shifted(shift).to_partition().expect("shifted weight is a partition");
        let mut entries = BTreeMap::new();
        for mu in top.subdiagrams() {
            if mu.length() > k {
                continue;
            }
            let rest = top.weight() - mu.weight();
            for nu in Partition::bounded(rest, top.part(0), n - k) {
                if !top.contains(&nu) {
                    continue;
                }
                let mult = self.coefficient(&mu, &nu, &top)?;
                if mult > 0 {
                    let left = DominantWeight::from_partition(&mu, k)?.shifted(-shift);
                    let right = DominantWeight::from_partition(&nu, n - k)?.shifted(-shift);
                    entries.insert((left, right), mult);
                }
            }
        }
        Ok(BranchingTable { source: lambda.clone(), k, entries })
    }

    pub fn invariant_dim(&self, lambda: &DominantWeight, h: &BlockSubgroup) -> Result<u64> {
        if h.n() != lambda.rank() {
            return Err(Error::Rank(format!("subgroup of U({}) vs weight of rank {}", h.n(), lambda.rank())));
        }
        self.invariants_in_blocks(lambda, h.blocks())
    }

    /// Peels blocks off left to right: only the trivial weight of the first
    /// block can contribute, so it suffices to track the complementary factor.
    fn invariants_in_blocks(&self, lambda: &DominantWeight, blocks: &[usize]) -> Result<u64> {
        if lambda.total() != 0 {
            return Ok(0);
        }
        let (&first, rest) = blocks.split_first().expect("at least one block");
        if rest.is_empty() {
            return Ok(u64::from(lambda.is_zero()));
        }
        let n = lambda.rank();
        let shift = -lambda.last();
        let top = lambda.shifted(shift).to_partition().expect("shifted weight is a partition");
        let trivial = Partition::new(vec![shift as u32; first])?;
        let rest_weight = top.weight() - trivial.weight();
        let mut total = 0;
        for nu in Partition::bounded(rest_weight, top.part(0), n - first) {
            if !top.contains(&nu) {
                continue;
            }
            let mult = self.coefficient(&trivial, &nu, &top)?;
            if mult > 0 {
                let inner = DominantWeight::from_partition(&nu, n - first)?.shifted(-shift);
                total += mult * self.invariants_in_blocks(&inner, rest)?;
            }
        }
        Ok(total)
    }

    pub fn power_word_fourier_exact(&self, lambda: &DominantWeight, ell: usize) -> Result<u64> {
        let h = BlockSubgroup::power_word(lambda.rank(), ell)?;
        self.invariant_dim(lambda, &h)
    }
}

fn read_records(path: &Path) -> Result<Vec<(LrKey, u64)>> {
    let reader = BufReader::new(File::open(path)?);
    let mut out = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(';').collect();
        let bad = || Error::Parse(format!("{}:{}: bad LR record {line:?}", path.display(), lineno + 1));
        if fields.len() != 4 {
            return Err(bad());
        }
        let lambda: Partition = fields[0].parse().map_err(|_| bad())?;
        let mu: Partition = fields[1].parse().map_err(|_| bad())?;
        let nu: Partition = fields[2].parse().map_err(|_| bad())?;
        let value: u64 = fields[3].trim().parse().map_err(|_| bad())?;
        out.push(((lambda, mu, nu), value));
    }
    Ok(out)
}

/// `N^ν_{λ,μ}` through the global cache.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
    LrCache::global().coefficient(lambda, mu, nu)
}

/// Restriction of `ρ_λ` to `U(k) × U(n-k)`.
pub fn restrict(lambda: &DominantWeight, k: usize) -> Result<BranchingTable> {
    LrCache::global().restrict(lambda, k)
}

/// Dimension of the `H`-fixed vectors in `ρ_λ`.
pub fn invariant_dim(lambda: &DominantWeight, h: &BlockSubgroup) -> Result<u64> {
    LrCache::global().invariant_dim(lambda, h)
}

/// `E_{X ∈ U(n)} ρ_λ(X^ℓ) = dim ρ_λ^{H_{n,ℓ}}`.
pub fn power_word_fourier_exact(lambda: &DominantWeight, ell: usize) -> Result<u64> {
    LrCache::global().power_word_fourier_exact(lambda, ell)
}

/// A block-diagonal subgroup `U(b_1) × ... × U(b_s)` of `U(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSubgroup {
    blocks: Vec<usize>,
}

impl BlockSubgroup {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(Error::Domain(format!("blocks {blocks:?} must be positive and non-empty")));
        }
        Ok(Self { blocks })
    }

    /// `H_{n,ℓ}`: `n mod ℓ` blocks of size `⌊n/ℓ⌋ + 1` followed by blocks of
    /// size `⌊n/ℓ⌋`, empty blocks dropped.
    pub fn power_word(n: usize, ell: usize) -> Result<Self> {
        if ell == 0 || n == 0 {
            return Err(Error::Domain(format!("need n >= 1 and ell >= 1, got n={n}, ell={ell}")));
        }
        let (q, j) = (n / ell, n % ell);
        let blocks = std::iter::repeat_n(q + 1, j)
            .chain(std::iter::repeat_n(q, ell - j))
            .filter(|&b| b > 0)
            .collect();
        Self::new(blocks)
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }
}

/// Multiplicities of `ρ_μ ⊠ ρ_ν` in `ρ_λ|_{U(k) × U(n-k)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchingTable {
    pub source: DominantWeight,
    pub k: usize,
    pub entries: BTreeMap<(DominantWeight, DominantWeight), u64>,
}

impl BranchingTable {
    /// `Σ mult · dim μ · dim ν`, which must equal `dim λ`.
    pub fn restricted_dimension<T: Scalar>(&self) -> T {
        self.entries.iter().fold(T::zero(), |acc, ((mu, nu), &mult)| {
            acc + T::from_int(mult as i64) * dim_weyl::<T>(mu) * dim_weyl::<T>(nu)
        })
    }

    pub fn dimension_balanced(&self) -> bool {
        self.restricted_dimension::<crate::Rational>() == dim_weyl::<crate::Rational>(&self.source)
    }

    /// Number of distinct irreducible constituents.
    pub fn constituent_count(&self) -> usize {
        self.entries.len()
    }
}
