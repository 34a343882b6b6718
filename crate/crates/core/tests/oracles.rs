//! Exact kernels against brute-force oracles that share no code with them.

use std::collections::BTreeMap;

use num_complex::Complex64;
use wordmeasure::branching::count_strict_expansions;
use wordmeasure::spectral::SpectrumOnCircle;
use wordmeasure::unitary::haar_unitary;
use wordmeasure::{
    char_value, class_size, dim_hook_content, lr_coefficient, mn_character, sym_dim, CycleType, DominantWeight,
    Partition, Rational, SeededRng,
};

/// Standard Young tableaux, counted by removing the cell holding the largest entry.
fn count_syt(shape: &[u32]) -> u64 {
    if shape.iter().all(|&p| p == 0) {
        return 1;
    }
    let mut total = 0;
    for i in 0..shape.len() {
        let is_corner = shape[i] > 0 && (i + 1 == shape.len() || shape[i + 1] < shape[i]);
        if is_corner {
            let mut smaller = shape.to_vec();
            smaller[i] -= 1;
            total += count_syt(&smaller);
        }
    }
    total
}

/// Permutation character of `S_m` on tabloids of composition `alpha`: the
/// number of ways to place whole cycles into rows with row sizes `alpha`.
fn tabloid_character(alpha: &[i64], cycles: &[u32]) -> i64 {
    fn go(cycles: &[u32], room: &mut [i64]) -> i64 {
        let Some((&c, rest)) = cycles.split_first() else {
            return i64::from(room.iter().all(|&r| r == 0));
        };
        let mut total = 0;
        for r in 0..room.len() {
            if room[r] >= c as i64 {
                room[r] -= c as i64;
                total += go(rest, room);
                room[r] += c as i64;
            }
        }
        total
    }
    go(cycles, &mut alpha.to_vec())
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..k {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// `χ_λ = Σ_w sgn(w) π_{λ + δ - w(δ)}` (determinantal formula).
fn determinantal_character(lambda: &Partition, c: &CycleType) -> i64 {
    let l = lambda.length();
    permutations(l)
        .iter()
        .map(|w| {
            let alpha: Vec<i64> = (0..l).map(|i| lambda.part(i) as i64 - i as i64 + w[i] as i64).collect();
            if alpha.iter().any(|&a| a < 0) {
                0
            } else {
                sign(w) * tabloid_character(&alpha, c.cycles().parts())
            }
        })
        .sum()
}

/// Semistandard tableaux of shape `lambda` with entries in `1..=n`, as
/// content vectors.
fn ssyt_contents(lambda: &Partition, n: usize) -> Vec<Vec<u32>> {
    let cells: Vec<(usize, usize)> = lambda.cells().map(|(i, j)| (i - 1, j - 1)).collect();
    let mut grid: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut out = Vec::new();
    fn go(k: usize, cells: &[(usize, usize)], n: usize, grid: &mut BTreeMap<(usize, usize), usize>, out: &mut Vec<Vec<u32>>) {
        if k == cells.len() {
            let mut content = vec![0; n];
            for &v in grid.values() {
                content[v] += 1;
            }
            out.push(content);
            return;
        }
        let (i, j) = cells[k];
        let lo_row = if j > 0 { grid[&(i, j - 1)] } else { 0 };
        let lo_col = if i > 0 { grid[&(i - 1, j)] + 1 } else { 0 };
        for v in lo_row.max(lo_col)..n {
            grid.insert((i, j), v);
            go(k + 1, cells, n, grid, out);
            grid.remove(&(i, j));
        }
    }
    go(0, &cells, n, &mut grid, &mut out);
    out
}

fn schur_by_tableaux(lambda: &Partition, x: &[Complex64]) -> Complex64 {
    ssyt_contents(lambda, x.len())
        .iter()
        .map(|content| content.iter().zip(x).map(|(&e, z)| z.powu(e)).product::<Complex64>())
        .sum()
}

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

#[test]
fn hook_length_counts_standard_tableaux() {
    for m in 0..=8 {
        for lambda in Partition::all_of(m) {
            let dim: Rational = sym_dim(&lambda);
            assert_eq!(dim, Rational::from_integer(count_syt(lambda.parts()).into()), "{lambda}");
        }
    }
}

#[test]
fn murnaghan_nakayama_matches_determinantal_formula() {
    for m in 1..=5 {
        for lambda in Partition::all_of(m) {
            for c in CycleType::all_of(m) {
                let chi: Rational = mn_character(&lambda, &c).unwrap();
                assert_eq!(chi, Rational::from_integer(determinantal_character(&lambda, &c).into()), "{lambda} at {c}");
            }
        }
    }
}

#[test]
fn hook_content_counts_semistandard_tableaux() {
    for m in 0..=6 {
        for lambda in Partition::all_of(m) {
            for n in lambda.length().max(1)..=4 {
                let dim: Rational = dim_hook_content(&lambda, n).unwrap();
                let count = ssyt_contents(&lambda, n).len() as i64;
                assert_eq!(dim, Rational::from_integer(count.into()), "{lambda} n={n}");
            }
        }
    }
}

#[test]
fn jacobi_trudi_matches_tableau_expansion() {
    let seed = SeededRng::new(2024);
    let mut rng = seed.child(0);
    for n in 1..=4usize {
        for m in 0..=6 {
            for lambda in Partition::all_of(m).into_iter().filter(|l| l.length() <= n) {
                let g = haar_unitary(n, &mut rng);
                let eigs = SpectrumOnCircle::of(&g).points();
                let expected = schur_by_tableaux(&lambda, &eigs);
                let weight = DominantWeight::from_partition(&lambda, n).unwrap();
                let got = char_value(&weight, &g).unwrap();
                let scale = expected.norm().max(1.0);
                assert!((got - expected).norm() <= 1e-8 * scale, "{lambda} n={n}: {got} vs {expected}");
            }
        }
    }
}

/// `⟨χ_ν, Ind(χ_λ ⊠ χ_μ)⟩`, summed over pairs of classes of `S_a × S_b`.
fn induced_multiplicity(lambda: &Partition, mu: &Partition, nu: &Partition) -> Rational {
    let (a, b) = (lambda.weight(), mu.weight());
    let mut total = Rational::from_integer(0.into());
    for c1 in CycleType::all_of(a) {
        for c2 in CycleType::all_of(b) {
            let mut joined: Vec<u32> = c1.cycles().parts().iter().chain(c2.cycles().parts()).copied().collect();
            joined.sort_unstable_by(|x, y| y.cmp(x));
            let c = CycleType::new(Partition::new(joined).unwrap());
            let size: Rational = class_size::<Rational>(&c1) * class_size::<Rational>(&c2);
            let chi: Rational = mn_character::<Rational>(lambda, &c1).unwrap()
                * mn_character::<Rational>(mu, &c2).unwrap()
                * mn_character::<Rational>(nu, &c).unwrap();
            total += size * chi;
        }
    }
    let order = |k: u32| Rational::from_integer((1..=k as i64).product::<i64>().into());
    total / (order(a) * order(b))
}

#[test]
fn littlewood_richardson_matches_induced_characters() {
    for total in 0..=6 {
        for nu in Partition::all_of(total) {
            for a in 0..=total {
                for lambda in Partition::all_of(a) {
                    for mu in Partition::all_of(total - a) {
                        let expected = induced_multiplicity(&lambda, &mu, &nu);
                        let got = lr_coefficient(&lambda, &mu, &nu).unwrap();
                        assert_eq!(Rational::from_integer(got.into()), expected, "N^{nu}_{lambda},{mu}");
                    }
                }
            }
        }
    }
}

#[test]
fn littlewood_richardson_examples_from_characters() {
    assert_eq!(induced_multiplicity(&p(&[1]), &p(&[1, 1]), &p(&[2, 1])), Rational::from_integer(1.into()));
    assert_eq!(lr_coefficient(&p(&[1]), &p(&[1, 1]), &p(&[2, 1])).unwrap(), 1);
    let (lambda, mu, nu) = (p(&[3, 1]), p(&[2, 1]), p(&[4, 2, 1]));
    let expected = induced_multiplicity(&lambda, &mu, &nu);
    assert_eq!(Rational::from_integer(count_strict_expansions(&lambda, &mu, &nu).into()), expected);
    assert_eq!(count_strict_expansions(&mu, &lambda, &nu), count_strict_expansions(&lambda, &mu, &nu));
}
