//! Weingarten functions of `U(n)` and exact Haar integrals of monomials in
//! matrix entries.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::partition::{dim_hook_content, sym_dim, Partition};
use crate::scalar::{factorial, pow_int, Scalar};
use crate::symgroup::{class_size, mn_character, ClassFunction, CycleType};
use crate::Rational;

pub const MAX_WEINGARTEN_DEGREE: u32 = 12;
pub const MAX_MONOMIAL_DEGREE: usize = 6;
pub const MAX_MOMENT: u32 = 10;

/// `Wg_{m,n} = (1/m!²) Σ_{λ ⊢ m} χ_λ(1)² / ρ_λ(1) · χ_λ`, the inverse of
/// `σ ↦ n^{cyc(σ)}` in the group algebra of `S_m`.
pub fn weingarten_function<T: Scalar>(m: u32, n: usize) -> Result<ClassFunction<T>> {
    check_degree(m, n)?;
    let order = factorial::<T>(m);
    let norm = order.clone() * order;
    let weights = Partition::all_of(m)
        .into_iter()
        .map(|lambda| {
            let d = sym_dim::<T>(&lambda);
            let w = d.clone() * d / dim_hook_content::<T>(&lambda, n)? / norm.clone();
            Ok((lambda, w))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut err = None;
    let wg = ClassFunction::from_fn(m, |c| {
        weights.iter().fold(T::zero(), |acc, (lambda, w)| match mn_character::<T>(lambda, c) {
            Ok(chi) => acc + w.clone() * chi,
            Err(e) => {
                err = Some(e);
                acc
            }
        })
    });
    err.map_or(Ok(wg), Err)
}

fn check_degree(m: u32, n: usize) -> Result<()> {
    if m as usize > n {
        return Err(Error::Domain(format!("Weingarten function needs m <= n, got m={m}, n={n}")));
    }
    if m > MAX_WEINGARTEN_DEGREE {
        return Err(Error::Cap { what: format!("Weingarten degree {m}"), cap: MAX_WEINGARTEN_DEGREE as usize });
    }
    Ok(())
}

fn memo() -> &'static RwLock<HashMap<(u32, usize), ClassFunction<Rational>>> {
    static MEMO: OnceLock<RwLock<HashMap<(u32, usize), ClassFunction<Rational>>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Exact `Wg_{m,n}` as a class function, memoized.
pub fn weingarten_table(m: u32, n: usize) -> Result<ClassFunction<Rational>> {
    if let Some(f) = memo().read().expect("weingarten memo poisoned").get(&(m, n)) {
        return Ok(f.clone());
    }
    let f = weingarten_function::<Rational>(m, n)?;
    memo().write().expect("weingarten memo poisoned").insert((m, n), f.clone());
    Ok(f)
}

/// `Wg_{m,n}(σ)` for `σ` of cycle type `c`.
pub fn weingarten(m: u32, n: usize, c: &CycleType) -> Result<Rational> {
    if c.degree() != m {
        return Err(Error::DegreeMismatch { left: m, right: c.degree() });
    }
    Ok(weingarten_table(m, n)?.get(c).expect("every class is tabulated").clone())
}

/// Index maps `F1, F2, H1, H2 : [m] → [n]` (1-based) describing the
/// monomial `∏ X_{F1(i),F2(i)} · ∏ conj(X_{H1(i),H2(i)})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSpec {
    pub f1: Vec<usize>,
    pub f2: Vec<usize>,
    pub h1: Vec<usize>,
    pub h2: Vec<usize>,
}

impl MonomialSpec {
    pub fn new(f1: Vec<usize>, f2: Vec<usize>, h1: Vec<usize>, h2: Vec<usize>) -> Result<Self> {
        let m = f1.len();
        if f2.len() != m || h1.len() != m || h2.len() != m {
            return Err(Error::SizeMismatch(format!(
                "index maps have lengths {}, {}, {}, {}",
                f1.len(),
                f2.len(),
                h1.len(),
                h2.len()
            )));
        }
        if [&f1, &f2, &h1, &h2].iter().any(|v| v.contains(&0)) {
            return Err(Error::Domain("indices are 1-based".into()));
        }
        Ok(Self { f1, f2, h1, h2 })
    }

    /// `|X_{i,j}|^{2m}`.
    pub fn abs_power(i: usize, j: usize, m: usize) -> Result<Self> {
        Self::new(vec![i; m], vec![j; m], vec![i; m], vec![j; m])
    }

    pub fn degree(&self) -> usize {
        self.f1.len()
    }

    fn max_index(&self) -> usize {
        [&self.f1, &self.f2, &self.h1, &self.h2].iter().flat_map(|v| v.iter()).copied().max().unwrap_or(0)
    }

    /// Applies the same relabeling `π : [n] → [n]` to all four maps.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        let map = |v: &Vec<usize>| v.iter().map(|&i| perm[i - 1]).collect();
        Self { f1: map(&self.f1), f2: map(&self.f2), h1: map(&self.h1), h2: map(&self.h2) }
    }
}

/// Every `σ ∈ S_m` (0-based one-line notation) with `f(σ(i)) = h(i)`.
fn matching_permutations(f: &[usize], h: &[usize]) -> Vec<Vec<usize>> {
    fn go(f: &[usize], h: &[usize], used: &mut [bool], perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = perm.len();
        if i == f.len() {
            out.push(perm.clone());
            return;
        }
        for k in 0..f.len() {
            if !used[k] && f[k] == h[i] {
                used[k] = true;
                perm.push(k);
                go(f, h, used, perm, out);
                perm.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(f, h, &mut vec![false; f.len()], &mut Vec::new(), &mut out);
    out
}

/// `E ∏ X_{F1(i),F2(i)} conj(X_{H1(i),H2(i)}) = Σ Wg(στ⁻¹)` over `σ, τ` with
/// `F1∘σ = H1` and `F2∘τ = H2`.
pub fn integrate_monomial(spec: &MonomialSpec, n: usize) -> Result<Rational> {
    let m = spec.degree();
    if m > MAX_MONOMIAL_DEGREE {
        return Err(Error::Cap { what: format!("monomial of degree {m}"), cap: MAX_MONOMIAL_DEGREE });
    }
    if spec.max_index() > n {
        return Err(Error::Domain(format!("index {} exceeds n = {n}", spec.max_index())));
    }
    if m == 0 {
        return Ok(Rational::from_int(1));
    }
    let wg = weingarten_table(m as u32, n)?;
    let sigmas = matching_permutations(&spec.f1, &spec.h1);
    let taus = matching_permutations(&spec.f2, &spec.h2);
    let mut acc = Rational::from_int(0);
    let mut tau_inv = vec![0; m];
    let mut pi = vec![0; m];
    for tau in &taus {
        for (i, &t) in tau.iter().enumerate() {
            tau_inv[t] = i;
        }
        for sigma in &sigmas {
            for x in 0..m {
                pi[x] = sigma[tau_inv[x]];
            }
            acc += wg.get(&CycleType::of_permutation(&pi)).expect("every class is tabulated");
        }
    }
    Ok(acc)
}

/// `E|tr X|^{2M} = M! Σ_c |c| Wg_{M,n}(c) n^{cyc(c)}`.
pub fn moment_tr_exact(moment: u32, n: usize) -> Result<Rational> {
    if moment > MAX_MOMENT {
        return Err(Error::Cap { what: format!("trace moment {moment}"), cap: MAX_MOMENT as usize });
    }
    let wg = weingarten_table(moment, n)?;
    let base = Rational::from_int(n as i64);
    let inner = wg.iter().fold(Rational::from_int(0), |acc, (c, w)| {
        acc + class_size::<Rational>(c) * w * pow_int(&base, c.num_cycles() as u32)
    });
    Ok(factorial::<Rational>(moment) * inner)
}
