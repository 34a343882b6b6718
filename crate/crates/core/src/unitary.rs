//! Unitary matrices, seeded random streams, Haar sampling on `U(n)` and
//! `SU(n)`, and evaluation of word maps.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::word::FreeWord;

/// Frobenius tolerance per unit of dimension for `U*U = I`.
pub const UNITARY_TOLERANCE: f64 = 1e-8;

/// A square complex matrix checked to be unitary on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix {
    m: DMatrix<Complex64>,
}

impl UnitaryMatrix {
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        if !m.is_square() || m.nrows() == 0 {
            return Err(Error::SizeMismatch(format!("{}x{} matrix is not square", m.nrows(), m.ncols())));
        }
        let n = m.nrows();
        let defect = (m.adjoint() * &m - DMatrix::identity(n, n)).norm();
        if defect > UNITARY_TOLERANCE * n as f64 {
            return Err(Error::NotUnitary(format!("‖U*U - I‖ = {defect:e}")));
        }
        Ok(Self { m })
    }

    /// Like [`UnitaryMatrix::new`], additionally requiring `det = 1`.
    pub fn new_special(m: DMatrix<Complex64>) -> Result<Self> {
        let u = Self::new(m)?;
        let det = u.det();
        if (det - Complex64::new(1.0, 0.0)).norm() > UNITARY_TOLERANCE {
            return Err(Error::NotUnitary(format!("det = {det} is not 1")));
        }
        Ok(u)
    }

    /// Products and adjoints of unitary matrices skip the check.
    pub(crate) fn trusted(m: DMatrix<Complex64>) -> Self {
        Self { m }
    }

    pub fn identity(n: usize) -> Self {
        Self { m: DMatrix::identity(n, n) }
    }

    /// `diag(ζ_1, ..., ζ_n)`; every entry must have modulus one.
    pub fn diagonal(entries: &[Complex64]) -> Result<Self> {
        Self::new(DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(entries)))
    }

    /// `diag(e^{iθ_1}, ..., e^{iθ_n})`.
    pub fn from_angles(angles: &[f64]) -> Self {
        let entries: Vec<Complex64> = angles.iter().map(|&t| Complex64::from_polar(1.0, t)).collect();
        Self::trusted(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(entries)))
    }

    pub fn n(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.m
    }

    pub fn adjoint(&self) -> Self {
        Self::trusted(self.m.adjoint())
    }

    pub fn mul(&self, other: &UnitaryMatrix) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(format!("{} vs {}", self.n(), other.n())));
        }
        Ok(Self::trusted(&self.m * &other.m))
    }

    /// `c · U` for a unit scalar `c`.
    pub fn scaled(&self, c: Complex64) -> Self {
        Self::trusted(&self.m * c)
    }

    pub fn det(&self) -> Complex64 {
        self.m.clone().determinant()
    }

    pub fn trace(&self) -> Complex64 {
        self.m.trace()
    }

    /// `‖U*U - I‖_F`.
    pub fn unitarity_defect(&self) -> f64 {
        (self.m.adjoint() * &self.m - DMatrix::identity(self.n(), self.n())).norm()
    }

    /// Row-major dump, each entry as little-endian `f64` real then imaginary part.
    pub fn to_bytes(&self) -> Vec<u8> {
        let n = self.n();
        let mut out = Vec::with_capacity(16 * n * n);
        for i in 0..n {
            for j in 0..n {
                let z = self.m[(i, j)];
                out.extend_from_slice(&z.re.to_le_bytes());
                out.extend_from_slice(&z.im.to_le_bytes());
            }
        }
        out
    }

    pub fn from_bytes(n: usize, bytes: &[u8]) -> Result<Self> {
        if bytes.len() != 16 * n * n {
            return Err(Error::SizeMismatch(format!("{} bytes for a {n}x{n} matrix", bytes.len())));
        }
        let read = |k: usize| f64::from_le_bytes(bytes[8 * k..8 * k + 8].try_into().expect("eight bytes"));
        let m = DMatrix::from_fn(n, n, |i, j| {
            let k = 2 * (i * n + j);
            Complex64::new(read(k), read(k + 1))
        });
        Self::new(m)
    }
}

/// A 64-bit seed from which reproducible ChaCha8 streams are derived.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeededRng {
    pub seed: u64,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    /// The generator for stream `index`. Distinct indices select distinct
    /// ChaCha streams under the same key.
    pub fn child(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }

    /// An independent seed for a named sub-experiment.
    pub fn derive(&self, tag: u64) -> SeededRng {
        SeededRng { seed: splitmix64(self.seed ^ splitmix64(tag.wrapping_add(0x9e37_79b9_7f4a_7c15))) }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Haar-random element of `U(n)`: QR of a complex Ginibre matrix with the
/// columns of `Q` rotated by the phases of `diag(R)`.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> UnitaryMatrix {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let g = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * scale, im * scale)
    });
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for z in q.column_mut(j).iter_mut() {
            *z *= phase;
        }
    }
    UnitaryMatrix::trusted(q)
}

/// Haar-random element of `SU(n)`: a Haar unitary times `e^{-iθ/n}` where
/// `det = e^{iθ}`, times a uniformly chosen `n`-th root of unity.
pub fn haar_special_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> UnitaryMatrix {
    let u = haar_unitary(n, rng);
    let theta = u.det().arg();
    let k = rng.random_range(0..n);
    let phase = -theta / n as f64 + std::f64::consts::TAU * k as f64 / n as f64;
    u.scaled(Complex64::from_polar(1.0, phase))
}

/// `r` independent Haar unitaries.
pub fn haar_tuple<R: Rng + ?Sized>(n: usize, r: usize, rng: &mut R) -> Vec<UnitaryMatrix> {
    (0..r).map(|_| haar_unitary(n, rng)).collect()
}

/// `r` independent Haar elements of `SU(n)`.
pub fn haar_special_tuple<R: Rng + ?Sized>(n: usize, r: usize, rng: &mut R) -> Vec<UnitaryMatrix> {
    (0..r).map(|_| haar_special_unitary(n, rng)).collect()
}

/// Substitutes `x_i ← tuple[i-1]`, multiplying letters from the right end
/// of the word toward the left; inverse letters use the adjoint.
pub fn word_eval(w: &FreeWord, tuple: &[UnitaryMatrix]) -> Result<UnitaryMatrix> {
    if tuple.len() < w.rank() {
        return Err(Error::SizeMismatch(format!("word of rank {} needs {} matrices, got {}", w.rank(), w.rank(), tuple.len())));
    }
    let n = tuple[0].n();
    if let Some(bad) = tuple.iter().find(|u| u.n() != n) {
        return Err(Error::SizeMismatch(format!("matrices of sizes {n} and {}", bad.n())));
    }
    let adjoints: Vec<Option<DMatrix<Complex64>>> = (1..=tuple.len())
        .map(|g| w.letters().iter().any(|l| l.generator == g && l.inverse).then(|| tuple[g - 1].m.adjoint()))
        .collect();
    let mut acc: Option<DMatrix<Complex64>> = None;
    for l in w.letters().iter().rev() {
        let m = if l.inverse { adjoints[l.generator - 1].as_ref().expect("adjoint precomputed") } else { &tuple[l.generator - 1].m };
        acc = Some(match acc {
            None => m.clone(),
            Some(a) => m * a,
        });
    }
    Ok(UnitaryMatrix::trusted(acc.expect("words are non-trivial")))
}
