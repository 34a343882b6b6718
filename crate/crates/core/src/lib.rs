//! Exact representation-theoretic kernels for word measures on unitary
//! groups, together with Haar sampling on `U(n)` / `SU(n)` and the spectral
//! predicates used to study random word values.
//!
//! The exact kernels ([`partition`], [`symgroup`], [`weingarten`]) are
//! generic over [`Scalar`]; the aliases below fix the exact rational carrier
//! and double-precision complex numbers used elsewhere.

pub mod branching;
pub mod error;
pub mod inequalities;
pub mod partition;
pub mod scalar;
pub mod spectral;
pub mod symgroup;
pub mod unitary;
pub mod weingarten;
pub mod word;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use branching::{
    invariant_dim, lr_coefficient, power_word_fourier_exact, restrict, BlockSubgroup, BranchingTable, LrCache,
};
pub use partition::{dim_hook_content, dim_weyl, dual_partition, hook_lengths, split_plus_minus, sym_dim};
pub use partition::{DominantWeight, Partition};
pub use spectral::{char_value, geodesic_distance, hs_distance, is_separated, is_spread, SpectrumOnCircle};
pub use symgroup::{class_size, convolve, mn_character, ClassFunction, CycleType};
pub use unitary::{haar_special_unitary, haar_unitary, word_eval, SeededRng, UnitaryMatrix};
pub use weingarten::{integrate_monomial, moment_tr_exact, weingarten, MonomialSpec};
pub use word::{parse_word, FreeWord};

/// Exact scalar carrier for dimensions, characters and Weingarten values.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type BigInt = num_bigint::BigInt;
/// Double-precision complex number used by all numerical code.
pub type Complex = num_complex::Complex64;
/// Class function on `S_m` with exact values.
pub type ExactClassFunction = ClassFunction<Rational>;
/// Class function on `S_m` evaluated in double precision.
pub type FloatClassFunction = ClassFunction<f64>;
