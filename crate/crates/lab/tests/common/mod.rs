//! Brute-force oracles shared by the integration tests. They enumerate
//! subsets directly and share no code with the library predicates.

#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use rand::Rng;

/// Angular length of the shortest closed arc containing every angle.
pub fn covering_arc(angles: &[f64]) -> f64 {
    if angles.len() <= 1 {
        return 0.0;
    }
    let mut sorted: Vec<f64> = angles.iter().map(|a| a.rem_euclid(TAU)).collect();
    sorted.sort_by(f64::total_cmp);
    let mut largest_gap = sorted[0] + TAU - sorted[sorted.len() - 1];
    for w in sorted.windows(2) {
        largest_gap = largest_gap.max(w[1] - w[0]);
    }
    TAU - largest_gap
}

fn chord(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    2.0 * (d.min(TAU - d) / 2.0).sin()
}

fn subset(angles: &[f64], mask: u32) -> Vec<f64> {
    (0..angles.len()).filter(|i| mask >> i & 1 == 1).map(|i| angles[i]).collect()
}

/// Largest number of eigenvalues inside one arc of chordal diameter `2ε`,
/// by checking every subset.
pub fn brute_max_in_arc(angles: &[f64], eps: f64) -> usize {
    if eps >= 1.0 {
        return angles.len();
    }
    let width = 2.0 * eps.asin() + 1e-12;
    (0u32..1 << angles.len())
        .filter(|&mask| covering_arc(&subset(angles, mask)) <= width)
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn brute_is_spread(angles: &[f64], beta: f64, eps: f64) -> bool {
    brute_max_in_arc(angles, eps) as f64 <= (1.0 - beta) * angles.len() as f64 + 1e-9
}

/// Some split into two non-empty sides, each of size at least `γn`, with
/// every cross pair at chordal distance at least `ε`.
pub fn brute_is_separated(angles: &[f64], gamma: f64, eps: f64) -> bool {
    let n = angles.len();
    let need = (gamma * n as f64 - 1e-9).ceil().max(1.0) as usize;
    (1u32..(1 << n) - 1).any(|mask| {
        let k = mask.count_ones() as usize;
        if k < need || n - k < need {
            return false;
        }
        (0..n).filter(|i| mask >> i & 1 == 1).all(|i| {
            (0..n).filter(|j| mask >> j & 1 == 0).all(|j| chord(angles[i], angles[j]) >= eps)
        })
    })
}

/// Angles drawn around a few cluster centres, so that both outcomes of the
/// predicates are common.
pub fn clustered_angles<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let clusters = rng.random_range(1..=n.min(4));
    let centres: Vec<f64> = (0..clusters).map(|_| rng.random_range(-PI..PI)).collect();
    let spread = 10f64.powf(rng.random_range(-4.0..0.0));
    (0..n)
        .map(|_| {
            let c = centres[rng.random_range(0..clusters)];
            (c + rng.random_range(-spread..spread) + PI).rem_euclid(TAU) - PI
        })
        .collect()
}
