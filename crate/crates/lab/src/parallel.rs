//! Sample-parallel execution. Worker `w` draws from the child stream `w` of
//! the run seed and partials are merged in worker order, so a run is fixed
//! by `(seed, workers)` regardless of thread scheduling.

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use wordmeasure::SeededRng;

pub trait Merge: Default + Send {
    fn merge(&mut self, other: Self);
}

impl<A: Merge, B: Merge> Merge for (A, B) {
    fn merge(&mut self, other: Self) {
        self.0.merge(other.0);
        self.1.merge(other.1);
    }
}

impl<A: Merge, B: Merge, C: Merge> Merge for (A, B, C) {
    fn merge(&mut self, other: Self) {
        self.0.merge(other.0);
        self.1.merge(other.1);
        self.2.merge(other.2);
    }
}

/// Splits `samples` into `workers` near-equal shares, larger shares first.
pub fn shares(samples: u64, workers: usize) -> Vec<u64> {
    let workers = workers.max(1) as u64;
    let (base, extra) = (samples / workers, samples % workers);
    (0..workers).map(|w| base + u64::from(w < extra)).collect()
}

/// Runs `step` once per sample and merges the per-worker accumulators.
pub fn run<A, F>(seed: &SeededRng, samples: u64, workers: usize, step: F) -> wordmeasure::Result<A>
where
    A: Merge,
    F: Fn(&mut ChaCha8Rng, &mut A) -> wordmeasure::Result<()> + Sync,
{
    let partials: Vec<wordmeasure::Result<A>> = shares(samples, workers)
        .into_par_iter()
        .enumerate()
        .map(|(w, count)| {
            let mut rng = seed.child(w as u64);
            let mut acc = A::default();
            for _ in 0..count {
                step(&mut rng, &mut acc)?;
            }
            Ok(acc)
        })
        .collect();
    let mut total = A::default();
    for partial in partials {
        total.merge(partial?);
    }
    Ok(total)
}
