//! Reproducible Monte Carlo estimates of a rule's expected payoff.
//!
//! Samples are drawn in fixed batches of [`BATCH_SIZE`]. Batch `b` owns the
//! ChaCha8 stream `b` under the user seed and shuffles `1..=n` in place with
//! Fisher-Yates. Batch summaries are merged in batch order, so a report
//! depends only on `(spec, strategy, samples, seed)` and never on the thread
//! count.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::model::{validate, ProblemSpec, Strategy};
use crate::{Error, Result};

pub const BATCH_SIZE: u64 = 4096;

/// Identifier of the sampling scheme recorded in every report.
pub const GENERATOR: &str = "chacha8/stream-per-batch-4096/fisher-yates";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub spec: ProblemSpec,
    pub strategy: Strategy,
    pub estimate: f64,
    pub samples: u64,
    /// Sample standard deviation over `sqrt(samples)`; reported as 0 when
    /// `samples == 1`.
    pub std_error: f64,
    pub std_error_defined: bool,
    pub ci95_low: f64,
    pub ci95_high: f64,
    pub seed: u64,
    pub generator: &'static str,
}

/// Plays `strat` on one interview order, where `order[k-1]` is the overall
/// rank (1 = best) of the `k`-th candidate, and returns the realized payoff.
pub fn run_strategy(order: &[u32], spec: &ProblemSpec, strat: &Strategy) -> f64 {
    debug_assert_eq!(order.len(), spec.n as usize);
    let (mut best, mut second, mut worst) = (u32::MAX, u32::MAX, 0u32);
    for (idx, &rank) in order.iter().enumerate() {
        let k = idx as u32 + 1;
        // relative rank, resolved only as far as a rule can distinguish it
        let j = if rank < best {
            1
        } else if rank < second {
            2
        } else if rank > worst {
            k
        } else {
            0
        };
        if rank < best {
            second = best;
            best = rank;
        } else if rank < second {
            second = rank;
        }
        worst = worst.max(rank);
        if strat.accepts(spec.variant, k, j) {
            return spec.realized_payoff(k, rank);
        }
    }
    0.0
}

/// Count, mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.count == 0 {
            return other;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let weight = other.count as f64 / count as f64;
        Moments {
            count,
            mean: self.mean + delta * weight,
            m2: self.m2 + other.m2 + delta * delta * self.count as f64 * weight,
        }
    }
}

fn run_batch(spec: &ProblemSpec, strat: &Strategy, seed: u64, batch: u64, size: u64) -> Moments {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(batch);
    let mut order: Vec<u32> = (1..=spec.n).collect();
    let mut moments = Moments::default();
    for _ in 0..size {
        order.shuffle(&mut rng);
        moments.push(run_strategy(&order, spec, strat));
    }
    moments
}

fn simulate(spec: &ProblemSpec, strat: &Strategy, samples: u64, seed: u64) -> Result<SimReport> {
    validate(spec, strat)?;
    if samples == 0 {
        return Err(Error::InvalidParameters(
            "samples must be at least 1".into(),
        ));
    }
    let batches = samples.div_ceil(BATCH_SIZE);
    let parts: Vec<Moments> = (0..batches)
        .into_par_iter()
        .map(|b| {
            run_batch(
                spec,
                strat,
                seed,
                b,
                BATCH_SIZE.min(samples - b * BATCH_SIZE),
            )
        })
        .collect();
    let total = parts.into_iter().fold(Moments::default(), Moments::merge);
    let std_error_defined = samples > 1;
    let std_error = if std_error_defined {
        (total.m2 / (samples - 1) as f64).sqrt() / (samples as f64).sqrt()
    } else {
        0.0
    };
    Ok(SimReport {
        spec: *spec,
        strategy: *strat,
        estimate: total.mean,
        samples,
        std_error,
        std_error_defined,
        ci95_low: total.mean - 1.96 * std_error,
        ci95_high: total.mean + 1.96 * std_error,
        seed,
        generator: GENERATOR,
    })
}

/// Estimate on the ambient rayon pool.
pub fn estimate(
    spec: &ProblemSpec,
    strat: &Strategy,
    samples: u64,
    seed: u64,
) -> Result<SimReport> {
    simulate(spec, strat, samples, seed)
}

/// Estimate on a dedicated pool of `threads` workers.
pub fn estimate_with_threads(
    spec: &ProblemSpec,
    strat: &Strategy,
    samples: u64,
    seed: u64,
    threads: usize,
) -> Result<SimReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| {
            Error::InvalidParameters(format!("cannot build a pool of {threads} threads: {e}"))
        })?;
    pool.install(|| simulate(spec, strat, samples, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{PayoffRegime, Variant};

    fn spec(variant: Variant, payoff: PayoffRegime, n: u32) -> ProblemSpec {
        ProblemSpec::new(variant, payoff, n).unwrap()
    }

    #[test]
    fn identity_order_first_candidate() {
        let s = spec(Variant::Classic, PayoffRegime::Binary, 5);
        assert_eq!(
            run_strategy(&[1, 2, 3, 4, 5], &s, &Strategy::OneThreshold { r: 0 }),
            1.0
        );
    }

    #[test]
    fn postdoc_trace() {
        let s = spec(Variant::Postdoc, PayoffRegime::Binary, 4);
        let r1 = Strategy::OneThreshold { r: 1 };
        // no candidate after the first is ever relatively second
        assert_eq!(run_strategy(&[2, 1, 4, 3], &s, &r1), 0.0);
        // interview 2 is relatively second and overall second
        assert_eq!(run_strategy(&[1, 2, 3, 4], &s, &r1), 1.0);
        assert_eq!(run_strategy(&[2, 1, 3, 4], &s, &r1), 0.0);
    }

    #[test]
    fn last_candidate_only_when_nice() {
        let s = spec(Variant::BestOrWorst, PayoffRegime::Binary, 4);
        let last = Strategy::OneThreshold { r: 3 };
        assert_eq!(run_strategy(&[2, 3, 4, 1], &s, &last), 1.0);
        assert_eq!(run_strategy(&[1, 2, 3, 4], &s, &last), 1.0);
        assert_eq!(run_strategy(&[1, 2, 4, 3], &s, &last), 0.0);
    }

    #[test]
    fn single_sample_report() {
        let s = spec(Variant::Classic, PayoffRegime::Perquisite, 10);
        let rep = estimate(&s, &Strategy::OneThreshold { r: 3 }, 1, 9).unwrap();
        assert!(!rep.std_error_defined);
        assert_eq!(rep.std_error, 0.0);
        assert!(rep.estimate == 0.0 || (1.0..=2.0).contains(&rep.estimate));
    }

    #[test]
    fn zero_samples_rejected() {
        let s = spec(Variant::Classic, PayoffRegime::Binary, 10);
        assert!(estimate(&s, &Strategy::OneThreshold { r: 3 }, 0, 1).is_err());
    }

    #[test]
    fn thread_count_does_not_change_the_report() {
        let s = spec(Variant::BestOrWorst, PayoffRegime::Cost, 30);
        let strat = Strategy::OneThreshold { r: 8 };
        let base = estimate_with_threads(&s, &strat, 50_000, 42, 1).unwrap();
        for threads in [2, 3, 8] {
            assert_eq!(
                estimate_with_threads(&s, &strat, 50_000, 42, threads).unwrap(),
                base
            );
        }
        assert_ne!(
            estimate_with_threads(&s, &strat, 50_000, 43, 1)
                .unwrap()
                .estimate,
            base.estimate
        );
    }

    #[test]
    fn moments_merge_matches_sequential() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 11) as f64 / 7.0).collect();
        let mut whole = Moments::default();
        xs.iter().for_each(|&x| whole.push(x));
        let (mut a, mut b) = (Moments::default(), Moments::default());
        xs[..313].iter().for_each(|&x| a.push(x));
        xs[313..].iter().for_each(|&x| b.push(x));
        let merged = a.merge(b);
        assert!((merged.mean - whole.mean).abs() < 1e-13);
        assert!((merged.m2 - whole.m2).abs() < 1e-9);
    }
}
