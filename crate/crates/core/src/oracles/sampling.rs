//! Seeded Monte Carlo estimation of the falling-factorial moments.
//!
//! A variate of the Poisson distribution of order k is drawn from its
//! compound representation `X = Σ_{j=1..k} j·N_j` with `N_j` independent
//! Poisson(λ); the empirical law of X is exactly the order-k PMF, which
//! the tests verify bin by bin.
//!
//! # Reproducibility
//!
//! Trials are split into fixed chunks of 16384. Chunk i is generated by a
//! ChaCha8 stream keyed with `splitmix64(seed, i)` (the i-th output of the
//! SplitMix64 sequence started at `seed`), and chunk partial sums are
//! reduced in chunk order. The output is therefore a pure function of
//! `(k, λ, n_max, trials, seed)` — bit-identical across runs and across
//! worker counts, whether the chunks are processed sequentially or by
//! [`par_sample_moments`].

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::moments::{eval_f64, factorial_moment_poly, OrderParams};

/// Largest rate accepted by the inversion sampler. Sequential-search
/// inversion is exact and cheap for moderate λ; beyond this it would merely
/// be slow, so larger rates are rejected rather than silently degraded.
pub const MAX_LAMBDA: f64 = 30.0;

const CHUNK_TRIALS: u64 = 16_384;

/// One estimated moment with its Monte Carlo standard error.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentEstimate {
    /// Moment order n.
    pub order: u32,
    /// Sample mean of x^(n) over the trials.
    pub estimate: f64,
    /// √(sample variance / trials); zero when trials < 2.
    pub std_error: f64,
    /// Exact value of M_(n)(k, λ) for reference.
    pub exact: f64,
}

impl MomentEstimate {
    /// Standardized deviation from the exact value; infinite if the
    /// standard error vanishes while the estimate is off.
    pub fn z_score(&self) -> f64 {
        if self.estimate == self.exact {
            0.0
        } else {
            (self.estimate - self.exact) / self.std_error
        }
    }
}

/// Result of a Monte Carlo run.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleSummary {
    pub k: u32,
    pub lambda: f64,
    pub trials: u64,
    pub seed: u64,
    /// Estimates for orders 1..=n_max.
    pub estimates: Vec<MomentEstimate>,
}

/// Draws variates of the Poisson distribution of order k.
#[derive(Clone, Copy, Debug)]
pub struct OrderKSampler {
    k: u32,
    lambda: f64,
}

impl OrderKSampler {
    pub fn new(params: OrderParams, lambda: f64) -> Result<Self> {
        if lambda.is_nan() || lambda <= 0.0 {
            return Err(Error::LambdaOutOfRange {
                requirement: "> 0",
                value: lambda.to_string(),
            });
        }
        if lambda > MAX_LAMBDA {
            return Err(Error::LambdaTooLarge {
                lambda,
                max: MAX_LAMBDA,
            });
        }
        Ok(OrderKSampler {
            k: params.k(),
            lambda,
        })
    }

    /// One draw of X = Σ j·N_j.
    pub fn sample(&self, rng: &mut impl RngCore) -> u64 {
        let mut x = 0u64;
        for j in 1..=u64::from(self.k) {
            x += j * poisson_inversion(self.lambda, rng);
        }
        x
    }
}

/// Poisson variate by inversion with sequential search: exact for the
/// moderate rates this crate accepts.
fn poisson_inversion(lambda: f64, rng: &mut impl RngCore) -> u64 {
    let u = uniform_f64(rng);
    let mut x = 0u64;
    let mut p = (-lambda).exp();
    let mut acc = p;
    while u > acc {
        x += 1;
        p *= lambda / x as f64;
        acc += p;
        if p == 0.0 {
            break; // u in the far tail; acc can no longer grow
        }
    }
    x
}

fn uniform_f64(rng: &mut impl RngCore) -> f64 {
    // 53 random bits in [0, 1).
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// The i-th output of a SplitMix64 sequence seeded with `seed`.
fn splitmix64(seed: u64, i: u64) -> u64 {
    let mut z = seed.wrapping_add((i + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-chunk accumulators: Σ x^(n) and Σ (x^(n))² for n = 1..=n_max.
struct ChunkSums {
    sums: Vec<f64>,
    squares: Vec<f64>,
}

fn run_chunk(sampler: OrderKSampler, n_max: u32, trials: u64, chunk_seed: u64) -> ChunkSums {
    let mut rng = ChaCha8Rng::seed_from_u64(chunk_seed);
    let mut sums = vec![0.0; n_max as usize];
    let mut squares = vec![0.0; n_max as usize];
    for _ in 0..trials {
        let x = sampler.sample(&mut rng) as f64;
        let mut f = 1.0;
        for (i, (s, q)) in sums.iter_mut().zip(squares.iter_mut()).enumerate() {
            f *= x - i as f64;
            *s += f;
            *q += f * f;
        }
    }
    ChunkSums { sums, squares }
}

fn chunk_layout(trials: u64) -> impl Iterator<Item = (u64, u64)> {
    let chunks = trials.div_ceil(CHUNK_TRIALS);
    (0..chunks).map(move |c| {
        let len = CHUNK_TRIALS.min(trials - c * CHUNK_TRIALS);
        (c, len)
    })
}

fn summarize(
    params: OrderParams,
    lambda: f64,
    n_max: u32,
    trials: u64,
    seed: u64,
    chunks: Vec<ChunkSums>,
) -> SampleSummary {
    let mut sums = vec![0.0; n_max as usize];
    let mut squares = vec![0.0; n_max as usize];
    for chunk in chunks {
        for i in 0..n_max as usize {
            sums[i] += chunk.sums[i];
            squares[i] += chunk.squares[i];
        }
    }
    let t = trials as f64;
    let estimates = (1..=n_max)
        .map(|order| {
            let i = (order - 1) as usize;
            let mean = sums[i] / t;
            let std_error = if trials > 1 {
                let variance = ((squares[i] - sums[i] * sums[i] / t) / (t - 1.0)).max(0.0);
                (variance / t).sqrt()
            } else {
                0.0
            };
            let exact = eval_f64(&factorial_moment_poly(order, params), lambda);
            MomentEstimate {
                order,
                estimate: mean,
                std_error,
                exact,
            }
        })
        .collect();
    SampleSummary {
        k: params.k(),
        lambda,
        trials,
        seed,
        estimates,
    }
}

/// Monte Carlo estimates of M_(1) … M_(n_max) from `trials` draws.
pub fn sample_moments(
    params: OrderParams,
    lambda: f64,
    n_max: u32,
    trials: u64,
    seed: u64,
) -> Result<SampleSummary> {
    assert!(trials >= 1, "at least one trial is required");
    let sampler = OrderKSampler::new(params, lambda)?;
    let chunks: Vec<ChunkSums> = chunk_layout(trials)
        .map(|(c, len)| run_chunk(sampler, n_max, len, splitmix64(seed, c)))
        .collect();
    Ok(summarize(params, lambda, n_max, trials, seed, chunks))
}

/// Parallel variant of [`sample_moments`]; bit-identical output.
#[cfg(feature = "parallel")]
pub fn par_sample_moments(
    params: OrderParams,
    lambda: f64,
    n_max: u32,
    trials: u64,
    seed: u64,
) -> Result<SampleSummary> {
    use rayon::prelude::*;

    assert!(trials >= 1, "at least one trial is required");
    let sampler = OrderKSampler::new(params, lambda)?;
    let layout: Vec<(u64, u64)> = chunk_layout(trials).collect();
    let chunks: Vec<ChunkSums> = layout
        .par_iter()
        .map(|&(c, len)| run_chunk(sampler, n_max, len, splitmix64(seed, c)))
        .collect();
    Ok(summarize(params, lambda, n_max, trials, seed, chunks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::BigRational;
    use crate::moments::pmf;

    fn params(k: u32) -> OrderParams {
        OrderParams::new(k).unwrap()
    }

    #[test]
    fn identical_seed_identical_summary() {
        let a = sample_moments(params(3), 1.0, 3, 50_000, 7).unwrap();
        let b = sample_moments(params(3), 1.0, 3, 50_000, 7).unwrap();
        assert_eq!(a, b);
        let c = sample_moments(params(3), 1.0, 3, 50_000, 8).unwrap();
        assert_ne!(a, c);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_is_bit_identical() {
        let seq = sample_moments(params(3), 0.8, 4, 120_000, 99).unwrap();
        let par = par_sample_moments(params(3), 0.8, 4, 120_000, 99).unwrap();
        assert_eq!(seq, par);
        for (s, p) in seq.estimates.iter().zip(&par.estimates) {
            assert_eq!(s.estimate.to_bits(), p.estimate.to_bits());
            assert_eq!(s.std_error.to_bits(), p.std_error.to_bits());
        }
    }

    #[test]
    fn poisson_mean_within_five_sigma() {
        let summary = sample_moments(params(1), 1.0, 3, 200_000, 42).unwrap();
        for est in &summary.estimates {
            // M_(n)(1, λ) = λⁿ = 1 here.
            assert!((est.exact - 1.0).abs() < 1e-12);
            assert!(est.z_score().abs() < 5.0, "order {}: {est:?}", est.order);
        }
    }

    #[test]
    fn order_three_mean_within_five_sigma() {
        let summary = sample_moments(params(3), 1.0, 1, 200_000, 11).unwrap();
        assert!((summary.estimates[0].exact - 6.0).abs() < 1e-12);
        assert!(summary.estimates[0].z_score().abs() < 5.0);
    }

    #[test]
    fn lambda_bounds_are_enforced() {
        assert!(matches!(
            sample_moments(params(2), 31.0, 1, 10, 0),
            Err(Error::LambdaTooLarge { .. })
        ));
        assert!(sample_moments(params(2), 0.0, 1, 10, 0).is_err());
        assert!(sample_moments(params(2), -0.5, 1, 10, 0).is_err());
    }

    #[test]
    fn empirical_pmf_matches_exact_pmf() {
        // Per-bin agreement within 5·√(p(1−p)/trials) at 10⁶ draws.
        let trials = 1_000_000u64;
        let p = params(2);
        let lambda = 1.0;
        let sampler = OrderKSampler::new(p, lambda).unwrap();
        let mut counts = vec![0u64; 32];
        for chunk in 0..trials.div_ceil(CHUNK_TRIALS) {
            let len = CHUNK_TRIALS.min(trials - chunk * CHUNK_TRIALS);
            let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(2024, chunk));
            for _ in 0..len {
                let x = sampler.sample(&mut rng) as usize;
                if x < counts.len() {
                    counts[x] += 1;
                }
            }
        }
        for n in 0..=12u32 {
            let exact = pmf(n, p)
                .with_lambda(BigRational::from_float(lambda).unwrap())
                .numeric()
                .unwrap();
            let empirical = counts[n as usize] as f64 / trials as f64;
            let tolerance = 5.0 * (exact * (1.0 - exact) / trials as f64).sqrt();
            assert!(
                (empirical - exact).abs() <= tolerance,
                "bin {n}: empirical {empirical} vs exact {exact} (tol {tolerance})"
            );
        }
    }
}
