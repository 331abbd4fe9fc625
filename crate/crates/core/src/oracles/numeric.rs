//! Floating-point series oracle: sums `x^(n)·P_x(k, λ)` term by term with a
//! certified truncation bound.
//!
//! PMF values come from the compound-Poisson recurrence
//!
//! ```text
//! x·P_x = λ · Σ_{j=1..min(x,k)} j·P_{x−j},      P₀ = e^{−kλ},
//! ```
//!
//! (differentiate the probability generating function), which costs O(k)
//! per term and needs only the last k values. The same recurrence in exact
//! rationals, [`pmf_weights_exact`], backs the PMF tables and is
//! cross-checked against the partition-sum definition in tests.

use std::collections::VecDeque;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{BigInt, BigRational};
use crate::moments::OrderParams;

/// Hard cap on the number of series terms before giving up.
const TERM_CAP: u64 = 1_000_000;

/// Exact PMF weights `W_0 … W_n_max` with `P_x = e^{−kλ}·W_x`, by the
/// recurrence `W_x = (λ/x)·Σ_{j=1..min(x,k)} j·W_{x−j}`.
pub fn pmf_weights_exact(
    params: OrderParams,
    lambda: &BigRational,
    n_max: u32,
) -> Vec<BigRational> {
    let k = params.k() as usize;
    let mut weights = Vec::with_capacity(n_max as usize + 1);
    weights.push(BigRational::one());
    for x in 1..=(n_max as usize) {
        let mut sum = BigRational::zero();
        for j in 1..=k.min(x) {
            sum += BigRational::from_integer(BigInt::from(j)) * &weights[x - j];
        }
        let scale = lambda / BigRational::from_integer(BigInt::from(x));
        weights.push(scale * sum);
    }
    weights
}

/// Streaming float PMF values P₀, P₁, … for fixed (k, λ).
struct PmfSeries {
    lambda: f64,
    k: usize,
    x: u64,
    recent: VecDeque<f64>, // front = P_{x−1}
}

impl PmfSeries {
    fn new(params: OrderParams, lambda: f64) -> Self {
        PmfSeries {
            lambda,
            k: params.k() as usize,
            x: 0,
            recent: VecDeque::with_capacity(params.k() as usize + 1),
        }
    }
}

impl Iterator for PmfSeries {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let p = if self.x == 0 {
            (-(self.k as f64) * self.lambda).exp()
        } else {
            let mut sum = 0.0;
            for j in 1..=self.k.min(self.x as usize) {
                sum += j as f64 * self.recent[j - 1];
            }
            self.lambda / self.x as f64 * sum
        };
        self.recent.push_front(p);
        self.recent.truncate(self.k);
        self.x += 1;
        Some(p)
    }
}

fn falling_factorial_f64(x: u64, n: u32) -> f64 {
    let mut f = 1.0;
    for i in 0..u64::from(n) {
        f *= x as f64 - i as f64;
        if f == 0.0 {
            return 0.0;
        }
    }
    f
}

/// Definitional check of the moments: sums `x^(n)·P_x(k, λ)` until a
/// certified geometric tail bound drops below `epsilon` relative to the
/// partial sum.
///
/// The stopping test begins at `x ≥ max(n, ⌈k·mean⌉)` where the terms are
/// already past their peak. Once the term ratio stays below 1/2 for three
/// consecutive steps, the tail beyond `x` is bounded by
/// `term(x)·t/(1−t)`; the sum is returned when that bound is below
/// `epsilon · sum`. Failing to certify within 10⁶ terms is an error.
pub fn numeric_factorial_moment(
    n: u32,
    params: OrderParams,
    lambda: f64,
    epsilon: f64,
) -> Result<f64> {
    if lambda.is_nan() || lambda <= 0.0 {
        return Err(Error::LambdaOutOfRange {
            requirement: "> 0",
            value: lambda.to_string(),
        });
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        // also rejects NaN
        return Err(Error::BadTolerance(epsilon));
    }

    let k = f64::from(params.k());
    let mean = k * (k + 1.0) / 2.0 * lambda;
    let start = u64::from(n).max((k * mean).ceil() as u64);

    let mut pmf = PmfSeries::new(params, lambda);
    let mut sum = 0.0;
    let mut prev_term = 0.0;
    let mut streak = 0u32;
    for x in 0..TERM_CAP {
        let term = falling_factorial_f64(x, n) * pmf.next().expect("infinite series");
        sum += term;
        if x > start && prev_term > 0.0 {
            let ratio = term / prev_term;
            if ratio < 0.5 {
                streak += 1;
            } else {
                streak = 0;
            }
            if streak >= 3 {
                let tail_bound = prev_term * ratio / (1.0 - ratio);
                if tail_bound < epsilon * sum {
                    return Ok(sum);
                }
            }
        }
        prev_term = term;
    }
    Err(Error::TruncationFailure { cap: TERM_CAP })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::{factorial_moment_poly, pmf};
    use num_traits::ToPrimitive;

    fn params(k: u32) -> OrderParams {
        OrderParams::new(k).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn recurrence_matches_partition_sum_exactly() {
        // Both routes to the PMF weight are exact, so they must coincide.
        for k in 1..=4u32 {
            for lambda in [rat(1, 1), rat(2, 3), rat(7, 2)] {
                let weights = pmf_weights_exact(params(k), &lambda, 14);
                for n in 0..=14u32 {
                    let direct = pmf(n, params(k))
                        .with_lambda(lambda.clone())
                        .exact_factor()
                        .unwrap();
                    assert_eq!(weights[n as usize], direct, "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn first_moment_is_the_mean() {
        let m = numeric_factorial_moment(1, params(2), 1.0, 1e-10).unwrap();
        assert!((m - 3.0).abs() < 3.0 * 1e-9, "got {m}");
    }

    #[test]
    fn zeroth_moment_is_normalization() {
        for k in 1..=4 {
            let m = numeric_factorial_moment(0, params(k), 0.7, 1e-10).unwrap();
            assert!((m - 1.0).abs() < 1e-9, "k={k} got {m}");
        }
    }

    #[test]
    fn second_moment_order_two() {
        // poly_eval of 9λ² + 2λ at 1.
        let m = numeric_factorial_moment(2, params(2), 1.0, 1e-10).unwrap();
        assert!((m - 11.0).abs() < 11.0 * 1e-9, "got {m}");
    }

    #[test]
    fn matches_exact_evaluation_on_grid() {
        for k in 1..=5u32 {
            for n in 0..=6u32 {
                for lambda in [0.5, 1.0, 2.0] {
                    let exact = factorial_moment_poly(n, params(k))
                        .eval(&BigRational::from_float(lambda).unwrap())
                        .to_f64()
                        .unwrap();
                    let numeric = numeric_factorial_moment(n, params(k), lambda, 1e-10).unwrap();
                    let scale = exact.abs().max(1.0);
                    assert!(
                        (numeric - exact).abs() <= 1e-8 * scale,
                        "n={n} k={k} lambda={lambda}: {numeric} vs {exact}"
                    );
                }
            }
        }
    }

    #[test]
    fn argument_validation() {
        assert!(numeric_factorial_moment(1, params(2), 0.0, 1e-10).is_err());
        assert!(numeric_factorial_moment(1, params(2), -1.0, 1e-10).is_err());
        assert!(numeric_factorial_moment(1, params(2), 1.0, 0.0).is_err());
        assert!(numeric_factorial_moment(1, params(2), 1.0, 1.5).is_err());
    }
}
