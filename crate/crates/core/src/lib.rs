//! Exact computation of factorial moments of the Poisson distribution of
//! order k.
//!
//! The Poisson distribution of order k is the law of `X = Σ_{j=1..k} j·N_j`
//! where `N_1, …, N_k` are independent Poisson(λ) variables; at k = 1 it is
//! the standard Poisson distribution. Its n-th factorial moment
//! `M_(n)(k, λ) = E[X(X−1)…(X−n+1)]` is a polynomial in λ of degree n with
//! nonnegative integer coefficients.
//!
//! The crate computes `M_(n)` three independent ways and cross-checks them:
//!
//! * [`moments::factorial_moment_poly`] — a combinatorial sum over the
//!   multiplicity vectors `(n_1, …, n_k)` with `n_1 + 2n_2 + … + k·n_k = n`,
//! * [`oracles::fmgf_moment_poly`] — n-th derivative of the factorial moment
//!   generating function at t = 1, by truncated power series arithmetic,
//! * [`oracles::charalambides_moment_poly`] — Charalambides' (1986) formula
//!   `n! Σ_r λ^r Q(n+r, r, k+1)/r!`.
//!
//! All three routes use exact arbitrary-precision arithmetic, so agreement is
//! bit-for-bit. A numeric series oracle and a seeded Monte Carlo sampler
//! provide two further, floating-point cross-checks.
//!
//! With the default `parallel` feature the embarrassingly parallel kernels
//! (the moment sum at large n, Monte Carlo trials, the verification grid)
//! have rayon-backed `par_*` variants that produce bit-identical results to
//! their sequential counterparts. Disable default features for a
//! sequential-only build.

pub mod error;
pub mod exact;
pub mod moments;
pub mod oracles;
pub mod partitions;
pub mod verify;

pub use error::Error;
pub use exact::{BigInt, BigRational};
pub use moments::OrderParams;
