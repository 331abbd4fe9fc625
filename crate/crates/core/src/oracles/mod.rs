//! Independent verification routes for the factorial moments.
//!
//! Three oracles recompute `M_(n)(k, λ)` without touching the
//! combinatorial-sum engine in [`crate::moments`]:
//!
//! * [`fmgf_moment_poly`] — series expansion of the factorial moment
//!   generating function at t = 1,
//! * [`charalambides_moment_poly`] — Charalambides' 1986 formula via the
//!   polynomial-power coefficients [`q_value`],
//! * [`numeric_factorial_moment`] / [`sample_moments`] — floating-point
//!   series summation and seeded Monte Carlo.
//!
//! The first two are exact, so agreement with the engine is required to be
//! bit-for-bit; the numeric routes carry certified or statistical error
//! bounds.

mod charalambides;
mod fmgf;
mod numeric;
mod sampling;

pub use charalambides::{charalambides_moment_poly, q_value, QTable};
pub use fmgf::fmgf_moment_poly;
pub use numeric::{numeric_factorial_moment, pmf_weights_exact};
pub use sampling::{sample_moments, MomentEstimate, OrderKSampler, SampleSummary, MAX_LAMBDA};

#[cfg(feature = "parallel")]
pub use sampling::par_sample_moments;
