//! Factorial moment generating function oracle.
//!
//! For the Poisson distribution of order k the FMGF is
//! `M(t) = e^{−kλ}·e^{λ(t + t² + … + t^k)}`, and `M_(n)` is the n-th
//! derivative of `M` at t = 1. Substituting t = 1 + u, the factor
//! `e^{−kλ}` cancels the constant term of the exponent exactly, leaving
//!
//! ```text
//! M(1 + u) = exp(λ·D(u)),   D(u) = Σ_{j=1..k} ((1 + u)^j − 1),
//! ```
//!
//! so that `M_(n) = n!·[uⁿ] exp(λ·D(u))`. The expansion runs entirely in
//! exact rational series arithmetic; the binomial expansions of `(1 + u)^j`
//! are produced by repeated series multiplication, keeping this route
//! independent of the partition enumeration used by the moment engine.

use num_traits::One;

use crate::exact::{factorial, BigRational, LambdaPoly, RationalPoly, TruncatedSeries};
use crate::moments::OrderParams;

/// `M_(n)(k, λ)` via the generating function, as an exact polynomial.
///
/// Agrees with [`crate::moments::factorial_moment_poly`] coefficient for
/// coefficient.
pub fn fmgf_moment_poly(n: u32, params: OrderParams) -> LambdaPoly {
    let order = n as usize;
    let one = TruncatedSeries::one(order);
    let one_plus_u =
        TruncatedSeries::from_coeffs(order, vec![RationalPoly::one(), RationalPoly::one()]);

    // D(u) = Σ_j ((1+u)^j − 1), built by incremental multiplication.
    let mut power = one.clone();
    let mut d = TruncatedSeries::zero(order);
    for _ in 1..=params.k() {
        power = power.mul(&one_plus_u);
        d = d.add(&power.sub(&one));
    }

    let lambda = RationalPoly::monomial(BigRational::one(), 1);
    let expanded = d
        .scale_poly(&lambda)
        .exp()
        .expect("e^{-k lambda} cancels the constant term exactly");

    let moment = expanded
        .coeff(order)
        .scale(&BigRational::from_integer(factorial(n)));
    moment
        .to_integer()
        .expect("factorial moment coefficients are integers")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{BigInt, Poly};
    use crate::moments::factorial_moment_poly;

    fn params(k: u32) -> OrderParams {
        OrderParams::new(k).unwrap()
    }

    fn ipoly(coeffs: &[i64]) -> LambdaPoly {
        Poly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn zeroth_moment_is_one() {
        for k in 1..=5 {
            assert_eq!(fmgf_moment_poly(0, params(k)), LambdaPoly::one());
        }
    }

    #[test]
    fn second_moment_order_two() {
        assert_eq!(fmgf_moment_poly(2, params(2)), ipoly(&[0, 2, 9]));
    }

    #[test]
    fn third_moment_order_three() {
        // κ = (6, 4, 1) at k = 3: κ₁³λ³ + 6κ₁κ₂λ² + 6κ₃λ
        assert_eq!(fmgf_moment_poly(3, params(3)), ipoly(&[0, 6, 144, 216]));
    }

    #[test]
    fn agrees_with_moment_engine() {
        for k in 1..=5u32 {
            for n in 0..=8u32 {
                assert_eq!(
                    fmgf_moment_poly(n, params(k)),
                    factorial_moment_poly(n, params(k)),
                    "n={n} k={k}"
                );
            }
        }
    }
}
