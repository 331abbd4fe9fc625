//! Exact arithmetic substrate: big integers, rationals, dense polynomials
//! in λ, and truncated power series with polynomial coefficients.
//!
//! Everything in this module is exact; no floating point is involved.
//! Scalars are backed by [`num_bigint`] / [`num_rational`], which maintain
//! the invariants we rely on (unbounded magnitude, lowest terms, positive
//! denominator). All values are immutable after construction and all
//! operations are pure functions, so concurrent use needs no
//! synchronization.

mod poly;
mod series;

pub use poly::{Coeff, LambdaPoly, Poly, RationalPoly};
pub use series::TruncatedSeries;

/// Exact integer of unbounded magnitude.
pub type BigInt = num_bigint::BigInt;

/// Exact rational, always in lowest terms with positive denominator.
pub type BigRational = num_rational::BigRational;

use num_traits::{One, Zero};

/// Binomial coefficient C(a, b).
///
/// Returns 0 when `b < 0` or `b > a`, so callers can use it without
/// range-checking the lower index.
pub fn binomial(a: u32, b: i64) -> BigInt {
    if b < 0 || b > i64::from(a) {
        return BigInt::zero();
    }
    let b = b as u32;
    // C(a, b) = C(a, a-b); evaluate the cheaper side.
    let b = b.min(a - b);
    let mut result = BigInt::one();
    for i in 0..b {
        result = result * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    result
}

/// Exact n!.
pub fn factorial(n: u32) -> BigInt {
    let mut result = BigInt::one();
    for i in 2..=n {
        result *= BigInt::from(i);
    }
    result
}

/// Falling factorial x(x−1)…(x−n+1).
///
/// The empty product (n = 0) is 1; the result is 0 when n > x.
pub fn falling_factorial(x: u64, n: u32) -> BigInt {
    if u64::from(n) > x {
        return BigInt::zero();
    }
    let mut result = BigInt::one();
    for i in 0..u64::from(n) {
        result *= BigInt::from(x - i);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Pascal-triangle brute force, independent of the multiplicative route.
    fn pascal_table(rows: usize) -> Vec<Vec<BigInt>> {
        let mut table: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for a in 1..rows {
            let prev = &table[a - 1];
            let mut row = vec![BigInt::one()];
            for b in 1..a {
                row.push(&prev[b - 1] + &prev[b]);
            }
            row.push(BigInt::one());
            table.push(row);
        }
        table
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(3, 2), BigInt::from(3));
        assert_eq!(binomial(8, 4), BigInt::from(70));
    }

    #[test]
    fn binomial_out_of_range_is_zero() {
        assert_eq!(binomial(4, 5), BigInt::zero());
        assert_eq!(binomial(4, -1), BigInt::zero());
        assert_eq!(binomial(0, 1), BigInt::zero());
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        let table = pascal_table(13);
        for a in 0..13u32 {
            for b in 0..=a {
                assert_eq!(
                    binomial(a, i64::from(b)),
                    table[a as usize][b as usize],
                    "C({a}, {b})"
                );
            }
        }
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(factorial(20), BigInt::from(2_432_902_008_176_640_000u64));
    }

    #[test]
    fn factorial_matches_running_product() {
        let mut product = BigInt::one();
        for n in 1..=25u32 {
            product *= BigInt::from(n);
            assert_eq!(factorial(n), product, "{n}!");
        }
    }

    #[test]
    fn falling_factorial_values() {
        assert_eq!(falling_factorial(5, 0), BigInt::one());
        assert_eq!(falling_factorial(5, 2), BigInt::from(20));
        assert_eq!(falling_factorial(3, 4), BigInt::zero());
    }

    #[test]
    fn falling_factorial_factorial_identity() {
        // x^(n) = x! / (x-n)! for x >= n.
        for x in 0..=12u64 {
            for n in 0..=x as u32 {
                assert_eq!(
                    &falling_factorial(x, n) * factorial(x as u32 - n),
                    factorial(x as u32)
                );
            }
        }
    }
}
