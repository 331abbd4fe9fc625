//! Verification oracle from Charalambides' (1986) factorial-moment formula
//! for discrete distributions of order k:
//!
//! ```text
//! M_(n) = n! · Σ_{r=0..n} λ^r · Q(n+r, r, k+1) / r!
//! ```
//!
//! where `Q(m, r, k+1)` is the coefficient of `t^m` in
//! `(Σ_{j=1..k} C(k+1, j+1)·t^{j+1})^r`. That extraction follows from the
//! generating identity for the partition polynomials `T_{n,r;k}(g₁,…,g_m)`
//! with `g_j = (j!/k)·C(k+1, j+1)` after dividing out the `k^{−r}·t^{−r}/r!`
//! normalization; the T polynomials themselves are never materialized.
//!
//! The powers are produced by exact repeated polynomial multiplication
//! rather than a multinomial formula — simpler, and negligible cost at the
//! sizes involved (m ≤ n + r).

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, BigInt, BigRational, LambdaPoly, Poly};
use crate::moments::OrderParams;

/// Powers of the base polynomial `B(t) = Σ_{j=1..k} C(k+1, j+1)·t^{j+1}`,
/// giving `Q(m, r, k+1) = [t^m] B(t)^r`.
///
/// `Q(0, 0) = 1`, and `Q(m, r) = 0` outside `2r ≤ m ≤ (k+1)r` since every
/// factor of `B^r` contributes between t² and t^{k+1}.
pub struct QTable {
    powers: Vec<LambdaPoly>, // powers[r] = B^r, in the indeterminate t
}

impl QTable {
    /// Builds B^0, B^1, …, B^max_r for the given order.
    pub fn new(params: OrderParams, max_r: u32) -> Self {
        let k = params.k();
        let mut base_coeffs = vec![BigInt::zero(); k as usize + 2];
        for j in 1..=k {
            base_coeffs[(j + 1) as usize] = binomial(k + 1, i64::from(j) + 1);
        }
        let base: LambdaPoly = Poly::from_coeffs(base_coeffs);

        let mut powers = Vec::with_capacity(max_r as usize + 1);
        powers.push(LambdaPoly::one());
        for r in 1..=max_r as usize {
            powers.push(&powers[r - 1] * &base);
        }
        QTable { powers }
    }

    pub fn max_r(&self) -> u32 {
        (self.powers.len() - 1) as u32
    }

    /// `Q(m, r, k+1)`; zero outside the support.
    pub fn get(&self, m: u32, r: u32) -> BigInt {
        assert!(
            r <= self.max_r(),
            "QTable built only up to r = {}",
            self.max_r()
        );
        self.powers[r as usize].coeff(m as usize)
    }
}

/// `Q(m, r, k+1)` computed standalone.
pub fn q_value(m: u32, r: u32, params: OrderParams) -> BigInt {
    QTable::new(params, r).get(m, r)
}

/// `M_(n)(k, λ)` via the Q-coefficient sum, as an exact polynomial.
///
/// Every coefficient `n!·Q(n+r, r, k+1)/r!` is checked to be a nonnegative
/// integer; a failure is reported as an internal inconsistency since the
/// formula guarantees integrality.
pub fn charalambides_moment_poly(n: u32, params: OrderParams) -> Result<LambdaPoly> {
    let table = QTable::new(params, n);
    let n_fact = factorial(n);
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    for r in 0..=n {
        let term = BigRational::new(&n_fact * table.get(n + r, r), factorial(r));
        if !term.is_integer() || term.is_negative() {
            return Err(Error::Inconsistency(format!(
                "coefficient n!*Q(n+r,r)/r! = {term} at n={n}, r={r} is not a nonnegative integer"
            )));
        }
        coeffs.push(term.to_integer());
    }
    Ok(Poly::from_coeffs(coeffs))
}
