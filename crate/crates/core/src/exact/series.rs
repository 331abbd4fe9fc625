//! Truncated power series in an expansion variable `u`, with coefficients
//! that are rational polynomials in λ.
//!
//! This is the workhorse of the generating-function oracle: expanding
//! `M(t)` around t = 1 means working with exact series in u = t − 1 whose
//! coefficients still carry λ symbolically. All arithmetic is exact
//! rational and truncates consistently at the order fixed at construction.

use num_traits::One;

use super::{BigInt, BigRational, RationalPoly};
use crate::error::{Error, Result};

/// Power series in `u` truncated after `u^order`, with [`RationalPoly`]
/// coefficients.
///
/// The truncation order is fixed at construction. Combining series of
/// different orders takes the minimum order; debug builds treat a mismatch
/// as a bug.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<RationalPoly>, // index = power of u, length = order + 1
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![RationalPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = TruncatedSeries::zero(order);
        s.coeffs[0] = RationalPoly::one();
        s
    }

    /// Series with the given coefficients of u⁰, u¹, …, padded with zeros
    /// (or truncated) to the requested order.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<RationalPoly>) -> Self {
        coeffs.resize(order + 1, RationalPoly::zero());
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient polynomial of `u^power`.
    pub fn coeff(&self, power: usize) -> &RationalPoly {
        &self.coeffs[power]
    }

    fn common_order(&self, rhs: &Self) -> usize {
        debug_assert_eq!(
            self.order(),
            rhs.order(),
            "mixing series of different truncation orders"
        );
        self.order().min(rhs.order())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.common_order(rhs);
        TruncatedSeries {
            coeffs: (0..=order)
                .map(|i| &self.coeffs[i] + &rhs.coeffs[i])
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.common_order(rhs);
        TruncatedSeries {
            coeffs: (0..=order)
                .map(|i| &self.coeffs[i] - &rhs.coeffs[i])
                .collect(),
        }
    }

    /// Product truncated at the common order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.common_order(rhs);
        let mut coeffs = vec![RationalPoly::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(&self.coeffs[i] * &rhs.coeffs[j]);
            }
        }
        TruncatedSeries { coeffs }
    }

    /// Integer power by repeated squaring, truncated at this series' order.
    pub fn pow(&self, exp: u32) -> Self {
        let mut result = TruncatedSeries::one(self.order());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiplies every coefficient by the polynomial `p` (in λ).
    pub fn scale_poly(&self, p: &RationalPoly) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    /// Exponential of a series with zero constant term.
    ///
    /// Uses the recurrence `E_j = (1/j)·Σ_{i=1..j} i·S_i·E_{j−i}` obtained
    /// from E′ = S′·E, entirely in exact rationals. A nonzero constant term
    /// is an error: the caller is expected to have cancelled any constant
    /// factor (for the FMGF, `e^{−kλ}` against `e^{λk}`) beforehand.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm(self.coeffs[0].to_string()));
        }
        let order = self.order();
        let mut out = vec![RationalPoly::zero(); order + 1];
        out[0] = RationalPoly::one();
        for j in 1..=order {
            let mut sum = RationalPoly::zero();
            for i in 1..=j {
                if self.coeffs[i].is_zero() {
                    continue;
                }
                let weighted = self.coeffs[i].scale(&BigRational::from_integer(BigInt::from(i)));
                sum = &sum + &(&weighted * &out[j - i]);
            }
            let inv_j = BigRational::new(BigInt::one(), BigInt::from(j));
            out[j] = sum.scale(&inv_j);
        }
        Ok(TruncatedSeries { coeffs: out })
    }
}
