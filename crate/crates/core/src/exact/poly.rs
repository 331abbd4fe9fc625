//! Dense univariate polynomials with exact coefficients.
//!
//! The representation is a coefficient vector indexed by power (index 0 is
//! the constant term) with no trailing zero coefficients; the zero
//! polynomial is the empty vector. Moment polynomials are dense between
//! their lowest power ⌈n/k⌉ and their degree n, so a dense layout wastes
//! nothing. Multiplication is schoolbook, which is ample at the scales this
//! crate targets (degrees well below a few hundred).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{BigInt, BigRational};

/// Coefficient ring required by [`Poly`].
pub trait Coeff: Clone + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self> {}

impl<T> Coeff for T where T: Clone + PartialEq + Zero + One + Neg<Output = T> + Sub<Output = T> {}

/// Dense polynomial over an exact coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<C: Coeff> {
    coeffs: Vec<C>,
}

/// Polynomial in the rate λ with integer coefficients — the shape of every
/// factorial moment `M_(n)(k, λ)`.
pub type LambdaPoly = Poly<BigInt>;

/// Polynomial in λ with rational coefficients, used for intermediate series
/// arithmetic before integrality of the final coefficients is established.
pub type RationalPoly = Poly<BigRational>;

fn trim<C: Coeff>(mut coeffs: Vec<C>) -> Vec<C> {
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    coeffs
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial `c·λ^power`.
    pub fn monomial(c: C, power: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![C::zero(); power + 1];
        coeffs[power] = c;
        Poly { coeffs }
    }

    /// Builds a polynomial from coefficients indexed by power, trimming
    /// trailing zeros.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        Poly {
            coeffs: trim(coeffs),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest power with a nonzero coefficient, or `None` for zero.
    pub fn lowest_power(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Coefficients indexed by power; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of `λ^power`; zero beyond the degree.
    pub fn coeff(&self, power: usize) -> C {
        self.coeffs.get(power).cloned().unwrap_or_else(C::zero)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiplies by `λ^by`.
    pub fn shift_up(&self, by: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![C::zero(); by];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }
}

impl<C: Coeff> Zero for Poly<C> {
    fn zero() -> Self {
        Poly::zero()
    }

    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
}

impl<C: Coeff> Add for Poly<C> {
    type Output = Poly<C>;

    fn add(self, rhs: Poly<C>) -> Poly<C> {
        &self + &rhs
    }
}

impl<C: Coeff> Add for &Poly<C> {
    type Output = Poly<C>;

    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let (longer, shorter) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = longer.coeffs.clone();
        for (i, c) in shorter.coeffs.iter().enumerate() {
            coeffs[i] = coeffs[i].clone() + c.clone();
        }
        Poly::from_coeffs(coeffs)
    }
}

impl<C: Coeff> Sub for &Poly<C> {
    type Output = Poly<C>;

    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), C::zero());
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] = coeffs[i].clone() - c.clone();
        }
        Poly::from_coeffs(coeffs)
    }
}

impl<C: Coeff> Mul for &Poly<C> {
    type Output = Poly<C>;

    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl LambdaPoly {
    /// Exact Horner evaluation at a rational point.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Widens to rational coefficients.
    pub fn to_rational(&self) -> RationalPoly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }
}

impl RationalPoly {
    /// Exact Horner evaluation at a rational point.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.clone();
        }
        acc
    }

    /// Narrows to integer coefficients; `None` if any coefficient has a
    /// denominator other than 1.
    pub fn to_integer(&self) -> Option<LambdaPoly> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.is_integer() {
                return None;
            }
            coeffs.push(c.to_integer());
        }
        Some(Poly::from_coeffs(coeffs))
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let unit = c.is_one();
            match (unit, power) {
                (_, 0) => write!(f, "{c}")?,
                (true, 1) => write!(f, "λ")?,
                (true, _) => write!(f, "λ^{power}")?,
                (false, 1) => write!(f, "{c}λ")?,
                (false, _) => write!(f, "{c}λ^{power}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ipoly(coeffs: &[i64]) -> LambdaPoly {
        Poly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn product_of_conjugates() {
        // (λ + 1)(λ − 1) = λ² − 1
        let a = ipoly(&[1, 1]);
        let b = ipoly(&[-1, 1]);
        assert_eq!(&a * &b, ipoly(&[-1, 0, 1]));
    }

    #[test]
    fn multiply_by_zero() {
        let p = ipoly(&[3, 0, 7]);
        assert_eq!(&p * &LambdaPoly::zero(), LambdaPoly::zero());
    }

    #[test]
    fn square_of_monomial() {
        let p = ipoly(&[0, 3]);
        assert_eq!(&p * &p, ipoly(&[0, 0, 9]));
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = ipoly(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p, ipoly(&[1, 2]));
        // Subtraction that cancels the leading term renormalizes.
        let q = ipoly(&[0, 0, 5]);
        assert_eq!((&q - &q), LambdaPoly::zero());
    }

    #[test]
    fn eval_moment_fixture() {
        // 9λ² + 2λ at λ = 1
        let p = ipoly(&[0, 2, 9]);
        assert_eq!(p.eval(&rat(1, 1)), rat(11, 1));
    }

    #[test]
    fn eval_edge_cases() {
        assert_eq!(LambdaPoly::zero().eval(&rat(7, 3)), rat(0, 1));
        for n in 0..6 {
            let p = LambdaPoly::monomial(BigInt::from(1), n);
            assert_eq!(p.eval(&rat(1, 1)), rat(1, 1));
        }
    }

    #[test]
    fn lowest_power_and_coeff() {
        let p = ipoly(&[0, 0, 0, 120, 1620]);
        assert_eq!(p.lowest_power(), Some(3));
        assert_eq!(p.coeff(3), BigInt::from(120));
        assert_eq!(p.coeff(9), BigInt::from(0));
    }

    #[test]
    fn rational_roundtrip() {
        let p = ipoly(&[0, 2, 9]);
        assert_eq!(p.to_rational().to_integer(), Some(p.clone()));
        let half = RationalPoly::constant(rat(1, 2));
        assert_eq!(half.to_integer(), None);
    }

    #[test]
    fn display_renders_terms() {
        assert_eq!(ipoly(&[0, 2, 9]).to_string(), "9λ^2 + 2λ");
        assert_eq!(ipoly(&[1]).to_string(), "1");
        assert_eq!(LambdaPoly::zero().to_string(), "0");
        assert_eq!(ipoly(&[0, 0, 1]).to_string(), "λ^2");
    }
}
