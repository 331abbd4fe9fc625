//! Factorial moments, PMF, mean/variance and coefficient structure of the
//! Poisson distribution of order k.
//!
//! The central operation is [`factorial_moment_poly`]: the n-th factorial
//! moment as an exact polynomial in λ,
//!
//! ```text
//! M_(n)(k, λ) = n! · Σ  Π_{j=1..k}  (λ^{n_j} / n_j!) · κ_j^{n_j}
//! ```
//!
//! summed over all multiplicity vectors with n₁ + 2n₂ + … + k·n_k = n,
//! where κ_j = C(k+1, j+1). Everything here is exact; the one floating
//! point helper is [`eval_f64`].

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, BigInt, BigRational, LambdaPoly, Poly};
use crate::partitions::{enumerate_weighted, PartsVector};

/// Order k ≥ 1 of the distribution. k = 1 is the standard Poisson law.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderParams {
    k: u32,
}

impl OrderParams {
    pub fn new(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(OrderParams { k })
    }

    pub fn k(&self) -> u32 {
        self.k
    }
}

/// κ_j = C(k+1, j+1), the weight attached to parts of size j.
///
/// Zero for j > k, which is what truncates the moment sum.
pub fn kappa(params: OrderParams, j: u32) -> BigInt {
    assert!(j >= 1, "kappa is indexed from 1");
    binomial(params.k + 1, i64::from(j) + 1)
}

/// One summand of the moment sum: the power of λ it lands on and its
/// integer contribution.
///
/// The rational prefactor n!/Π n_j! is exact and asserted integral after
/// multiplication by Π κ_j^{n_j}; a failure would indicate an enumeration
/// bug, so it is a hard panic rather than a recoverable error.
fn moment_summand(n_fact: &BigInt, parts: &PartsVector, params: OrderParams) -> (usize, BigInt) {
    let mut denom = BigInt::one();
    let mut kappa_product = BigInt::one();
    for (j, m) in parts.nonzero() {
        denom *= factorial(m);
        kappa_product *= kappa(params, j).pow(m);
    }
    let term = BigRational::new(n_fact * kappa_product, denom);
    assert!(
        term.is_integer() && !term.is_negative(),
        "moment summand must be a nonnegative integer"
    );
    (parts.total_parts() as usize, term.to_integer())
}

/// The n-th factorial moment M_(n)(k, λ) as an exact polynomial in λ.
///
/// M_(0) = 1; for n ≥ 1 the polynomial has degree n, no constant term,
/// and nonnegative integer coefficients.
pub fn factorial_moment_poly(n: u32, params: OrderParams) -> LambdaPoly {
    let n_fact = factorial(n);
    let mut acc = vec![BigInt::zero(); n as usize + 1];
    for parts in enumerate_weighted(n, params.k).expect("k >= 1") {
        let (power, coeff) = moment_summand(&n_fact, &parts, params);
        acc[power] += coeff;
    }
    Poly::from_coeffs(acc)
}

/// Data-parallel variant of [`factorial_moment_poly`].
///
/// All summands are exact integers, so the reduction order is immaterial
/// and the result is bit-identical to the sequential routine.
#[cfg(feature = "parallel")]
pub fn par_factorial_moment_poly(n: u32, params: OrderParams) -> LambdaPoly {
    use rayon::prelude::*;

    let n_fact = factorial(n);
    let parts: Vec<PartsVector> = enumerate_weighted(n, params.k).expect("k >= 1").collect();
    let len = n as usize + 1;
    let acc = parts
        .par_iter()
        .fold(
            || vec![BigInt::zero(); len],
            |mut acc, parts| {
                let (power, coeff) = moment_summand(&n_fact, parts, params);
                acc[power] += coeff;
                acc
            },
        )
        .reduce(
            || vec![BigInt::zero(); len],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Poly::from_coeffs(acc)
}

/// Closed form of M_(n)(2, λ): with n₂ = s and n₁ = n − 2s the moment sum
/// collapses to a single loop over s,
///
/// ```text
/// M_(n)(2, λ) = Σ_{s=0..⌊n/2⌋}  n!/((n−2s)!·s!) · κ₁^{n−2s} · κ₂^s · λ^{n−s}
/// ```
///
/// with κ₁ = 3, κ₂ = 1. Agrees with `factorial_moment_poly(n, k = 2)`
/// exactly; kept as an independent cross-check of the enumerator.
pub fn order2_moment_poly(n: u32) -> LambdaPoly {
    let n_fact = factorial(n);
    let kappa1 = BigInt::from(3);
    let mut acc = vec![BigInt::zero(); n as usize + 1];
    for s in 0..=(n / 2) {
        let denom = factorial(n - 2 * s) * factorial(s);
        let coeff = BigRational::new(&n_fact * kappa1.pow(n - 2 * s), denom);
        assert!(coeff.is_integer(), "k = 2 prefactor must be integral");
        acc[(n - s) as usize] += coeff.to_integer();
    }
    Poly::from_coeffs(acc)
}

/// P_n(k, λ) with the transcendental factor kept symbolic:
/// `P_n = e^{−kλ} · weight(λ) / denom`, where `weight` has nonnegative
/// integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PmfValue {
    weight: LambdaPoly,
    denom: BigInt,
    lambda: Option<BigRational>,
    k: u32,
    n: u32,
}

impl PmfValue {
    pub fn weight(&self) -> &LambdaPoly {
        &self.weight
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn lambda(&self) -> Option<&BigRational> {
        self.lambda.as_ref()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Attaches a rate so the numeric helpers have a point to evaluate at.
    pub fn with_lambda(mut self, lambda: BigRational) -> Self {
        self.lambda = Some(lambda);
        self
    }

    /// The exact rational P_n / e^{−kλ}, if a rate is attached.
    pub fn exact_factor(&self) -> Option<BigRational> {
        let lambda = self.lambda.as_ref()?;
        Some(self.weight.eval(lambda) / BigRational::from_integer(self.denom.clone()))
    }

    /// Floating-point P_n. The only inexact step is the final multiply by
    /// a float `e^{−kλ}`, so the error is a few ulps.
    pub fn numeric(&self) -> Option<f64> {
        let lambda = self.lambda.as_ref()?.to_f64()?;
        let factor = self.exact_factor()?.to_f64()?;
        Some((-f64::from(self.k) * lambda).exp() * factor)
    }
}

/// The PMF weight of the Poisson distribution of order k:
///
/// ```text
/// P_n(k, λ) = e^{−kλ} · Σ  Π_{j=1..k}  λ^{n_j} / n_j!
/// ```
///
/// summed over the same multiplicity vectors as the moment sum. The
/// partition terms are cleared to a single common denominator.
pub fn pmf(n: u32, params: OrderParams) -> PmfValue {
    let mut denoms = Vec::new();
    for parts in enumerate_weighted(n, params.k).expect("k >= 1") {
        let mut d = BigInt::one();
        for (_, m) in parts.nonzero() {
            d *= factorial(m);
        }
        denoms.push((parts.total_parts() as usize, d));
    }
    let common = denoms.iter().fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
    let mut acc = vec![BigInt::zero(); n as usize + 1];
    for (power, d) in denoms {
        acc[power] += &common / d;
    }
    PmfValue {
        weight: Poly::from_coeffs(acc),
        denom: common,
        lambda: None,
        k: params.k,
        n,
    }
}

fn require_nonnegative(lambda: &BigRational) -> Result<()> {
    if lambda.is_negative() {
        return Err(Error::LambdaOutOfRange {
            requirement: ">= 0",
            value: lambda.to_string(),
        });
    }
    Ok(())
}

/// Mean k(k+1)/2 · λ, exact.
pub fn mean(params: OrderParams, lambda: &BigRational) -> Result<BigRational> {
    require_nonnegative(lambda)?;
    let k = BigInt::from(params.k);
    let scale = BigRational::new(&k * (&k + 1), BigInt::from(2));
    Ok(scale * lambda)
}

/// Variance k(k+1)(2k+1)/6 · λ, exact.
pub fn variance(params: OrderParams, lambda: &BigRational) -> Result<BigRational> {
    require_nonnegative(lambda)?;
    let k = BigInt::from(params.k);
    let scale = BigRational::new(&k * (&k + 1) * (BigInt::from(2) * &k + 1), BigInt::from(6));
    Ok(scale * lambda)
}

/// Variance recovered from the factorial moments via
/// σ² = M_(2) + M_(1) − M_(1)², evaluated exactly. Must agree with
/// [`variance`] for every input.
pub fn variance_from_factorials(params: OrderParams, lambda: &BigRational) -> Result<BigRational> {
    require_nonnegative(lambda)?;
    let m1 = factorial_moment_poly(1, params).eval(lambda);
    let m2 = factorial_moment_poly(2, params).eval(lambda);
    Ok(m2 + &m1 - &m1 * &m1)
}

/// Lowest power of λ appearing in M_(n)(k, λ), namely
/// ⌈n/k⌉ = ⌊(n+k−1)/k⌋: the moment polynomial runs from λ^⌈n/k⌉ up to λⁿ
/// with nothing missing in between.
pub fn lowest_degree(n: u32, params: OrderParams) -> u32 {
    assert!(n >= 1, "M_(0) = 1 has no power of lambda");
    n.div_ceil(params.k)
}

fn rational_to_coeff(value: BigRational, what: &str) -> Result<BigInt> {
    if !value.is_integer() || value.is_negative() {
        return Err(Error::Inconsistency(format!(
            "{what} produced non-integer or negative value {value}"
        )));
    }
    Ok(value.to_integer())
}

/// Closed forms for selected coefficients of M_(n)(k, λ).
///
/// Supported powers and their validity ranges:
///
/// * `power = n`   (k ≥ 1, n ≥ 1): `(k(k+1)/2)^n`
/// * `power = n−1` (k ≥ 2, n ≥ 2): `n(n−1)/3 · (k(k+1)/2)^{n−1} · (k−1)`
/// * `power = n−2` (k ≥ 3, n ≥ 3):
///   `1/6 · C(n,3) · (k(k+1)/2)^{n−2} · (k−1) · ((2n−3)k − 2n)`
/// * `power = n−3` (k ≥ 4, n ≥ 4): `2/135 · C(n,4) · (k(k+1)/2)^{n−3} ·
///   (k−1) · ((10n²−45n+47)k² − 5(4n²−9n−1)k + 2(5n²+1))`
/// * `power = 1`   (k ≥ 1, n ≥ 1): `n! · C(k+1, n+1)`, zero when k < n
///
/// When `power = 1` coincides with one of the `n−i` cases both formulas
/// give the same value; the lowest-power form is used since it is valid
/// for every k. The stated ranges are enforced, not extrapolated.
pub fn coeff_closed_form(n: u32, params: OrderParams, power: i64) -> Result<BigInt> {
    let k = params.k;
    let n_i = i64::from(n);
    let kappa1 = BigRational::new(BigInt::from(k) * BigInt::from(k + 1), BigInt::from(2));
    let km1 = BigRational::from_integer(BigInt::from(k) - 1);

    if power == 1 && n >= 1 {
        // Lowest power: n!·κ_n, valid for every k >= 1.
        return Ok(factorial(n) * binomial(k + 1, n_i + 1));
    }
    if power == n_i && n >= 1 {
        return rational_to_coeff(kappa1.pow(n_i as i32), "leading coefficient");
    }
    if power == n_i - 1 {
        if n < 2 || k < 2 {
            return Err(Error::UnsupportedCoefficient {
                n,
                power,
                reason: "the lambda^(n-1) form requires k >= 2 and n >= 2",
            });
        }
        let scale = BigRational::new(BigInt::from(n) * BigInt::from(n - 1), BigInt::from(3));
        return rational_to_coeff(
            scale * kappa1.pow(n_i as i32 - 1) * km1,
            "lambda^(n-1) form",
        );
    }
    if power == n_i - 2 {
        if n < 3 || k < 3 {
            return Err(Error::UnsupportedCoefficient {
                n,
                power,
                reason: "the lambda^(n-2) form requires k >= 3 and n >= 3",
            });
        }
        let bracket = BigRational::from_integer(
            (BigInt::from(2) * n - 3) * BigInt::from(k) - BigInt::from(2) * n,
        );
        let scale = BigRational::new(binomial(n, 3), BigInt::from(6));
        return rational_to_coeff(
            scale * kappa1.pow(n_i as i32 - 2) * km1 * bracket,
            "lambda^(n-2) form",
        );
    }
    if power == n_i - 3 {
        if n < 4 || k < 4 {
            return Err(Error::UnsupportedCoefficient {
                n,
                power,
                reason: "the lambda^(n-3) form requires k >= 4 and n >= 4",
            });
        }
        let n_sq = BigInt::from(n) * BigInt::from(n);
        let k_big = BigInt::from(k);
        let bracket = (BigInt::from(10) * &n_sq - BigInt::from(45) * n + 47) * &k_big * &k_big
            - BigInt::from(5) * (BigInt::from(4) * &n_sq - BigInt::from(9) * n - 1) * &k_big
            + BigInt::from(2) * (BigInt::from(5) * &n_sq + 1);
        let scale = BigRational::new(BigInt::from(2) * binomial(n, 4), BigInt::from(135));
        return rational_to_coeff(
            scale * kappa1.pow(n_i as i32 - 3) * km1 * BigRational::from_integer(bracket),
            "lambda^(n-3) form",
        );
    }
    Err(Error::UnsupportedCoefficient {
        n,
        power,
        reason: "closed forms exist only for powers n, n-1, n-2, n-3 and 1",
    })
}

/// Float Horner evaluation of a moment polynomial — the single
/// floating-point evaluation helper of the symbolic path. Error growth is
/// bounded by about one ulp per coefficient.
pub fn eval_f64(poly: &LambdaPoly, lambda: f64) -> f64 {
    let mut acc = 0.0;
    for c in poly.coeffs().iter().rev() {
        acc = acc * lambda + c.to_f64().expect("BigInt -> f64 is total");
    }
    acc
}
