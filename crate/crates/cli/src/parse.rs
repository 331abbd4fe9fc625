//! Exact parsing of rate arguments.
//!
//! λ is accepted either as a fraction `p/q` or as a decimal string; both
//! forms are converted to an exact rational, so floats never enter the
//! symbolic path.

use std::str::FromStr;

use poisson_order_k::{BigInt, BigRational};

/// Parses `p/q` or a (signed) decimal such as `0.5` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rate".to_string());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| format!("bad numerator in {s:?}"))?;
        let den = BigInt::from_str(den.trim()).map_err(|_| format!("bad denominator in {s:?}"))?;
        if den == BigInt::from(0) {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(BigRational::new(num, den));
    }
    let (integer, fraction) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if fraction.len() > 64 {
        return Err(format!("too many decimal digits in {s:?}"));
    }
    let digits = format!("{integer}{fraction}");
    let numerator = BigInt::from_str(&digits).map_err(|_| format!("bad decimal {s:?}"))?;
    let denominator = BigInt::from(10).pow(fraction.len() as u32);
    Ok(BigRational::new(numerator, denominator))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn fractions() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn decimals() {
        assert_eq!(parse_rational("0.5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("2").unwrap(), rat(2, 1));
        assert_eq!(parse_rational("-1.25").unwrap(), rat(-5, 4));
        assert_eq!(parse_rational("0.1").unwrap(), rat(1, 10));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }
}
