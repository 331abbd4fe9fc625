//! Property tests for the exact-arithmetic substrate: ring axioms,
//! evaluation homomorphisms and the series-exponential identity, all as
//! exact equalities on randomized inputs.

use num_traits::Zero;
use proptest::prelude::*;

use poisson_order_k::exact::{
    factorial, falling_factorial, BigInt, BigRational, LambdaPoly, Poly, RationalPoly,
    TruncatedSeries,
};

fn int_poly() -> impl Strategy<Value = LambdaPoly> {
    prop::collection::vec(-20i64..=20, 0..6)
        .prop_map(|coeffs| Poly::from_coeffs(coeffs.into_iter().map(BigInt::from).collect()))
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-30i64..=30, 1i64..=9).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn rational_poly(max_len: usize) -> impl Strategy<Value = RationalPoly> {
    prop::collection::vec((-9i64..=9, 1i64..=4), 0..max_len).prop_map(|coeffs| {
        Poly::from_coeffs(
            coeffs
                .into_iter()
                .map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
                .collect(),
        )
    })
}

/// Series with zero constant term, the domain of `exp`.
fn zero_constant_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(rational_poly(3), order).prop_map(move |mut coeffs| {
        coeffs.insert(0, RationalPoly::zero());
        TruncatedSeries::from_coeffs(order, coeffs)
    })
}

proptest! {
    #[test]
    fn multiplication_distributes_over_addition(
        p in int_poly(),
        q in int_poly(),
        r in int_poly(),
    ) {
        let left = &(&p + &q) * &r;
        let right = &(&p * &r) + &(&q * &r);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn multiplication_commutes(p in int_poly(), q in int_poly()) {
        prop_assert_eq!(&p * &q, &q * &p);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        p in int_poly(),
        q in int_poly(),
        x in rational(),
    ) {
        prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
        prop_assert_eq!((&p + &q).eval(&x), p.eval(&x) + q.eval(&x));
    }

    #[test]
    fn falling_factorial_is_a_factorial_quotient(x in 0u64..40, n in 0u32..40) {
        if u64::from(n) <= x {
            prop_assert_eq!(
                falling_factorial(x, n) * factorial(x as u32 - n),
                factorial(x as u32)
            );
        } else {
            prop_assert_eq!(falling_factorial(x, n), BigInt::zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exp_turns_addition_into_multiplication(
        s1 in zero_constant_series(5),
        s2 in zero_constant_series(5),
    ) {
        let sum_exp = s1.add(&s2).exp().unwrap();
        let product = s1.exp().unwrap().mul(&s2.exp().unwrap());
        prop_assert_eq!(sum_exp, product);
    }
}
