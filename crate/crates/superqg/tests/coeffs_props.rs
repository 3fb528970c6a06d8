use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use superqg::coeffs::{
    bino_identity_generic, qbinom, qint, specialize_pi, LaurentPi, LaurentSqrtPi, MPoly, PiScalar, Poly, RatFn, RatFuncPi, RatQ,
    SqrtPiScalar,
};
use superqg::ring::Ring;

fn laurent_pi() -> impl Strategy<Value = LaurentPi> {
    prop::collection::vec((-4i64..=4, -3i64..=3, -3i64..=3), 0..5)
        .prop_map(|ts| ts.into_iter().fold(LaurentPi::zero(), |acc, (e, a, b)| acc.add(&LaurentPi::monomial(e, PiScalar::new(a, b)))))
}

fn laurent_sqrt() -> impl Strategy<Value = LaurentSqrtPi> {
    prop::collection::vec((-3i64..=3, [-2i64..=2, -2i64..=2, -2i64..=2, -2i64..=2]), 0..4).prop_map(|ts| {
        ts.into_iter().fold(LaurentSqrtPi::zero(), |acc, (e, [a, b, c, d])| acc.add(&LaurentSqrtPi::monomial(e, SqrtPiScalar::new(a, b, c, d))))
    })
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn ratq() -> impl Strategy<Value = RatQ> {
    (prop::collection::vec(-3i64..=3, 0..4), prop::collection::vec(-3i64..=3, 0..3), 1i64..=3, -2i64..=2).prop_map(|(n, d, lead, shift)| {
        let num = Poly::new(n.into_iter().map(rat).collect());
        let mut dc: Vec<BigRational> = d.into_iter().map(rat).collect();
        dc.push(rat(lead));
        RatFn::new(num, Poly::new(dc)).mul(&RatFn::q_monomial(shift, rat(1)))
    })
}

fn ratpi() -> impl Strategy<Value = RatFuncPi> {
    (ratq(), ratq()).prop_map(|(plus, minus)| RatFuncPi { plus, minus })
}

fn axioms<R: Ring>(a: &R, b: &R, c: &R, commutative: bool) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.mul(&b.mul(c)), a.mul(b).mul(c));
    prop_assert_eq!(a.add(&b.add(c)), a.add(b).add(c));
    prop_assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
    prop_assert_eq!(b.add(c).mul(a), b.mul(a).add(&c.mul(a)));
    prop_assert_eq!(a.add(b), b.add(a));
    if commutative {
        prop_assert_eq!(a.mul(b), b.mul(a));
    }
    prop_assert!(a.sub(a).is_zero());
    prop_assert_eq!(a.mul(&R::one()), a.clone());
    Ok(())
}

/// `c^k` for a Laurent monomial or binomial in the third variable.
fn c_poly(k: i64, binomial: bool) -> MPoly {
    let m = MPoly::monomial(vec![0, 0, k], PiScalar::new(1, 0));
    if binomial {
        m.add(&MPoly::monomial(vec![0, 0, k + 1], PiScalar::new(0, 1)))
    } else {
        m
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_pi_ring(a in laurent_pi(), b in laurent_pi(), c in laurent_pi()) {
        axioms(&a, &b, &c, true)?;
    }

    #[test]
    fn laurent_sqrt_ring(a in laurent_sqrt(), b in laurent_sqrt(), c in laurent_sqrt()) {
        axioms(&a, &b, &c, true)?;
    }

    #[test]
    fn ratq_ring(a in ratq(), b in ratq(), c in ratq()) {
        axioms(&a, &b, &c, true)?;
    }

    #[test]
    fn ratpi_ring(a in ratpi(), b in ratpi(), c in ratpi()) {
        axioms(&a, &b, &c, true)?;
    }

    /// `[n]_{ac,bc} = c^{n-1}[n]_{a,b}` and `[m,n]_{ac,bc} = c^{n(m-n)}[m,n]_{a,b}`.
    #[test]
    fn qint_scaling(k in -2i64..=2, binomial in any::<bool>(), m in 0u32..=8, n in 0u32..=8) {
        prop_assume!(n <= m);
        let (a, b) = (MPoly::var(3, 0), MPoly::var(3, 1));
        let c = c_poly(k, binomial);
        let (ac, bc) = (a.mul(&c), b.mul(&c));
        prop_assert_eq!(qint(m, &ac, &bc), c.pow(m.saturating_sub(1)).mul(&qint(m, &a, &b)));
        prop_assert_eq!(qbinom(m, n, &ac, &bc).unwrap(), c.pow(n * (m - n)).mul(&qbinom(m, n, &a, &b).unwrap()));
    }

    /// `π ↦ ±1` jointly determine an element.
    #[test]
    fn pi_split_is_injective(x in laurent_pi()) {
        let (p, m) = (specialize_pi(&x, 1), specialize_pi(&x, -1));
        prop_assert_eq!(LaurentPi::from_components(&p, &m), Some(x.clone()));
        prop_assert_eq!(RatFuncPi::from_laurent(&x).to_laurent(), Some(x));
    }
}

#[test]
fn binomial_identity_generic() {
    for n in 0..=8 {
        assert!(bino_identity_generic(n), "n = {n}");
    }
}
