//! `Q(q)^π` through its two idempotent components, and the per-branch field `Q(i)(q)`.

use super::gauss::GaussRat;
use super::laurent::{Laurent, LaurentPi, Scalar};
use super::poly::{Poly, RatFn};
use super::scalar::Branch;
use crate::ring::Ring;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

pub type RatQ = RatFn<BigRational>;
/// Rational functions in `q` over `Q(i)`; the field for all per-branch linear algebra.
pub type K = RatFn<GaussRat>;

/// Image of a Laurent element under a branch specialization.
pub fn laurent_to_k<S: Scalar>(x: &Laurent<S>, b: Branch) -> K {
    let (shift, dense) = x.specialize_dense(b);
    let num = Poly::new(dense.iter().map(GaussRat::from_int).collect());
    if shift >= 0 {
        K::from_poly(num.mul(&Poly::monomial(shift as usize, GaussRat::one())))
    } else {
        K::new(num, Poly::monomial((-shift) as usize, GaussRat::one()))
    }
}

fn laurent_to_ratq(x: &Laurent<super::scalar::PiScalar>, sign: i8) -> RatQ {
    let z = x.specialize_pi(sign);
    let mut acc = RatQ::zero();
    for (e, c) in z.terms() {
        acc = acc.add(&RatQ::q_monomial(e, BigRational::from_integer(c.0.clone())));
    }
    acc
}

/// Element of `Q(q)^π` stored as its images at `π = 1` and `π = -1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFuncPi {
    pub plus: RatQ,
    pub minus: RatQ,
}

impl RatFuncPi {
    pub fn from_laurent(x: &LaurentPi) -> Self {
        RatFuncPi { plus: laurent_to_ratq(x, 1), minus: laurent_to_ratq(x, -1) }
    }

    /// `(even, odd)` with `self = even + odd·π`.
    pub fn even_odd(&self) -> (RatQ, RatQ) {
        let half = RatQ::constant(BigRational::new(1.into(), 2.into()));
        (self.plus.add(&self.minus).mul(&half), self.plus.sub(&self.minus).mul(&half))
    }

    pub fn from_even_odd(even: &RatQ, odd: &RatQ) -> Self {
        RatFuncPi { plus: even.add(odd), minus: even.sub(odd) }
    }

    pub fn component(&self, sign: i8) -> &RatQ {
        if sign >= 0 {
            &self.plus
        } else {
            &self.minus
        }
    }

    /// Back to `A^π` when both components are Laurent polynomials.
    pub fn to_laurent(&self) -> Option<LaurentPi> {
        let plus = ratq_to_laurent_z(&self.plus)?;
        let minus = ratq_to_laurent_z(&self.minus)?;
        LaurentPi::from_components(&plus, &minus)
    }
}

/// `Some` when `x = p(q)/q^k` with integer coefficients.
pub fn ratq_to_laurent_z(x: &RatQ) -> Option<super::laurent::LaurentZ> {
    let den = x.den();
    let k = den.degree()?;
    if den.coeffs()[..k].iter().any(|c| !Ring::is_zero(c)) {
        return None;
    }
    let mut terms = Vec::new();
    for (j, c) in x.num().coeffs().iter().enumerate() {
        if !c.is_integer() {
            return None;
        }
        terms.push((j as i64 - k as i64, crate::ring::Int(c.to_integer())));
    }
    Some(Laurent::from_terms(terms))
}

impl Ring for RatFuncPi {
    fn zero() -> Self {
        RatFuncPi { plus: RatQ::zero(), minus: RatQ::zero() }
    }
    fn one() -> Self {
        RatFuncPi { plus: RatQ::one(), minus: RatQ::one() }
    }
    fn is_zero(&self) -> bool {
        self.plus.is_zero() && self.minus.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        RatFuncPi { plus: self.plus.add(&o.plus), minus: self.minus.add(&o.minus) }
    }
    fn sub(&self, o: &Self) -> Self {
        RatFuncPi { plus: self.plus.sub(&o.plus), minus: self.minus.sub(&o.minus) }
    }
    fn mul(&self, o: &Self) -> Self {
        RatFuncPi { plus: self.plus.mul(&o.plus), minus: self.minus.mul(&o.minus) }
    }
    fn neg(&self) -> Self {
        RatFuncPi { plus: self.plus.neg(), minus: self.minus.neg() }
    }
    fn from_int(n: i64) -> Self {
        RatFuncPi { plus: RatQ::from_int(n), minus: RatQ::from_int(n) }
    }
}

/// Wire form of a rational function: primitive integer numerator and denominator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntFraction {
    #[serde(with = "int_vec")]
    pub num: Vec<BigInt>,
    #[serde(with = "int_vec")]
    pub den: Vec<BigInt>,
}

/// Integers as JSON numbers when they fit in `i64`, decimal strings otherwise.
pub mod int_vec {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn to_value(b: &BigInt) -> serde_json::Value {
        match b.to_i64() {
            Some(v) => v.into(),
            None => b.to_string().into(),
        }
    }

    pub fn from_value(v: &serde_json::Value) -> Option<BigInt> {
        match v {
            serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
            serde_json::Value::String(s) => s.parse().ok(),
            _ => None,
        }
    }

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(to_value).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<serde_json::Value>::deserialize(d)?;
        raw.iter()
            .map(|v| from_value(v).ok_or_else(|| serde::de::Error::custom("expected an integer")))
            .collect()
    }
}

impl IntFraction {
    pub fn from_ratq(x: &RatQ) -> Self {
        let l = x
            .num()
            .coeffs()
            .iter()
            .chain(x.den().coeffs())
            .fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        let scale = |p: &Poly<BigRational>| -> Vec<BigInt> {
            p.coeffs().iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect()
        };
        let mut num = scale(x.num());
        let mut den = scale(x.den());
        let g = num.iter().chain(den.iter()).fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !g.is_zero() {
            num.iter_mut().for_each(|c| *c /= &g);
            den.iter_mut().for_each(|c| *c /= &g);
        }
        if den.last().is_some_and(|c| c.is_negative()) {
            num.iter_mut().for_each(|c| *c = -&*c);
            den.iter_mut().for_each(|c| *c = -&*c);
        }
        IntFraction { num, den }
    }

    pub fn to_ratq(&self) -> Option<RatQ> {
        let p = |v: &[BigInt]| Poly::new(v.iter().map(|c| BigRational::from_integer(c.clone())).collect());
        let den = p(&self.den);
        (!den.is_zero()).then(|| RatQ::new(p(&self.num), den))
    }
}

#[derive(Serialize, Deserialize)]
struct RatFuncPiWire {
    plus: IntFraction,
    minus: IntFraction,
}

impl Serialize for RatFuncPi {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatFuncPiWire { plus: IntFraction::from_ratq(&self.plus), minus: IntFraction::from_ratq(&self.minus) }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFuncPi {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = RatFuncPiWire::deserialize(d)?;
        let bad = || serde::de::Error::custom("zero denominator");
        Ok(RatFuncPi { plus: w.plus.to_ratq().ok_or_else(bad)?, minus: w.minus.to_ratq().ok_or_else(bad)? })
    }
}

/// Serializable view of an element of `K` (real and imaginary parts as `IntFraction`s over a common denominator).
pub fn k_to_json(x: &K) -> serde_json::Value {
    let re = |p: &Poly<GaussRat>| p.map(|c| c.re.clone());
    let im = |p: &Poly<GaussRat>| p.map(|c| c.im.clone());
    let den = re(x.den());
    let out_re = IntFraction::from_ratq(&RatQ::new(re(x.num()), den.clone()));
    if x.num().coeffs().iter().all(|c| c.is_real()) {
        serde_json::json!({ "num": out_re.num, "den": out_re.den })
    } else {
        let out_im = IntFraction::from_ratq(&RatQ::new(im(x.num()), den));
        serde_json::json!({ "re": out_re, "im": out_im })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::scalar::PiScalar;

    #[test]
    fn embedding_is_multiplicative() {
        let a = LaurentPi::from_terms([(-1, PiScalar::new(1, 2)), (3, PiScalar::new(0, -1))]);
        let b = LaurentPi::from_terms([(0, PiScalar::new(2, 0)), (1, PiScalar::new(1, 1))]);
        let lhs = RatFuncPi::from_laurent(&a.mul(&b));
        let rhs = RatFuncPi::from_laurent(&a).mul(&RatFuncPi::from_laurent(&b));
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_laurent().unwrap(), a.mul(&b));
    }

    #[test]
    fn wire_format_is_primitive() {
        let x = RatFuncPi::from_laurent(&LaurentPi::q_pow(-1).add(&LaurentPi::pi_q(1, 1)));
        let v = serde_json::to_value(&x).unwrap();
        assert_eq!(v["plus"]["num"], serde_json::json!([1, 0, 1]));
        assert_eq!(v["plus"]["den"], serde_json::json!([0, 1]));
        assert_eq!(v["minus"]["num"], serde_json::json!([1, 0, -1]));
        let back: RatFuncPi = serde_json::from_value(v).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn even_odd_roundtrip() {
        let x = RatFuncPi::from_laurent(&LaurentPi::pi_q(1, 2).add(&LaurentPi::from_int(3)));
        let (e, o) = x.even_odd();
        assert_eq!(RatFuncPi::from_even_odd(&e, &o), x);
        assert_eq!(o, RatQ::q_monomial(2, BigRational::from_integer(1.into())));
    }
}
