use super::gauss::{GaussInt, GaussRat};
use super::scalar::{Branch, PiScalar, SqrtPiScalar};
use crate::ring::{Int, Ring};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// Scalars that can sit under a power of `q`.
pub trait Scalar: Ring + fmt::Display {
    fn unit_inverse(&self) -> Option<Self>;
    fn specialize(&self, b: Branch) -> GaussInt;
    fn to_sqrt(&self) -> SqrtPiScalar;
}

impl Scalar for PiScalar {
    fn unit_inverse(&self) -> Option<Self> {
        PiScalar::unit_inverse(self)
    }
    fn specialize(&self, b: Branch) -> GaussInt {
        GaussInt::from_big(PiScalar::specialize(self, b.pi_sign()))
    }
    fn to_sqrt(&self) -> SqrtPiScalar {
        SqrtPiScalar::from_pi(self)
    }
}

impl Scalar for SqrtPiScalar {
    fn unit_inverse(&self) -> Option<Self> {
        SqrtPiScalar::unit_inverse(self)
    }
    fn specialize(&self, b: Branch) -> GaussInt {
        SqrtPiScalar::specialize(self, b.0)
    }
    fn to_sqrt(&self) -> SqrtPiScalar {
        self.clone()
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Scalar for Int {
    fn unit_inverse(&self) -> Option<Self> {
        (self.0 == BigInt::from(1) || self.0 == BigInt::from(-1)).then(|| self.clone())
    }
    fn specialize(&self, _b: Branch) -> GaussInt {
        GaussInt::from_big(self.0.clone())
    }
    fn to_sqrt(&self) -> SqrtPiScalar {
        SqrtPiScalar { c: [self.0.clone(), BigInt::zero(), BigInt::zero(), BigInt::zero()] }
    }
}

/// Sparse Laurent polynomial in `q`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent<S> {
    terms: BTreeMap<i64, S>,
}

pub type LaurentPi = Laurent<PiScalar>;
pub type LaurentSqrtPi = Laurent<SqrtPiScalar>;
pub type LaurentZ = Laurent<Int>;

impl<S: Scalar> Laurent<S> {
    pub fn from_terms<I: IntoIterator<Item = (i64, S)>>(it: I) -> Self {
        let mut out = Laurent { terms: BTreeMap::new() };
        for (e, c) in it {
            out.add_term(e, &c);
        }
        out
    }

    pub fn monomial(e: i64, c: S) -> Self {
        Self::from_terms([(e, c)])
    }

    pub fn q_pow(e: i64) -> Self {
        Self::monomial(e, S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::monomial(0, c)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &S)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> S {
        self.terms.get(&e).cloned().unwrap_or_else(S::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, e: i64, c: &S) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.get(&e) {
            Some(old) => old.add(c),
            None => c.clone(),
        };
        if v.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, v);
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, x)| (*e, x.mul(c))))
    }

    pub fn shift(&self, k: i64) -> Self {
        Laurent { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Substitutes `q ↦ q^k` (`k ≠ 0`).
    pub fn dilate(&self, k: i64) -> Self {
        assert!(k != 0);
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    /// Inverse when `self = c·q^m` with `c` a unit scalar.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(Self::monomial(-e, c.unit_inverse()?))
    }

    pub fn is_unit(&self) -> bool {
        self.unit_inverse().is_some()
    }

    /// Integer power; negative exponents require a unit.
    pub fn powi(&self, n: i64) -> Option<Self> {
        if n >= 0 {
            Some(self.pow(n as u32))
        } else {
            Some(self.unit_inverse()?.pow((-n) as u32))
        }
    }

    pub fn to_sqrt(&self) -> LaurentSqrtPi {
        Laurent::from_terms(self.terms.iter().map(|(e, c)| (*e, c.to_sqrt())))
    }

    /// Image under `√π ↦ i^k`, as `(shift, coefficients)` with `coefficients[j]` at `q^(shift+j)`.
    pub fn specialize_dense(&self, b: Branch) -> (i64, Vec<GaussInt>) {
        let sp: BTreeMap<i64, GaussInt> = self
            .terms
            .iter()
            .map(|(e, c)| (*e, c.specialize(b)))
            .filter(|(_, g)| !g.is_zero())
            .collect();
        let Some((&lo, _)) = sp.iter().next() else {
            return (0, Vec::new());
        };
        let hi = *sp.keys().next_back().unwrap();
        let mut v = vec![GaussInt::zero(); (hi - lo + 1) as usize];
        for (e, g) in sp {
            v[(e - lo) as usize] = g;
        }
        (lo, v)
    }

    /// Evaluates at `q = t` after `√π ↦ i^k`.
    pub fn eval(&self, b: Branch, t: &GaussRat) -> GaussRat {
        let tinv = t.clone();
        let tinv = crate::ring::Field::inv(&tinv);
        let mut acc = GaussRat::zero();
        for (e, c) in &self.terms {
            let base = if *e >= 0 { t } else { &tinv };
            let p = base.pow(e.unsigned_abs() as u32);
            acc = acc.add(&p.mul(&GaussRat::from_int(&c.specialize(b))));
        }
        acc
    }

}

impl LaurentPi {
    pub fn pi() -> Self {
        Self::constant(PiScalar::pi())
    }

    /// `π^e q^m`
    pub fn pi_q(e: i64, m: i64) -> Self {
        Self::monomial(m, PiScalar::pi_pow(e))
    }

    /// The ring map `π ↦ sign`.
    pub fn specialize_pi(&self, sign: i8) -> LaurentZ {
        Laurent::from_terms(self.terms.iter().map(|(e, c)| (*e, Int(c.specialize(sign)))))
    }

    /// Rebuilds an element from its two specializations.
    pub fn from_components(plus: &LaurentZ, minus: &LaurentZ) -> Option<Self> {
        let mut exps: Vec<i64> = plus.terms.keys().chain(minus.terms.keys()).copied().collect();
        exps.sort_unstable();
        exps.dedup();
        let two = BigInt::from(2);
        let mut out = Vec::new();
        for e in exps {
            let p = plus.coeff(e).0;
            let m = minus.coeff(e).0;
            let s = &p + &m;
            let d = &p - &m;
            if &s % &two != BigInt::zero() {
                return None;
            }
            out.push((e, PiScalar { even: s / &two, odd: d / &two }));
        }
        Some(Self::from_terms(out))
    }
}

impl LaurentSqrtPi {
    pub fn sqrt_pi() -> Self {
        Self::constant(SqrtPiScalar::sqrt_pi_pow(1))
    }

    /// `(√π)^k q^m`
    pub fn sqrt_pi_q(k: i64, m: i64) -> Self {
        Self::monomial(m, SqrtPiScalar::sqrt_pi_pow(k))
    }

    pub fn to_pi(&self) -> Option<LaurentPi> {
        let mut out = Vec::new();
        for (e, c) in &self.terms {
            out.push((*e, c.to_pi()?));
        }
        Some(Laurent::from_terms(out))
    }
}

impl<S: Scalar> Ring for Laurent<S> {
    fn zero() -> Self {
        Laurent { terms: BTreeMap::new() }
    }
    fn one() -> Self {
        Self::constant(S::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c);
        }
        out
    }
    fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, &c.neg());
        }
        out
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1 + e2, &c1.mul(c2));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        Laurent { terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect() }
    }
    fn from_int(n: i64) -> Self {
        Self::constant(S::from_int(n))
    }
}

impl<S: Scalar> fmt::Display for Laurent<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| match *e {
                0 => format!("{c}"),
                1 => format!("{c}q"),
                _ => format!("{c}q^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<S: Scalar> fmt::Debug for Laurent<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

use super::ratfunc::int_vec::{from_value as json_to_big, to_value as big_to_json};

impl Serialize for LaurentPi {
    fn serialize<Se: Serializer>(&self, s: Se) -> Result<Se::Ok, Se::Error> {
        let v: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| serde_json::json!([e, big_to_json(&c.even), big_to_json(&c.odd)]))
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPi {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<serde_json::Value>> = Vec::deserialize(d)?;
        let mut out = Vec::new();
        let mut last: Option<i64> = None;
        for r in rows {
            if r.len() != 3 {
                return Err(D::Error::custom("expected [exponent, even, odd]"));
            }
            let e = r[0].as_i64().ok_or_else(|| D::Error::custom("bad exponent"))?;
            if last.is_some_and(|l| l >= e) {
                return Err(D::Error::custom("exponents must be strictly increasing"));
            }
            last = Some(e);
            let even = json_to_big(&r[1]).ok_or_else(|| D::Error::custom("bad coefficient"))?;
            let odd = json_to_big(&r[2]).ok_or_else(|| D::Error::custom("bad coefficient"))?;
            out.push((e, PiScalar { even, odd }));
        }
        Ok(Laurent::from_terms(out))
    }
}

impl Serialize for LaurentSqrtPi {
    fn serialize<Se: Serializer>(&self, s: Se) -> Result<Se::Ok, Se::Error> {
        let v: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut row = vec![serde_json::Value::from(*e)];
                row.extend(c.c.iter().map(big_to_json));
                serde_json::Value::Array(row)
            })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentSqrtPi {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<serde_json::Value>> = Vec::deserialize(d)?;
        let mut out = Vec::new();
        for r in rows {
            // `[e, even, odd]` rows are accepted as elements of `A^π`.
            let slots: &[usize] = match r.len() {
                5 => &[0, 1, 2, 3],
                3 => &[0, 2],
                _ => return Err(D::Error::custom("expected [exponent, c0, c1, c2, c3]")),
            };
            let e = r[0].as_i64().ok_or_else(|| D::Error::custom("bad exponent"))?;
            let mut c: [BigInt; 4] = Default::default();
            for (k, &j) in slots.iter().enumerate() {
                c[j] = json_to_big(&r[k + 1]).ok_or_else(|| D::Error::custom("bad coefficient"))?;
            }
            out.push((e, SqrtPiScalar { c }));
        }
        Ok(Laurent::from_terms(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_inverse() {
        let x = LaurentPi::pi_q(1, -3);
        assert!(x.mul(&x.unit_inverse().unwrap()).is_one());
        let y = LaurentPi::one().add(&LaurentPi::q_pow(1));
        assert!(y.unit_inverse().is_none());
    }

    #[test]
    fn json_roundtrip() {
        let x = LaurentPi::from_terms([(-2, PiScalar::new(1, 0)), (0, PiScalar::new(0, 1)), (2, PiScalar::new(3, -1))]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, "[[-2,1,0],[0,0,1],[2,3,-1]]");
        let back: LaurentPi = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<LaurentPi>("[[1,1,0],[0,1,0]]").is_err());
    }

    #[test]
    fn specialize_examples() {
        let x = LaurentPi::one().add(&LaurentPi::pi()).mul(&LaurentPi::q_pow(3));
        assert!(x.specialize_pi(-1).is_zero());
        assert_eq!(LaurentPi::pi().specialize_pi(-1), LaurentZ::from_int(-1));
    }

    #[test]
    fn components_reconstruct() {
        let x = LaurentPi::from_terms([(-1, PiScalar::new(2, -5)), (4, PiScalar::new(0, 7))]);
        let back = LaurentPi::from_components(&x.specialize_pi(1), &x.specialize_pi(-1)).unwrap();
        assert_eq!(back, x);
    }
}
