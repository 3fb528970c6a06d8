//! Gaussian integers and Gaussian rationals, the targets of the `√π ↦ i^k` specializations.

use crate::ring::{ExactDiv, Field, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: i64, im: i64) -> Self {
        GaussInt { re: re.into(), im: im.into() }
    }

    /// `i^k`
    pub fn unit(k: u8) -> Self {
        match k % 4 {
            0 => GaussInt::new(1, 0),
            1 => GaussInt::new(0, 1),
            2 => GaussInt::new(-1, 0),
            _ => GaussInt::new(0, -1),
        }
    }

    pub fn from_big(re: BigInt) -> Self {
        GaussInt { re, im: BigInt::zero() }
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> Self {
        GaussInt { re: self.re.clone(), im: -&self.im }
    }
}

impl Ring for GaussInt {
    fn zero() -> Self {
        GaussInt::new(0, 0)
    }
    fn one() -> Self {
        GaussInt::new(1, 0)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn add(&self, o: &Self) -> Self {
        GaussInt { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn sub(&self, o: &Self) -> Self {
        GaussInt { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul(&self, o: &Self) -> Self {
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn neg(&self) -> Self {
        GaussInt { re: -&self.re, im: -&self.im }
    }
    fn from_int(n: i64) -> Self {
        GaussInt::new(n, 0)
    }
}

impl ExactDiv for GaussInt {
    fn exact_div(&self, o: &Self) -> Option<Self> {
        let n = o.norm();
        if Zero::is_zero(&n) {
            return None;
        }
        let num = self.mul(&o.conj());
        let (qr, rr) = num.re.div_rem(&n);
        let (qi, ri) = num.im.div_rem(&n);
        if Zero::is_zero(&rr) && Zero::is_zero(&ri) {
            Some(GaussInt { re: qr, im: qi })
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn from_int(g: &GaussInt) -> Self {
        GaussRat {
            re: BigRational::from_integer(g.re.clone()),
            im: BigRational::from_integer(g.im.clone()),
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        GaussRat { re: r, im: <BigRational as Ring>::zero() }
    }

    pub fn is_real(&self) -> bool {
        Ring::is_zero(&self.im)
    }

    /// Clears denominators: returns `(g, d)` with `self = g / d`, `d > 0`.
    pub fn to_int_over(&self) -> (GaussInt, BigInt) {
        let d = self.re.denom().lcm(self.im.denom());
        let re = (self.re.clone() * BigRational::from_integer(d.clone())).to_integer();
        let im = (self.im.clone() * BigRational::from_integer(d.clone())).to_integer();
        (GaussInt { re, im }, d)
    }

    pub fn is_positive_real(&self) -> bool {
        Ring::is_zero(&self.im) && self.re.is_positive()
    }
}

impl Ring for GaussRat {
    fn zero() -> Self {
        GaussRat { re: <BigRational as Ring>::zero(), im: <BigRational as Ring>::zero() }
    }
    fn one() -> Self {
        GaussRat { re: <BigRational as Ring>::one(), im: <BigRational as Ring>::zero() }
    }
    fn is_zero(&self) -> bool {
        Ring::is_zero(&self.re) && Ring::is_zero(&self.im)
    }
    fn add(&self, o: &Self) -> Self {
        GaussRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn sub(&self, o: &Self) -> Self {
        GaussRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul(&self, o: &Self) -> Self {
        if Ring::is_zero(&self.im) && Ring::is_zero(&o.im) {
            return GaussRat { re: &self.re * &o.re, im: <BigRational as Ring>::zero() };
        }
        GaussRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn neg(&self) -> Self {
        GaussRat { re: -&self.re, im: -&self.im }
    }
    fn from_int(n: i64) -> Self {
        GaussRat::from_rational(BigRational::from_integer(n.into()))
    }
}

impl ExactDiv for GaussRat {
    fn exact_div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            None
        } else {
            Some(self.div(o))
        }
    }
}

impl Field for GaussRat {
    fn inv(&self) -> Self {
        if Ring::is_zero(&self.im) {
            return GaussRat { re: self.re.recip(), im: <BigRational as Ring>::zero() };
        }
        let n = &self.re * &self.re + &self.im * &self.im;
        GaussRat { re: &self.re / &n, im: -(&self.im / &n) }
    }
}
