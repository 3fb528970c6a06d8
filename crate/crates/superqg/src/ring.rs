//! Minimal algebraic traits shared by every coefficient type in the crate.
//!
//! Arithmetic goes through named methods rather than `std::ops` so that
//! generic code stays free of higher-ranked reference bounds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Debug;

/// A commutative ring with exact equality.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_int(n: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn scale_int(&self, n: i64) -> Self {
        self.mul(&Self::from_int(n))
    }
}

/// A ring where exact division is attempted; `None` when the quotient does not exist.
pub trait ExactDiv: Ring {
    fn exact_div(&self, o: &Self) -> Option<Self>;
}

/// A field: every nonzero element is invertible.
pub trait Field: ExactDiv {
    fn inv(&self) -> Self;
    fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl ExactDiv for BigRational {
    fn exact_div(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(o) {
            None
        } else {
            Some(self / o)
        }
    }
}

impl Field for BigRational {
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// Plain integers, wrapped so that `Ring` methods never collide with `std::ops`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Int(pub BigInt);

impl Ring for Int {
    fn zero() -> Self {
        Int(BigInt::zero())
    }
    fn one() -> Self {
        Int(BigInt::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Int(&self.0 + &o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        Int(&self.0 - &o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        Int(&self.0 * &o.0)
    }
    fn neg(&self) -> Self {
        Int(-&self.0)
    }
    fn from_int(n: i64) -> Self {
        Int(BigInt::from(n))
    }
}

impl ExactDiv for Int {
    fn exact_div(&self, o: &Self) -> Option<Self> {
        if o.0.is_zero() {
            return None;
        }
        let q = &self.0 / &o.0;
        if &q * &o.0 == self.0 {
            Some(Int(q))
        } else {
            None
        }
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
