use super::gauss::GaussInt;
use crate::ring::Ring;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// `even + odd·π` with `π² = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PiScalar {
    pub even: BigInt,
    pub odd: BigInt,
}

impl PiScalar {
    pub fn new(even: i64, odd: i64) -> Self {
        PiScalar { even: even.into(), odd: odd.into() }
    }

    pub fn pi() -> Self {
        PiScalar::new(0, 1)
    }

    /// `π^e`
    pub fn pi_pow(e: i64) -> Self {
        if e.rem_euclid(2) == 0 {
            PiScalar::one()
        } else {
            PiScalar::pi()
        }
    }

    pub fn specialize(&self, sign: i8) -> BigInt {
        if sign >= 0 {
            &self.even + &self.odd
        } else {
            &self.even - &self.odd
        }
    }

    /// The units are `±1` and `±π`, each its own inverse.
    pub fn unit_inverse(&self) -> Option<Self> {
        let ok = (self.even.abs().is_one() && self.odd.is_zero())
            || (self.even.is_zero() && self.odd.abs().is_one());
        ok.then(|| self.clone())
    }
}

impl Ring for PiScalar {
    fn zero() -> Self {
        PiScalar::new(0, 0)
    }
    fn one() -> Self {
        PiScalar::new(1, 0)
    }
    fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        PiScalar { even: &self.even + &o.even, odd: &self.odd + &o.odd }
    }
    fn sub(&self, o: &Self) -> Self {
        PiScalar { even: &self.even - &o.even, odd: &self.odd - &o.odd }
    }
    fn mul(&self, o: &Self) -> Self {
        PiScalar {
            even: &self.even * &o.even + &self.odd * &o.odd,
            odd: &self.even * &o.odd + &self.odd * &o.even,
        }
    }
    fn neg(&self) -> Self {
        PiScalar { even: -&self.even, odd: -&self.odd }
    }
    fn from_int(n: i64) -> Self {
        PiScalar::new(n, 0)
    }
}

impl fmt::Display for PiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.even.is_zero(), self.odd.is_zero()) {
            (_, true) => write!(f, "{}", self.even),
            (true, false) => write!(f, "{}π", self.odd),
            _ => write!(f, "({}{:+}π)", self.even, self.odd),
        }
    }
}

/// Coordinates on `1, √π, π, √π·π`; the group ring of `Z/4` generated by `s = √π`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SqrtPiScalar {
    pub c: [BigInt; 4],
}

impl SqrtPiScalar {
    pub fn new(c0: i64, c1: i64, c2: i64, c3: i64) -> Self {
        SqrtPiScalar { c: [c0.into(), c1.into(), c2.into(), c3.into()] }
    }

    /// `(√π)^k`
    pub fn sqrt_pi_pow(k: i64) -> Self {
        let mut s = SqrtPiScalar::zero();
        s.c[k.rem_euclid(4) as usize] = BigInt::one();
        s
    }

    pub fn from_pi(p: &PiScalar) -> Self {
        SqrtPiScalar { c: [p.even.clone(), BigInt::zero(), p.odd.clone(), BigInt::zero()] }
    }

    /// Back to `Z^π` when the `√π` and `√π·π` coordinates vanish.
    pub fn to_pi(&self) -> Option<PiScalar> {
        (self.c[1].is_zero() && self.c[3].is_zero())
            .then(|| PiScalar { even: self.c[0].clone(), odd: self.c[2].clone() })
    }

    /// Image under `√π ↦ i^k`.
    pub fn specialize(&self, k: u8) -> GaussInt {
        let mut out = GaussInt::zero();
        for (j, cj) in self.c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let u = GaussInt::unit(((j as u32 * k as u32) % 4) as u8);
            out = out.add(&GaussInt { re: &u.re * cj, im: &u.im * cj });
        }
        out
    }

    /// Inverse of `±(√π)^k`; other elements are not treated as units.
    pub fn unit_inverse(&self) -> Option<Self> {
        let nz: Vec<usize> = (0..4).filter(|&j| !self.c[j].is_zero()).collect();
        if nz.len() != 1 || !self.c[nz[0]].abs().is_one() {
            return None;
        }
        let j = nz[0];
        let mut out = SqrtPiScalar::zero();
        out.c[(4 - j) % 4] = self.c[j].clone();
        Some(out)
    }
}

impl Ring for SqrtPiScalar {
    fn zero() -> Self {
        SqrtPiScalar::new(0, 0, 0, 0)
    }
    fn one() -> Self {
        SqrtPiScalar::new(1, 0, 0, 0)
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    fn add(&self, o: &Self) -> Self {
        SqrtPiScalar { c: std::array::from_fn(|j| &self.c[j] + &o.c[j]) }
    }
    fn sub(&self, o: &Self) -> Self {
        SqrtPiScalar { c: std::array::from_fn(|j| &self.c[j] - &o.c[j]) }
    }
    fn mul(&self, o: &Self) -> Self {
        let mut c: [BigInt; 4] = Default::default();
        for j in 0..4 {
            if self.c[j].is_zero() {
                continue;
            }
            for k in 0..4 {
                if !o.c[k].is_zero() {
                    c[(j + k) % 4] += &self.c[j] * &o.c[k];
                }
            }
        }
        SqrtPiScalar { c }
    }
    fn neg(&self) -> Self {
        SqrtPiScalar { c: std::array::from_fn(|j| -&self.c[j]) }
    }
    fn from_int(n: i64) -> Self {
        SqrtPiScalar::new(n, 0, 0, 0)
    }
}

impl fmt::Display for SqrtPiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 4] = ["", "√π", "π", "√π·π"];
        let parts: Vec<String> = (0..4)
            .filter(|&j| !self.c[j].is_zero())
            .map(|j| format!("{}{}", self.c[j], NAMES[j]))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else if parts.len() == 1 {
            write!(f, "{}", parts[0])
        } else {
            write!(f, "({})", parts.join("+"))
        }
    }
}

/// A specialization `√π ↦ i^k`; it sends `π ↦ (-1)^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Branch(pub u8);

impl Branch {
    /// Enough branches to separate `Z^π`.
    pub const PI: [Branch; 2] = [Branch(0), Branch(1)];
    /// Enough branches to separate `Z[√π]`.
    pub const SQRT_PI: [Branch; 4] = [Branch(0), Branch(1), Branch(2), Branch(3)];

    pub fn pi_sign(self) -> i8 {
        if self.0.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_squares_to_one() {
        assert_eq!(PiScalar::pi().mul(&PiScalar::pi()), PiScalar::one());
    }

    #[test]
    fn sqrt_pi_fourth_power() {
        let s = SqrtPiScalar::sqrt_pi_pow(1);
        assert_eq!(s.mul(&s), SqrtPiScalar::from_pi(&PiScalar::pi()));
        assert_eq!(s.pow(4), SqrtPiScalar::one());
    }

    #[test]
    fn specialization_is_multiplicative() {
        let a = SqrtPiScalar::new(1, -2, 3, 5);
        let b = SqrtPiScalar::new(-4, 1, 0, 2);
        for k in 0..4 {
            assert_eq!(a.mul(&b).specialize(k), a.specialize(k).mul(&b.specialize(k)));
        }
    }

    #[test]
    fn unit_inverse_of_sqrt_pi() {
        let s = SqrtPiScalar::new(0, -1, 0, 0);
        assert!(s.mul(&s.unit_inverse().unwrap()).is_one());
        assert!(SqrtPiScalar::new(1, 1, 0, 0).unit_inverse().is_none());
    }
}
