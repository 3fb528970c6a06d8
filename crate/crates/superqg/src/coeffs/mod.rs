//! Exact coefficient rings and two-parameter quantum integers.

pub mod gauss;
pub mod laurent;
pub mod mpoly;
pub mod poly;
pub mod ratfunc;
pub mod scalar;

pub use gauss::{GaussInt, GaussRat};
pub use laurent::{Laurent, LaurentPi, LaurentSqrtPi, LaurentZ, Scalar};
pub use mpoly::MPoly;
pub use poly::{Poly, RatFn};
pub use ratfunc::{laurent_to_k, IntFraction, RatFuncPi, RatQ, K};
pub use scalar::{Branch, PiScalar, SqrtPiScalar};

use crate::error::{Error, Result};
use crate::ring::Ring;

/// `[n]_{a,b} = Σ_{k<n} a^{n-1-k} b^k`
pub fn qint<R: Ring>(n: u32, a: &R, b: &R) -> R {
    let mut acc = R::zero();
    for k in 0..n {
        acc = acc.add(&a.pow(n - 1 - k).mul(&b.pow(k)));
    }
    acc
}

pub fn qfact<R: Ring>(n: u32, a: &R, b: &R) -> R {
    (1..=n).fold(R::one(), |acc, k| acc.mul(&qint(k, a, b)))
}

/// Pascal recursion `[m,n] = a^{m-n}[m-1,n-1] + b^n[m-1,n]`, checked against
/// `[m,n]·[n]!·[m-n]! = [m]!`.
pub fn qbinom<R: Ring>(m: u32, n: u32, a: &R, b: &R) -> Result<R> {
    if n > m {
        return Err(Error::Domain(format!("qbinom({m},{n}) needs n <= m")));
    }
    let mut row = vec![R::one()];
    for mm in 1..=m {
        let mut next = Vec::with_capacity(mm as usize + 1);
        for nn in 0..=mm {
            let left = if nn >= 1 { a.pow(mm - nn).mul(&row[nn as usize - 1]) } else { R::zero() };
            let right = if nn < mm { b.pow(nn).mul(&row[nn as usize]) } else { R::zero() };
            next.push(left.add(&right));
        }
        row = next;
    }
    let out = row[n as usize].clone();
    let check = out.mul(&qfact(n, a, b)).mul(&qfact(m - n, a, b));
    if check != qfact(m, a, b) {
        return Err(Error::Inconsistent(format!("qbinom({m},{n}) failed the factorial check")));
    }
    Ok(out)
}

/// Both sides of the finite binomial identity, with `z` a separate variable.
pub fn bino_sides<R: Ring>(n: u32, a: &R, b: &R, z: &R) -> Result<(R, R)> {
    let ab = a.mul(b);
    let mut lhs = R::zero();
    for k in 0..=n {
        let c = qbinom(n, k, a, b)?;
        lhs = lhs.add(&c.mul(&ab.pow(k * k.saturating_sub(1) / 2)).mul(&z.pow(k)));
    }
    let mut rhs = R::one();
    for k in 0..n {
        rhs = rhs.mul(&R::one().add(&a.pow(n - 1 - k).mul(&b.pow(k)).mul(z)));
    }
    Ok((lhs, rhs))
}

pub fn bino_identity_check<R: Ring>(n: u32, a: &R, b: &R, z: &R) -> bool {
    matches!(bino_sides(n, a, b, z), Ok((l, r)) if l == r)
}

/// The generic case: `a`, `b`, `z` independent variables over `Z^π`.
pub fn bino_identity_generic(n: u32) -> bool {
    bino_identity_check(n, &MPoly::var(3, 0), &MPoly::var(3, 1), &MPoly::var(3, 2))
}

/// `[n]^π_i = Σ_{k<n} q_i^{1-n+2k} π_i^k` for an index with symmetrizer `d` and parity `parity`.
pub fn gauss_pi(n: u32, d: i64, parity: u8) -> LaurentPi {
    let mut acc = LaurentPi::zero();
    for k in 0..n as i64 {
        acc = acc.add(&LaurentPi::pi_q(k * parity as i64, d * (1 - n as i64 + 2 * k)));
    }
    acc
}

pub fn gauss_pi_fact(n: u32, d: i64, parity: u8) -> LaurentPi {
    (1..=n).fold(LaurentPi::one(), |acc, k| acc.mul(&gauss_pi(k, d, parity)))
}

/// The ring map `π ↦ sign`.
pub fn specialize_pi(x: &LaurentPi, sign: i8) -> LaurentZ {
    x.specialize_pi(sign)
}
