//! Dense univariate polynomials and reduced rational functions in `q`.

use crate::ring::{ExactDiv, Field, Ring};
use std::fmt;

/// Coefficients stored constant term first, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    c: Vec<C>,
}

impl<C: Ring> Poly<C> {
    pub fn new(mut c: Vec<C>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn constant(x: C) -> Self {
        Poly::new(vec![x])
    }

    /// `x·q^k`
    pub fn monomial(k: usize, x: C) -> Self {
        let mut c = vec![C::zero(); k + 1];
        c[k] = x;
        Poly::new(c)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.c
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&C> {
        self.c.last()
    }

    pub fn scale(&self, x: &C) -> Self {
        Poly::new(self.c.iter().map(|y| y.mul(x)).collect())
    }

    pub fn eval(&self, t: &C) -> C {
        let mut acc = C::zero();
        for x in self.c.iter().rev() {
            acc = acc.mul(t).add(x);
        }
        acc
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.c.iter().map(f).collect())
    }
}

impl<C: ExactDiv> Poly<C> {
    /// Long division by a divisor whose leading coefficient divides exactly at each step.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lead = d.lead()?.clone();
        let mut rem = self.c.clone();
        if rem.len() <= dd {
            return Some((Poly::zero(), self.clone()));
        }
        let mut quot = vec![C::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let f = top.exact_div(&lead)?;
            for (j, dj) in d.c.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&f.mul(dj));
            }
            quot[k] = f;
        }
        Some((Poly::new(quot), Poly::new(rem)))
    }
}

impl<C: ExactDiv> ExactDiv for Poly<C> {
    fn exact_div(&self, o: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(o)?;
        r.is_zero().then_some(q)
    }
}

impl<C: Field> Poly<C> {
    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => self.scale(&l.inv()),
            None => self.clone(),
        }
    }

    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y).expect("field division");
            x = y;
            y = r;
        }
        x.monic()
    }
}

impl<C: Ring> Ring for Poly<C> {
    fn zero() -> Self {
        Poly { c: Vec::new() }
    }
    fn one() -> Self {
        Poly::constant(C::one())
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Poly::new(
            (0..n)
                .map(|k| match (self.c.get(k), o.c.get(k)) {
                    (Some(a), Some(b)) => a.add(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => C::zero(),
                })
                .collect(),
        )
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![C::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = c[i + j].add(&a.mul(b));
                }
            }
        }
        Poly::new(c)
    }
    fn neg(&self) -> Self {
        Poly { c: self.c.iter().map(|x| x.neg()).collect() }
    }
    fn from_int(n: i64) -> Self {
        Poly::constant(C::from_int(n))
    }
}

impl<C: Ring> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.c)
    }
}

/// `num/den` with `den` monic and coprime to `num`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn<C> {
    num: Poly<C>,
    den: Poly<C>,
}

impl<C: Field> RatFn<C> {
    pub fn new(num: Poly<C>, den: Poly<C>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFn { num, den: Poly::one() };
        }
        let g = Poly::gcd(&num, &den);
        let mut n = num.exact_div(&g).expect("gcd divides");
        let mut d = den.exact_div(&g).expect("gcd divides");
        let l = d.lead().unwrap().inv();
        n = n.scale(&l);
        d = d.scale(&l);
        RatFn { num: n, den: d }
    }

    pub fn from_poly(p: Poly<C>) -> Self {
        RatFn { num: p, den: Poly::one() }
    }

    pub fn constant(c: C) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// `c·q^k` for any integer `k`.
    pub fn q_monomial(k: i64, c: C) -> Self {
        if k >= 0 {
            Self::from_poly(Poly::monomial(k as usize, c))
        } else {
            Self::new(Poly::constant(c), Poly::monomial((-k) as usize, C::one()))
        }
    }

    pub fn num(&self) -> &Poly<C> {
        &self.num
    }

    pub fn den(&self) -> &Poly<C> {
        &self.den
    }

    /// `Some(p)` when the denominator is 1.
    pub fn as_poly(&self) -> Option<&Poly<C>> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn eval(&self, t: &C) -> Option<C> {
        let d = self.den.eval(t);
        (!d.is_zero()).then(|| self.num.eval(t).div(&d))
    }
}

impl<C: Field> Ring for RatFn<C> {
    fn zero() -> Self {
        RatFn { num: Poly::zero(), den: Poly::one() }
    }
    fn one() -> Self {
        RatFn { num: Poly::one(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFn::new(self.num.add(&o.num), self.den.clone());
        }
        RatFn::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFn { num: self.num.mul(&o.num), den: Poly::one() };
        }
        RatFn::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn neg(&self) -> Self {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }
    fn from_int(n: i64) -> Self {
        Self::constant(C::from_int(n))
    }
}

impl<C: Field> ExactDiv for RatFn<C> {
    fn exact_div(&self, o: &Self) -> Option<Self> {
        (!o.is_zero()).then(|| self.div(o))
    }
}

impl<C: Field> Field for RatFn<C> {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        RatFn::new(self.den.clone(), self.num.clone())
    }
}

impl<C: Field> fmt::Debug for RatFn<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}
