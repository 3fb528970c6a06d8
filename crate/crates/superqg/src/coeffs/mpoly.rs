use super::scalar::PiScalar;
use crate::ring::Ring;
use std::collections::BTreeMap;
use std::fmt;

/// Laurent polynomial in `nvars` commuting variables with `Z^π` coefficients.
#[derive(Clone)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, PiScalar>,
}

impl MPoly {
    pub fn zero_in(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn monomial(exps: Vec<i64>, c: PiScalar) -> Self {
        let mut out = MPoly::zero_in(exps.len());
        if !c.is_zero() {
            out.terms.insert(exps, c);
        }
        out
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        MPoly::monomial(e, PiScalar::one())
    }

    pub fn constant(nvars: usize, c: PiScalar) -> Self {
        MPoly::monomial(vec![0; nvars], c)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<i64>, c: PiScalar) {
        let v = match self.terms.remove(&e) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }
}

// The zero and one of `Ring` carry no arity; arity is adopted from the other operand.
impl Ring for MPoly {
    fn zero() -> Self {
        MPoly::zero_in(0)
    }
    fn one() -> Self {
        MPoly::constant(0, PiScalar::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let nv = self.nvars.max(o.nvars);
        let mut out = MPoly::zero_in(nv);
        for (e, c) in self.terms.iter().chain(o.terms.iter()) {
            out.add_term(pad(e, nv), c.clone());
        }
        out
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        let nv = self.nvars.max(o.nvars);
        let mut out = MPoly::zero_in(nv);
        for (e1, c1) in &self.terms {
            let e1 = pad(e1, nv);
            for (e2, c2) in &o.terms {
                let e2 = pad(e2, nv);
                let e: Vec<i64> = e1.iter().zip(&e2).map(|(x, y)| x + y).collect();
                out.add_term(e, c1.mul(c2));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect() }
    }
    fn from_int(n: i64) -> Self {
        MPoly::constant(0, PiScalar::from_int(n))
    }
    fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }
}

// Equality ignores declared arity: missing variables have exponent 0.
impl PartialEq for MPoly {
    fn eq(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }
}

fn pad(e: &[i64], nv: usize) -> Vec<i64> {
    let mut v = e.to_vec();
    v.resize(nv, 0);
    v
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("{c}·{e:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
