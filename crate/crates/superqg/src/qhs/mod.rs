//! Quiver Hecke superalgebras `R(n)`: parameters, PBW straightening, idempotents and
//! character-level crystal data.

mod graded;
mod perm;
mod rewrite;
pub mod verify;

pub use graded::{char_delta, char_epsilon, char_l_in, cyclotomic_degree_check, cyclotomic_poly, graded_dim, sequences, Character};
pub use perm::{act, all_perms, lex_reduced_word, perm_length, perm_of_word, reduced_words, Perm};
pub use rewrite::{parse_expr, Gen, Rewriter, TermView};

use crate::cartan::CartanSuperdatum;
use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One coefficient `t_{i,j;(r,s)}` of `Q_{i,j}(x₁,x₂)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TTerm {
    pub i: usize,
    pub j: usize,
    pub r: u32,
    pub s: u32,
    #[serde(with = "rat_string")]
    pub t: BigRational,
}

mod rat_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => n.to_string(),
            serde_json::Value::String(s) => s,
            _ => return Err(serde::de::Error::custom("expected a rational")),
        };
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QParams {
    pub datum: CartanSuperdatum,
    q: BTreeMap<(usize, usize), Vec<(u32, u32, BigRational)>>,
}

impl QParams {
    /// `Q_{i,j}(u,v) = u^{-a_ij} + v^{-a_ji}`, or `1` when `a_ij = 0`.
    pub fn preset(datum: &CartanSuperdatum) -> Result<Self> {
        let n = datum.rank;
        let one = BigRational::one();
        let mut terms = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let (r, s) = (-datum.a[i][j], -datum.a[j][i]);
                if r == 0 {
                    terms.push(TTerm { i, j, r: 0, s: 0, t: one.clone() });
                } else {
                    terms.push(TTerm { i, j, r: r as u32, s: 0, t: one.clone() });
                    terms.push(TTerm { i, j, r: 0, s: s as u32, t: one.clone() });
                }
            }
        }
        Self::from_terms(datum, &terms)
    }

    /// Collects terms for both orders of each pair and validates them.
    pub fn from_terms(datum: &CartanSuperdatum, terms: &[TTerm]) -> Result<Self> {
        let n = datum.rank;
        let mut q: BTreeMap<(usize, usize), BTreeMap<(u32, u32), BigRational>> = BTreeMap::new();
        for tt in terms {
            if tt.i >= n || tt.j >= n {
                return Err(Error::Inadmissible(format!("index out of range in t_{{{},{}}}", tt.i, tt.j)));
            }
            if tt.t.is_zero() {
                continue;
            }
            if tt.i == tt.j {
                return Err(Error::Inadmissible(format!("Q_{{{0},{0}}} must vanish", tt.i)));
            }
            for (key, rs) in [((tt.i, tt.j), (tt.r, tt.s)), ((tt.j, tt.i), (tt.s, tt.r))] {
                let slot = q.entry(key).or_default();
                match slot.get(&rs) {
                    Some(old) if *old != tt.t => {
                        return Err(Error::Inadmissible(format!("t_{{{},{};{:?}}} ≠ t_{{{},{};{:?}}}", tt.i, tt.j, (tt.r, tt.s), tt.j, tt.i, (tt.s, tt.r))))
                    }
                    _ => {
                        slot.insert(rs, tt.t.clone());
                    }
                }
            }
        }
        let q = q.into_iter().map(|(k, v)| (k, v.into_iter().map(|((r, s), t)| (r, s, t)).collect())).collect();
        let out = QParams { datum: datum.clone(), q };
        out.validate()?;
        Ok(out)
    }

    pub fn validate(&self) -> Result<()> {
        let d = &self.datum;
        for i in 0..d.rank {
            for j in 0..d.rank {
                if i == j {
                    continue;
                }
                let terms = self.q(i, j);
                for (r, s, _) in terms {
                    let (r, s) = (*r as i64, *s as i64);
                    if 2 * d.root_form(i, j) + r * d.root_form(i, i) + s * d.root_form(j, j) != 0 {
                        return Err(Error::Inadmissible(format!("t_{{{i},{j};({r},{s})}} has nonzero degree")));
                    }
                    if (d.parity[i] == 1 && r % 2 == 1) || (d.parity[j] == 1 && s % 2 == 1) {
                        return Err(Error::Inadmissible(format!("t_{{{i},{j};({r},{s})}} violates the parity constraint")));
                    }
                }
                let lead = -d.a[i][j] as u32;
                if !terms.iter().any(|(r, s, _)| *r == lead && *s == 0) {
                    return Err(Error::Inadmissible(format!("t_{{{i},{j};({lead},0)}} is not invertible")));
                }
            }
        }
        Ok(())
    }

    /// Terms `(r, s, t)` of `Q_{i,j}`; empty when `i = j`.
    pub fn q(&self, i: usize, j: usize) -> &[(u32, u32, BigRational)] {
        self.q.get(&(i, j)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn terms(&self) -> Vec<TTerm> {
        self.q
            .iter()
            .filter(|((i, j), _)| i < j)
            .flat_map(|((i, j), v)| v.iter().map(|(r, s, t)| TTerm { i: *i, j: *j, r: *r, s: *s, t: t.clone() }))
            .collect()
    }
}

/// A PBW monomial `x^a τ_w e(ν)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PbwTerm {
    pub nu: Vec<usize>,
    pub a: Vec<u32>,
    pub w: Perm,
}

impl PbwTerm {
    pub fn idempotent(nu: Vec<usize>) -> Self {
        let n = nu.len();
        PbwTerm { nu, a: vec![0; n], w: perm::identity(n) }
    }

    /// The idempotent `e(wν)` on the left.
    pub fn left(&self) -> Vec<usize> {
        act(&self.w, &self.nu)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QHSElement {
    pub terms: BTreeMap<PbwTerm, BigRational>,
}

impl QHSElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(t: PbwTerm, c: BigRational) -> Self {
        let mut out = Self::zero();
        out.add_term(t, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, t: PbwTerm, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(t.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&t);
        }
    }

    pub fn add_scaled(&mut self, o: &QHSElement, c: &BigRational) {
        for (t, v) in &o.terms {
            self.add_term(t.clone(), v * c);
        }
    }

    pub fn add(&self, o: &QHSElement) -> Self {
        let mut out = self.clone();
        out.add_scaled(o, &BigRational::one());
        out
    }

    pub fn sub(&self, o: &QHSElement) -> Self {
        let mut out = self.clone();
        out.add_scaled(o, &-BigRational::one());
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }
}
