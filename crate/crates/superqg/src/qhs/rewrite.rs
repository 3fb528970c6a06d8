use super::perm::{act, all_perms, identity, lex_reduced_word, move_path, perm_of_word, Perm};
use super::{PbwTerm, QHSElement, QParams};
use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Mutex;

/// Generators `x_k`, `τ_a`, `e(ν)`, all 0-indexed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    X(usize),
    T(usize),
    E(Vec<usize>),
}

/// JSON view of a PBW term; `x` are exponents and `w` a 1-indexed reduced word.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TermView {
    pub nu: Vec<usize>,
    pub a: Vec<u32>,
    pub w: Vec<usize>,
    pub coeff: String,
    pub degree: i64,
    pub parity: u8,
}

fn sign(odd: bool) -> BigRational {
    if odd {
        -BigRational::one()
    } else {
        BigRational::one()
    }
}

type Correction = (BigRational, Vec<Gen>);

/// Straightening into the PBW basis `x^a τ_w e(ν)`, `τ_w` read off the lexicographic
/// reduced-word table.
pub struct Rewriter {
    pub params: QParams,
    pub n: usize,
    words: HashMap<Perm, Vec<u8>>,
    paths: Mutex<HashMap<(Vec<u8>, Vec<u8>), Vec<usize>>>,
    tau_cache: Mutex<HashMap<(usize, Perm, Vec<usize>), QHSElement>>,
}

impl Rewriter {
    pub const MAX_N: usize = 5;

    pub fn new(params: QParams, n: usize) -> Result<Self> {
        if n == 0 || n > Self::MAX_N {
            return Err(Error::Domain(format!("R(n) is supported for 1 ≤ n ≤ {}", Self::MAX_N)));
        }
        params.validate()?;
        let words = all_perms(n).into_iter().map(|p| {
            let w = lex_reduced_word(&p);
            (p, w)
        });
        Ok(Rewriter { params, n, words: words.collect(), paths: Mutex::default(), tau_cache: Mutex::default() })
    }

    fn par(&self, i: usize) -> bool {
        self.params.datum.parity[i] == 1
    }

    pub fn reduced_word(&self, w: &[u8]) -> &[u8] {
        &self.words[w]
    }

    fn check_seq(&self, nu: &[usize]) -> Result<()> {
        if nu.len() != self.n || nu.iter().any(|&i| i >= self.params.datum.rank) {
            return Err(Error::Parse(format!("e{nu:?} is not a sequence in I^{}", self.n)));
        }
        Ok(())
    }

    pub fn idempotent(&self, nu: &[usize]) -> Result<QHSElement> {
        self.check_seq(nu)?;
        Ok(QHSElement::term(PbwTerm::idempotent(nu.to_vec()), BigRational::one()))
    }

    /// `1 = Σ_ν e(ν)`.
    pub fn one(&self) -> QHSElement {
        let rank = self.params.datum.rank;
        let mut out = QHSElement::zero();
        let total = rank.pow(self.n as u32);
        for mut code in 0..total {
            let mut nu = vec![0; self.n];
            for slot in nu.iter_mut().rev() {
                *slot = code % rank;
                code /= rank;
            }
            out.add_term(PbwTerm::idempotent(nu), BigRational::one());
        }
        out
    }

    /// `(Z-degree, parity)` of a PBW monomial.
    pub fn degree(&self, t: &PbwTerm) -> (i64, u8) {
        let d = &self.params.datum;
        let left = t.left();
        let mut deg = 0;
        let mut par = 0u8;
        for (k, &e) in t.a.iter().enumerate() {
            deg += e as i64 * d.root_form(left[k], left[k]);
            par ^= (e as u8 & 1) & d.parity[left[k]];
        }
        let mut mu = t.nu.clone();
        for &c in self.reduced_word(&t.w).iter().rev() {
            let c = c as usize;
            deg -= d.root_form(mu[c], mu[c + 1]);
            par ^= d.parity[mu[c]] & d.parity[mu[c + 1]];
            mu.swap(c, c + 1);
        }
        (deg, par)
    }

    /// The word `x₁^{a₁}···xₙ^{aₙ} τ_{i₁}···τ_{iₗ} e(ν)`.
    pub fn term_word(&self, t: &PbwTerm) -> Vec<Gen> {
        let mut out: Vec<Gen> = t.a.iter().enumerate().flat_map(|(k, &e)| std::iter::repeat_n(Gen::X(k), e as usize)).collect();
        out.extend(self.reduced_word(&t.w).iter().map(|&c| Gen::T(c as usize)));
        out.push(Gen::E(t.nu.clone()));
        out
    }

    pub fn view(&self, x: &QHSElement) -> Vec<TermView> {
        x.terms
            .iter()
            .map(|(t, c)| {
                let (degree, parity) = self.degree(t);
                TermView {
                    nu: t.nu.clone(),
                    a: t.a.clone(),
                    w: self.reduced_word(&t.w).iter().map(|&c| c as usize + 1).collect(),
                    coeff: c.to_string(),
                    degree,
                    parity,
                }
            })
            .collect()
    }

    fn left_x(&self, k: usize, x: &QHSElement) -> QHSElement {
        let d = &self.params.datum;
        let mut out = QHSElement::zero();
        for (t, c) in &x.terms {
            let left = t.left();
            let mut odd = false;
            if d.parity[left[k]] == 1 {
                odd = (0..k).map(|q| t.a[q] as u8 & d.parity[left[q]]).sum::<u8>() % 2 == 1;
            }
            let mut nt = t.clone();
            nt.a[k] += 1;
            out.add_term(nt, sign(odd) * c);
        }
        out
    }

    fn left_xs(&self, letters: &[usize], x: &QHSElement) -> QHSElement {
        letters.iter().rev().fold(x.clone(), |acc, &k| self.left_x(k, &acc))
    }

    fn left_tau(&self, c: usize, x: &QHSElement) -> Result<QHSElement> {
        let mut out = QHSElement::zero();
        for (t, coef) in &x.terms {
            let lambda = t.left();
            let (pi, pj) = (self.par(lambda[c]), self.par(lambda[c + 1]));
            let s_odd = pi && pj;
            let delta = lambda[c] == lambda[c + 1];
            let xs: Vec<usize> = t.a.iter().enumerate().flat_map(|(k, &e)| std::iter::repeat_n(k, e as usize)).collect();
            // τ_c x^a e(λ) = ± (x-word) τ_c e(λ) + Σ ± (x-word) e(λ)
            let mut moved = Vec::new();
            let mut odd = false;
            let mut bare = QHSElement::zero();
            let base = QHSElement::term(PbwTerm { a: vec![0; self.n], ..t.clone() }, BigRational::one());
            for (idx, &p) in xs.iter().enumerate() {
                let rest = &xs[idx + 1..];
                if p != c && p != c + 1 {
                    odd ^= self.par(lambda[p]) && s_odd;
                    moved.push(p);
                    continue;
                }
                if delta {
                    let word: Vec<usize> = moved.iter().chain(rest).copied().collect();
                    let mut s = sign(odd);
                    if p == c {
                        s = -s * sign(s_odd);
                    }
                    bare.add_scaled(&self.left_xs(&word, &base), &s);
                }
                odd ^= s_odd;
                moved.push(if p == c { c + 1 } else { c });
            }
            let head = self.tau_times(c, &t.w, &t.nu)?;
            bare.add_scaled(&self.left_xs(&moved, &head), &sign(odd));
            out.add_scaled(&bare, coef);
        }
        Ok(out)
    }

    fn left_e(&self, nu: &[usize], x: &QHSElement) -> QHSElement {
        let mut out = QHSElement::zero();
        for (t, c) in &x.terms {
            if t.left() == nu {
                out.add_term(t.clone(), c.clone());
            }
        }
        out
    }

    pub fn apply(&self, g: &Gen, x: &QHSElement) -> Result<QHSElement> {
        match g {
            Gen::X(k) if *k < self.n => Ok(self.left_x(*k, x)),
            Gen::T(c) if c + 1 < self.n => self.left_tau(*c, x),
            Gen::E(nu) => {
                self.check_seq(nu)?;
                Ok(self.left_e(nu, x))
            }
            _ => Err(Error::Parse(format!("generator {g:?} out of range for n = {}", self.n))),
        }
    }

    /// Left-multiplies `x` by the product of `word`.
    pub fn apply_word(&self, word: &[Gen], x: &QHSElement) -> Result<QHSElement> {
        word.iter().rev().try_fold(x.clone(), |acc, g| self.apply(g, &acc))
    }

    /// The normal form of a product of generators.
    pub fn word_element(&self, word: &[Gen]) -> Result<QHSElement> {
        self.apply_word(word, &self.one())
    }

    pub fn straighten(&self, expr: &str) -> Result<QHSElement> {
        self.word_element(&parse_expr(expr)?)
    }

    /// Re-straightens an element term by term.
    pub fn restraighten(&self, x: &QHSElement) -> Result<QHSElement> {
        let mut out = QHSElement::zero();
        for (t, c) in &x.terms {
            out.add_scaled(&self.word_element(&self.term_word(t))?, c);
        }
        Ok(out)
    }

    pub fn multiply(&self, u: &QHSElement, v: &QHSElement) -> Result<QHSElement> {
        let mut out = QHSElement::zero();
        for (t, c) in &u.terms {
            out.add_scaled(&self.apply_word(&self.term_word(t), v)?, c);
        }
        Ok(out)
    }

    fn path(&self, from: &[u8], to: &[u8]) -> Result<Vec<usize>> {
        let key = (from.to_vec(), to.to_vec());
        if let Some(p) = self.paths.lock().expect("path table").get(&key) {
            return Ok(p.clone());
        }
        let p = move_path(from, to).ok_or_else(|| Error::Inconsistent(format!("no move path {from:?} → {to:?}")))?;
        self.paths.lock().expect("path table").insert(key, p.clone());
        Ok(p)
    }

    /// `τ_from e(ν) = σ τ_to e(ν) + Σ corrections`, along a chain of commutation and braid moves.
    fn convert(&self, from: &[u8], to: &[u8], nu: &[usize]) -> Result<(BigRational, Vec<Correction>)> {
        let mut cur = from.to_vec();
        let mut sigma = BigRational::one();
        let mut corr = Vec::new();
        for k in self.path(from, to)? {
            let (x, y) = (cur[k], cur[k + 1]);
            if x.abs_diff(y) > 1 {
                let mu = act(&perm_of_word(self.n, &cur[k + 2..]), nu);
                let (a, b) = (x as usize, y as usize);
                let odd = self.par(mu[a]) && self.par(mu[a + 1]) && self.par(mu[b]) && self.par(mu[b + 1]);
                sigma *= sign(odd);
                cur.swap(k, k + 1);
                continue;
            }
            let mu = act(&perm_of_word(self.n, &cur[k + 3..]), nu);
            let a = x.min(y) as usize;
            // τ_{a+1}τ_aτ_{a+1} = τ_aτ_{a+1}τ_a + D, read in whichever direction the move goes
            let dir = if x as usize == a + 1 { sigma.clone() } else { -sigma.clone() };
            for (c, xs) in self.braid_deviation(a, &mu)? {
                let mut word: Vec<Gen> = cur[..k].iter().map(|&l| Gen::T(l as usize)).collect();
                word.extend(xs.into_iter().map(Gen::X));
                word.extend(cur[k + 3..].iter().map(|&l| Gen::T(l as usize)));
                corr.push((&dir * c, word));
            }
            cur[k] = y;
            cur[k + 1] = x;
            cur[k + 2] = y;
        }
        Ok((sigma, corr))
    }

    /// `(τ_{a+1}τ_aτ_{a+1} - τ_aτ_{a+1}τ_a) e(μ)` as signed x-words.
    fn braid_deviation(&self, a: usize, mu: &[usize]) -> Result<Vec<(BigRational, Vec<usize>)>> {
        let (i, j) = (mu[a], mu[a + 1]);
        if mu[a + 2] != i || i == j {
            return Ok(Vec::new());
        }
        let rep = |l: usize, m: usize| std::iter::repeat_n(l, m);
        let mut out = Vec::new();
        for (r, s, t) in self.params.q(i, j) {
            let (r, s) = (*r as usize, *s as usize);
            let tail: Vec<usize> = rep(a + 1, s).collect();
            if !self.par(i) {
                // (X^r - Y^r)/(X - Y) = Σ_m Y^m X^{r-1-m}
                for m in 0..r {
                    let w = rep(a, m).chain(rep(a + 2, r - 1 - m)).chain(tail.iter().copied()).collect();
                    out.push((t.clone(), w));
                }
                continue;
            }
            if r % 2 == 1 {
                return Err(Error::Inadmissible(format!(
                    "Q_{{{i},{j}}}(x_{},x_{}) - Q_{{{i},{j}}}(x_{},x_{}) is not divisible by x_{}^2 - x_{}^2",
                    a + 3,
                    a + 2,
                    a + 1,
                    a + 2,
                    a + 3,
                    a + 1
                )));
            }
            // (u^k - v^k)/(u - v) with u = X², v = Y², then (-1)^{p(j)}(X - Y)·
            let half = r / 2;
            let lead = sign(self.par(j)) * t;
            for m in 0..half {
                let rest: Vec<usize> = rep(a + 2, 2 * (half - 1 - m)).chain(tail.iter().copied()).collect();
                let w1 = std::iter::once(a + 2).chain(rep(a, 2 * m)).chain(rest.iter().copied()).collect();
                let w2 = rep(a, 2 * m + 1).chain(rest.iter().copied()).collect();
                out.push((lead.clone(), w1));
                out.push((-lead.clone(), w2));
            }
        }
        Ok(out)
    }

    /// Normal form of `τ_c τ_w e(ν)`.
    fn tau_times(&self, c: usize, w: &Perm, nu: &[usize]) -> Result<QHSElement> {
        let key = (c, w.clone(), nu.to_vec());
        if let Some(x) = self.tau_cache.lock().expect("τ cache").get(&key) {
            return Ok(x.clone());
        }
        let mut sw = w.clone();
        sw.swap(c, c + 1);
        let mut out = QHSElement::zero();
        let tail = QHSElement::term(PbwTerm { nu: nu.to_vec(), a: vec![0; self.n], w: sw.clone() }, BigRational::one());
        let e_nu = self.idempotent(nu)?;
        let rw = self.reduced_word(w).to_vec();
        let rsw = self.reduced_word(&sw).to_vec();
        let with_c: Vec<u8> = std::iter::once(c as u8).chain(rsw.iter().copied()).collect();
        if w[c] < w[c + 1] {
            let first: Vec<u8> = std::iter::once(c as u8).chain(rw).collect();
            let (sigma, corr) = self.convert(&first, &rsw, nu)?;
            out.add_scaled(&tail, &sigma);
            for (k, word) in corr {
                out.add_scaled(&self.apply_word(&word, &e_nu)?, &k);
            }
        } else {
            let (sigma, corr) = self.convert(&rw, &with_c, nu)?;
            let mu = act(&sw, nu);
            for (r, s, t) in self.params.q(mu[c], mu[c + 1]) {
                let xs: Vec<usize> = std::iter::repeat_n(c, *r as usize).chain(std::iter::repeat_n(c + 1, *s as usize)).collect();
                out.add_scaled(&self.left_xs(&xs, &tail), &(&sigma * t));
            }
            for (k, word) in corr {
                let word: Vec<Gen> = std::iter::once(Gen::T(c)).chain(word).collect();
                out.add_scaled(&self.apply_word(&word, &e_nu)?, &k);
            }
        }
        self.tau_cache.lock().expect("τ cache").insert(key, out.clone());
        Ok(out)
    }

    /// `b_k e(iⁿ) = τ_k x_{k+1} e(iⁿ)`.
    pub fn b_idempotent(&self, i: usize, k: usize) -> Result<QHSElement> {
        if k + 1 >= self.n {
            return Err(Error::Domain(format!("b_{} needs n > {}", k + 1, k + 1)));
        }
        self.apply_word(&[Gen::T(k), Gen::X(k + 1)], &self.idempotent(&vec![i; self.n])?)
    }

    /// `b_{k₁}···b_{kₗ} e(iⁿ)` for a word in 0-indexed letters.
    pub fn b_word(&self, i: usize, word: &[u8]) -> Result<QHSElement> {
        let mut gens = Vec::new();
        for &k in word {
            if k as usize + 1 >= self.n {
                return Err(Error::Domain(format!("letter {} out of range", k + 1)));
            }
            gens.push(Gen::T(k as usize));
            gens.push(Gen::X(k as usize + 1));
        }
        self.apply_word(&gens, &self.idempotent(&vec![i; self.n])?)
    }

    /// `b(iⁿ) = b_{w₀}` through the lexicographic reduced word of the longest element.
    pub fn b_longest(&self, i: usize) -> Result<QHSElement> {
        let w0: Perm = identity(self.n).into_iter().rev().collect();
        self.b_word(i, self.reduced_word(&w0))
    }
}

/// Parses `tok * tok * …` with tokens `e(ν)`, `x<k>`, `t<k>` (1-indexed); `ν` is
/// comma-separated or a digit string.
pub fn parse_expr(s: &str) -> Result<Vec<Gen>> {
    let bad = |t: &str| Error::Parse(format!("bad token {t:?}"));
    let mut out = Vec::new();
    for raw in s.split('*') {
        let tok: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        if tok.is_empty() {
            return Err(bad(raw));
        }
        let index = |body: &str| -> Result<usize> {
            match body.parse::<usize>() {
                Ok(k) if k >= 1 => Ok(k - 1),
                _ => Err(bad(&tok)),
            }
        };
        if let Some(inner) = tok.strip_prefix("e(").and_then(|r| r.strip_suffix(')')) {
            let nu: Result<Vec<usize>> = if inner.contains(',') {
                inner.split(',').map(|x| x.parse().map_err(|_| bad(&tok))).collect()
            } else {
                inner.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| bad(&tok))).collect()
            };
            out.push(Gen::E(nu?));
        } else if let Some(k) = tok.strip_prefix('x') {
            out.push(Gen::X(index(k)?));
        } else if let Some(k) = tok.strip_prefix('t') {
            out.push(Gen::T(index(k)?));
        } else {
            return Err(bad(&tok));
        }
    }
    Ok(out)
}
