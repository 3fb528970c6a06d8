//! The negative half as word combinations, the operators `e_i′` and `e_i*`, and the bilinear form.

use crate::cartan::{height, kostant_series, CartanSuperdatum, RootVec};
use crate::coeffs::{laurent_to_k, qbinom, qint, Branch, K};
use crate::error::{Error, Result};
use crate::linalg::{laurent_rank, Mat};
use crate::params::{upow, Lsp, ParamFamily, TildeThetaP};
use crate::ring::Ring;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

/// The monomial `f_{i₁}···f_{iₙ}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `β` with `weight = -β`.
    pub fn content(&self, rank: usize) -> RootVec {
        let mut out = vec![0; rank];
        for &i in &self.0 {
            out[i] += 1;
        }
        out
    }

    pub fn parity(&self, datum: &CartanSuperdatum) -> u8 {
        self.0.iter().map(|&i| datum.parity[i]).sum::<u8>() % 2
    }

    pub fn concat(&self, o: &Word) -> Word {
        Word(self.0.iter().chain(&o.0).copied().collect())
    }

    fn without(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        v.remove(k);
        Word(v)
    }

    fn prepend(&self, i: usize) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(i);
        v.extend_from_slice(&self.0);
        Word(v)
    }
}

/// All words with content `β`, in lexicographic order.
pub fn words_of_weight(beta: &[i64]) -> Vec<Word> {
    fn go(left: &mut Vec<i64>, cur: &mut Vec<usize>, out: &mut Vec<Word>) {
        if left.iter().all(|&x| x == 0) {
            out.push(Word(cur.clone()));
            return;
        }
        for i in 0..left.len() {
            if left[i] > 0 {
                left[i] -= 1;
                cur.push(i);
                go(left, cur, out);
                cur.pop();
                left[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut beta.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// All words of length at most `n` over `rank` letters.
pub fn words_up_to(rank: usize, n: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..n {
        layer = layer.iter().flat_map(|w| (0..rank).map(move |i| w.concat(&Word(vec![i])))).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

pub fn random_words(rank: usize, count: usize, max_len: usize, seed: u64) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(0..=max_len);
            Word((0..len).map(|_| rng.gen_range(0..rank)).collect())
        })
        .collect()
}

/// A linear combination of words; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct UMinusElt {
    terms: BTreeMap<Word, Lsp>,
}

impl UMinusElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Word::empty())
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, Lsp::one())
    }

    pub fn letters(v: &[usize]) -> Self {
        Self::word(Word(v.to_vec()))
    }

    pub fn term(w: Word, c: Lsp) -> Self {
        let mut out = Self::zero();
        out.add_term(w, c);
        out
    }

    pub fn add_term(&mut self, w: Word, c: Lsp) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Lsp)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Lsp {
        self.terms.get(w).cloned().unwrap_or_else(Lsp::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Lsp::from_int(-1)))
    }

    pub fn scale(&self, c: &Lsp) -> Self {
        let mut out = Self::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x.mul(c));
        }
        out
    }

    /// Product in the free algebra.
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term(a.concat(b), x.mul(y));
            }
        }
        out
    }

    /// Common content of all words, `None` for zero or inhomogeneous elements.
    pub fn content(&self, rank: usize) -> Option<RootVec> {
        let mut it = self.terms.keys().map(|w| w.content(rank));
        let first = it.next()?;
        it.all(|c| c == first).then_some(first)
    }

    fn map_words(&self, f: impl Fn(&Word) -> UMinusElt) -> UMinusElt {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out = out.add(&f(w).scale(c));
        }
        out
    }
}

/// Dual vectors `w ↦ Σ_v (w, v) v` for all words of content at most some bound.
pub struct FormTable {
    duals: HashMap<Word, HashMap<Word, Lsp>>,
}

impl FormTable {
    pub fn pair(&self, u: &Word, v: &Word) -> Lsp {
        self.duals.get(u).and_then(|d| d.get(v)).cloned().unwrap_or_else(Lsp::zero)
    }

    pub fn form(&self, x: &UMinusElt, y: &UMinusElt) -> Lsp {
        let mut acc = Lsp::zero();
        for (u, a) in x.terms() {
            for (v, b) in y.terms() {
                let p = self.pair(u, v);
                if !p.is_zero() {
                    acc = acc.add(&a.mul(b).mul(&p));
                }
            }
        }
        acc
    }
}

/// Contents `γ ≤ beta`, grouped by height `1, 2, …`.
pub fn levels_below(beta: &[i64]) -> Vec<Vec<RootVec>> {
    let mut levels = vec![Vec::new(); height(beta) as usize];
    for g in boxes_below(beta) {
        let h = height(&g) as usize;
        if h > 0 {
            levels[h - 1].push(g);
        }
    }
    levels
}

/// Builds `D(u) = Σ_v (u, v) v` level by level from `D(f_i v) [·] = Σ_c c·D(w)` where
/// `act(i, u) = Σ c w` is the operator adjoint to left multiplication by `f_i`.
pub fn dual_table<A>(rank: usize, levels: &[Vec<RootVec>], act: A) -> FormTable
where
    A: Fn(usize, &Word) -> UMinusElt + Sync,
{
    let mut duals: HashMap<Word, HashMap<Word, Lsp>> = HashMap::new();
    duals.insert(Word::empty(), HashMap::from([(Word::empty(), Lsp::one())]));
    for level in levels {
        let words: Vec<Word> = level.iter().flat_map(|g| words_of_weight(g)).collect();
        let computed: Vec<(Word, HashMap<Word, Lsp>)> = words
            .par_iter()
            .map(|u| {
                let mut d: HashMap<Word, Lsp> = HashMap::new();
                for i in 0..rank {
                    for (w, c) in act(i, u).terms() {
                        for (v, x) in &duals[w] {
                            let e = d.entry(v.prepend(i)).or_insert_with(Lsp::zero);
                            *e = e.add(&c.mul(x));
                        }
                    }
                }
                d.retain(|_, x| !x.is_zero());
                (u.clone(), d)
            })
            .collect();
        duals.extend(computed);
    }
    FormTable { duals }
}

/// Boson operators attached to a tilde family.
#[derive(Clone, Debug)]
pub struct Boson {
    pub datum: CartanSuperdatum,
    pub tt: TildeThetaP,
    /// A square root `p_i` of each `p̃_i`.
    pub p: Vec<Lsp>,
    pub branches: Vec<Branch>,
}

impl Boson {
    pub fn new(datum: &CartanSuperdatum, fam: &ParamFamily) -> Result<Self> {
        fam.validate(datum)?;
        let tt = fam.tilde()?;
        let p = fam.theta_p(datum)?.p_diag;
        Ok(Self::from_parts(datum, tt, p))
    }

    /// No validation; used for deliberately corrupted families.
    pub fn from_parts(datum: &CartanSuperdatum, tt: TildeThetaP, p: Vec<Lsp>) -> Self {
        let pi_only = tt.ttheta.iter().flatten().chain(&tt.tp).all(|x| x.to_pi().is_some());
        let branches = if pi_only { Branch::PI.to_vec() } else { Branch::SQRT_PI.to_vec() };
        Boson { datum: datum.clone(), tt, p, branches }
    }

    fn rank(&self) -> usize {
        self.datum.rank
    }

    fn th(&self, i: usize, j: usize) -> &Lsp {
        &self.tt.ttheta[i][j]
    }

    /// `e_i′(f_{j₁}···f_{jₙ}) = Σ_{j_k = i} Π_{l<k} θ̃_{j_l i} · (word without position k)`.
    pub fn eprime_word(&self, i: usize, w: &Word) -> UMinusElt {
        let mut out = UMinusElt::zero();
        let mut acc = Lsp::one();
        for (k, &j) in w.0.iter().enumerate() {
            if j == i {
                out.add_term(w.without(k), acc.clone());
            }
            acc = acc.mul(self.th(j, i));
        }
        out
    }

    pub fn eprime(&self, i: usize, x: &UMinusElt) -> UMinusElt {
        x.map_words(|w| self.eprime_word(i, w))
    }

    /// Left scan: `e_i*(f_j w) = f_j e_i*(w) + δ_ij Ad(T_iK_i)(w)`.
    pub fn estar_word(&self, i: usize, w: &Word) -> UMinusElt {
        let Some((&j, rest)) = w.0.split_first() else {
            return UMinusElt::zero();
        };
        let rest = Word(rest.to_vec());
        let mut out = UMinusElt::letters(&[j]).mul(&self.estar_word(i, &rest));
        if j == i {
            let ad = rest.0.iter().fold(Lsp::one(), |a, &k| a.mul(self.th(i, k)));
            out.add_term(rest, ad);
        }
        out
    }

    /// Right scan: `e_i*(w f_j) = θ̃_ij e_i*(w) f_j + δ_ij w`.
    pub fn estar_word_right(&self, i: usize, w: &Word) -> UMinusElt {
        let Some((&j, rest)) = w.0.split_last() else {
            return UMinusElt::zero();
        };
        let rest = Word(rest.to_vec());
        let mut out = self.estar_word_right(i, &rest).mul(&UMinusElt::letters(&[j])).scale(self.th(i, j));
        if j == i {
            out.add_term(rest, Lsp::one());
        }
        out
    }

    pub fn estar(&self, i: usize, x: &UMinusElt) -> UMinusElt {
        x.map_words(|w| self.estar_word(i, w))
    }

    pub fn estar_right(&self, i: usize, x: &UMinusElt) -> UMinusElt {
        x.map_words(|w| self.estar_word_right(i, w))
    }

    /// `[n]_{1, p̃_i}`, the tilde quantum integer.
    pub fn tint(&self, i: usize, n: u32) -> Lsp {
        qint(n, &Lsp::one(), &self.tt.tp[i])
    }

    pub fn tbinom(&self, i: usize, m: u32, n: u32) -> Result<Lsp> {
        qbinom(m, n, &Lsp::one(), &self.tt.tp[i])
    }

    /// `e_i′^n f_j = θ̃_ji^n f_j e_i′^n + δ_ij p_i^{1-n}[n]_{p_i} e_i′^{n-1}` on each word.
    pub fn eprime_power_check(&self, i: usize, j: usize, n: u32, words: &[Word]) -> Result<bool> {
        let pow = |x: &UMinusElt, k: u32| (0..k).fold(x.clone(), |acc, _| self.eprime(i, &acc));
        // p_i^{1-n}[n]_{p_i} = [n]_{1, p̃_i^{-1}}
        let c = qint(n, &Lsp::one(), &upow(&self.tt.tp[i], -1)?);
        let thn = upow(self.th(j, i), n as i64)?;
        for w in words {
            let x = UMinusElt::word(w.clone());
            let lhs = pow(&UMinusElt::letters(&[j]).mul(&x), n);
            let mut rhs = UMinusElt::letters(&[j]).mul(&pow(&x, n)).scale(&thn);
            if i == j {
                rhs = rhs.add(&pow(&x, n - 1).scale(&c));
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Dual vectors for every word of content `≤ beta`.
    pub fn form_table(&self, beta: &[i64]) -> FormTable {
        dual_table(self.rank(), &levels_below(beta), |i, w| self.eprime_word(i, w))
    }

    /// `(1,1) = 1`, `(x, f_i y) = (e_i′x, y)`; zero across different weights.
    pub fn form(&self, x: &UMinusElt, y: &UMinusElt) -> Lsp {
        let n = self.rank();
        let mut acc = Lsp::zero();
        let mut by_content: BTreeMap<RootVec, (UMinusElt, UMinusElt)> = BTreeMap::new();
        for (w, c) in x.terms() {
            by_content.entry(w.content(n)).or_default().0.add_term(w.clone(), c.clone());
        }
        for (w, c) in y.terms() {
            by_content.entry(w.content(n)).or_default().1.add_term(w.clone(), c.clone());
        }
        for (beta, (a, b)) in by_content {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            acc = acc.add(&self.form_table(&beta).form(&a, &b));
        }
        acc
    }

    /// Gram matrix on `words_of_weight(beta)`.
    pub fn gram(&self, beta: &[i64]) -> (Vec<Word>, Mat<Lsp>) {
        let words = words_of_weight(beta);
        let t = self.form_table(beta);
        let m = Mat::from_fn(words.len(), words.len(), |a, b| t.pair(&words[a], &words[b]));
        (words, m)
    }

    /// Rank on every branch; the branches must agree.
    pub fn rank_of(&self, m: &Mat<Lsp>) -> Result<usize> {
        let mut out = None;
        for (k, b) in self.branches.iter().enumerate() {
            let r = laurent_rank(m, *b, 0x5eed + k as u64)?;
            match out {
                None => out = Some(r),
                Some(prev) if prev != r => {
                    return Err(Error::Inconsistent(format!("rank {prev} on one branch but {r} on branch {}", b.0)));
                }
                _ => {}
            }
        }
        Ok(out.unwrap_or(0))
    }

    pub fn gram_rank(&self, beta: &[i64]) -> Result<usize> {
        self.rank_of(&self.gram(beta).1)
    }

    /// Gram rank, required to match the coefficient of `e^{-β}` in `Π(1-e^{-α})^{-mult α}`.
    pub fn weight_dim(&self, beta: &[i64]) -> Result<usize> {
        let r = self.gram_rank(beta)?;
        let expected = self.kostant(beta)?;
        if r as i64 != expected {
            return Err(Error::Inconsistent(format!("gram rank {r} at {beta:?}, product formula gives {expected}")));
        }
        Ok(r)
    }

    pub fn kostant(&self, beta: &[i64]) -> Result<i64> {
        let roots = self.datum.positive_roots(height(beta) as usize)?;
        Ok(kostant_series(&roots, beta)[beta])
    }

    /// `[N]~!` times `Σ_k (-θ̃_ji)^{-k} p̃_i^{k(k-1)/2} f_i^{(N-k)} f_j f_i^{(k)}`, `N = 1 - a_ij`.
    pub fn serre_element(&self, i: usize, j: usize) -> Result<UMinusElt> {
        if i == j {
            return Err(Error::Domain("Serre elements need i != j".into()));
        }
        let big_n = (1 - self.datum.a[i][j]) as u32;
        let mut out = UMinusElt::zero();
        let minus_th = self.th(j, i).neg();
        for k in 0..=big_n {
            let c = upow(&minus_th, -(k as i64))?
                .mul(&upow(&self.tt.tp[i], (k * k.saturating_sub(1) / 2) as i64)?)
                .mul(&self.tbinom(i, big_n, k)?);
            let mut letters = vec![i; (big_n - k) as usize];
            letters.push(j);
            letters.extend(std::iter::repeat_n(i, k as usize));
            out.add_term(Word(letters), c);
        }
        Ok(out)
    }

    pub fn serre_in_radical(&self, i: usize, j: usize) -> Result<bool> {
        let s = self.serre_element(i, j)?;
        let beta = s.content(self.rank()).expect("homogeneous");
        let t = self.form_table(&beta);
        Ok(words_of_weight(&beta).into_iter().all(|w| t.form(&s, &UMinusElt::word(w)).is_zero()))
    }

    /// `{w₁ S_ij w₂}` of content `β`.
    pub fn serre_ideal_spanning(&self, beta: &[i64]) -> Result<Vec<UMinusElt>> {
        let n = self.rank();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let s = self.serre_element(i, j)?;
                let c = s.content(n).expect("homogeneous");
                let rest: Vec<i64> = (0..n).map(|k| beta[k] - c[k]).collect();
                if rest.iter().any(|&x| x < 0) {
                    continue;
                }
                for g1 in boxes_below(&rest) {
                    let g2: Vec<i64> = (0..n).map(|k| rest[k] - g1[k]).collect();
                    for w1 in words_of_weight(&g1) {
                        for w2 in words_of_weight(&g2) {
                            out.push(UMinusElt::word(w1.clone()).mul(&s).mul(&UMinusElt::word(w2)));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `(corank of gram(β), dim span of the Serre ideal at β)`, plus whether the span pairs to zero.
    pub fn radical_vs_serre(&self, beta: &[i64]) -> Result<(usize, usize, bool)> {
        let (words, g) = self.gram(beta);
        let corank = words.len() - self.rank_of(&g)?;
        let span = self.serre_ideal_spanning(beta)?;
        let t = self.form_table(beta);
        let inside = span.iter().all(|s| words.iter().all(|w| t.form(s, &UMinusElt::word(w.clone())).is_zero()));
        let dim = if span.is_empty() {
            0
        } else {
            let m = Mat::from_fn(span.len(), words.len(), |a, b| span[a].coeff(&words[b]));
            self.rank_of(&m)?
        };
        Ok((corank, dim, inside))
    }

    /// `Σ_n x_n e_i′^{b-n} e_j′ e_i′^n = 0` with `x_n = (-θ̃_ij)^n p̃_i^{n(n+1-2b)/2} [b,n]~`.
    pub fn eprime_serre(&self, i: usize, j: usize, x: &UMinusElt) -> Result<UMinusElt> {
        let b = (1 - self.datum.a[i][j]) as u32;
        let mut out = UMinusElt::zero();
        let minus_th = self.th(i, j).neg();
        for n in 0..=b {
            let e2 = (n as i64) * (n as i64 + 1 - 2 * b as i64) / 2;
            let c = upow(&minus_th, n as i64)?.mul(&upow(&self.tt.tp[i], e2)?).mul(&self.tbinom(i, b, n)?);
            let mut y = x.clone();
            for _ in 0..n {
                y = self.eprime(i, &y);
            }
            y = self.eprime(j, &y);
            for _ in n..b {
                y = self.eprime(i, &y);
            }
            out = out.add(&y.scale(&c));
        }
        Ok(out)
    }

    /// e′-Serre relations and `e_i′ e_j* = e_j* e_i′` on all words of length `≤ cutoff`.
    pub fn boson_relation_check(&self, cutoff: usize) -> Result<bool> {
        let n = self.rank();
        let words = words_up_to(n, cutoff);
        for w in &words {
            let x = UMinusElt::word(w.clone());
            for i in 0..n {
                for j in 0..n {
                    if i != j && !self.eprime_serre(i, j, &x)?.is_zero() {
                        return Ok(false);
                    }
                    if self.eprime(i, &self.estar(j, &x)) != self.estar(j, &self.eprime(i, &x)) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// `Π_i (p_i - p_i^{-1})^{m_i}` for content `m`.
    pub fn bold_factor(&self, beta: &[i64]) -> Result<Lsp> {
        let mut acc = Lsp::one();
        for (i, &m) in beta.iter().enumerate() {
            let d = self.p[i].sub(&upow(&self.p[i], -1)?);
            acc = acc.mul(&d.pow(m as u32));
        }
        Ok(acc)
    }

    /// Gram matrix for the `E_i′ = (p_i - p_i^{-1})^{-1} e_i′` normalization, per `√π` branch.
    pub fn bold_gram(&self, beta: &[i64]) -> Result<Vec<(Branch, Mat<K>)>> {
        let (_, g) = self.gram(beta);
        let f = self.bold_factor(beta)?;
        Branch::SQRT_PI
            .iter()
            .map(|&b| {
                let fk = laurent_to_k(&f, b);
                if fk.is_zero() {
                    return Err(Error::Domain(format!("p_i - p_i^-1 vanishes on branch {}", b.0)));
                }
                let inv = crate::ring::Field::inv(&fk);
                Ok((b, g.map(|x| laurent_to_k(x, b).mul(&inv))))
            })
            .collect()
    }

    /// Whether every normalized form value is a Laurent polynomial, per branch.
    pub fn bold_integrality(&self, beta: &[i64]) -> Result<Vec<(Branch, bool)>> {
        Ok(self
            .bold_gram(beta)?
            .into_iter()
            .map(|(b, m)| {
                let ok = (0..m.rows()).all(|r| (0..m.cols()).all(|c| is_laurent(m.get(r, c))));
                (b, ok)
            })
            .collect())
    }
}

fn is_laurent(x: &K) -> bool {
    let d = x.den().coeffs();
    d[..d.len() - 1].iter().all(|c| c.is_zero())
}

fn boxes_below(b: &[i64]) -> Vec<RootVec> {
    let mut pts: Vec<RootVec> = vec![vec![]];
    for &x in b {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (0..=x).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan;
    use crate::coeffs::LaurentPi;
    use crate::params::preset;

    fn boson(d: &str, p: &str) -> Boson {
        let d = cartan::preset(d).unwrap();
        let f = preset(p, &d).unwrap();
        Boson::new(&d, &f).unwrap()
    }

    fn pq(e: i64, m: i64) -> Lsp {
        LaurentPi::pi_q(e, m).to_sqrt()
    }

    #[test]
    fn eprime_base_cases() {
        let b = boson("A2", "Uqsg");
        assert_eq!(b.eprime(0, &UMinusElt::letters(&[0])), UMinusElt::one());
        assert!(b.eprime(0, &UMinusElt::letters(&[1])).is_zero());
        let b = boson("A1odd", "Uqsg");
        let got = b.eprime(0, &UMinusElt::letters(&[0, 0]));
        assert_eq!(got, UMinusElt::term(Word(vec![0]), Lsp::one().add(&pq(1, -2))));
    }

    #[test]
    fn estar_examples_and_scans_agree() {
        let b = boson("A2", "Uqsg");
        assert_eq!(b.estar(0, &UMinusElt::letters(&[0])), UMinusElt::one());
        assert_eq!(b.estar(0, &UMinusElt::letters(&[0, 1])), UMinusElt::term(Word(vec![1]), b.tt.ttheta[0][1].clone()));
        assert_eq!(b.estar(0, &UMinusElt::letters(&[1, 0])), UMinusElt::letters(&[1]));
        for w in random_words(2, 60, 6, 7) {
            for i in 0..2 {
                assert_eq!(b.estar_word(i, &w), b.estar_word_right(i, &w));
            }
        }
    }

    #[test]
    fn form_small_values() {
        let b = boson("A1odd", "Uqsg");
        assert!(b.form(&UMinusElt::one(), &UMinusElt::one()).is_one());
        assert!(b.form(&UMinusElt::letters(&[0]), &UMinusElt::letters(&[0])).is_one());
        let f2 = UMinusElt::letters(&[0, 0]);
        assert_eq!(b.form(&f2, &f2), Lsp::one().add(&pq(1, -2)));
        assert!(b.form(&UMinusElt::letters(&[0]), &f2).is_zero());
    }

    #[test]
    fn gram_ranks() {
        let b = boson("A2", "Uqsg");
        assert_eq!(b.gram(&[1, 0]).1.get(0, 0), &Lsp::one());
        assert_eq!(b.weight_dim(&[1, 0]).unwrap(), 1);
        let (w, _) = b.gram(&[2, 1]);
        assert_eq!(w.len(), 3);
        assert_eq!(b.weight_dim(&[2, 1]).unwrap(), 2);
        let b = boson("A1odd", "Uqsg");
        assert_eq!(b.weight_dim(&[3]).unwrap(), 1);
    }

    #[test]
    fn power_identity() {
        let b = boson("A1odd", "Uqsg");
        let words: Vec<Word> = (0..=4).map(|k| Word(vec![0; k])).collect();
        assert!(b.eprime_power_check(0, 0, 1, &words).unwrap());
        assert!(b.eprime_power_check(0, 0, 2, &words).unwrap());
        let b = boson("B2", "Uqsg");
        let words = random_words(2, 40, 5, 3);
        assert!(b.eprime_power_check(0, 1, 3, &words).unwrap());
        assert!(b.eprime_power_check(1, 1, 3, &words).unwrap());
    }

    #[test]
    fn serre_elements() {
        let b = boson("A2", "Uqsg");
        let s = b.serre_element(0, 1).unwrap();
        assert_eq!(s.len(), 3);
        assert!(b.serre_in_radical(0, 1).unwrap());
        assert!(matches!(b.serre_element(0, 0), Err(Error::Domain(_))));
        let b = boson("B2", "Uqsg");
        assert_eq!(b.serre_element(1, 0).unwrap().content(2), Some(vec![1, 3]));
        assert!(b.serre_in_radical(1, 0).unwrap());
        assert!(b.serre_in_radical(0, 1).unwrap());
    }

    #[test]
    fn boson_relations_and_negative_control() {
        assert!(boson("A2", "Uqsg").boson_relation_check(4).unwrap());
        assert!(boson("A1odd", "Uqsg").boson_relation_check(6).unwrap());
        let mut b = boson("A2", "Uqsg");
        b.tt.ttheta[0][1] = b.tt.ttheta[0][1].mul(&Lsp::q_pow(1));
        assert!(!b.boson_relation_check(4).unwrap());
    }

    #[test]
    fn radical_is_serre_ideal() {
        for (d, betas) in [
            ("A2", vec![vec![2, 1], vec![2, 2], vec![3, 2]]),
            ("B2", vec![vec![1, 3], vec![2, 2], vec![1, 4]]),
            ("A1affine", vec![vec![3, 1], vec![2, 2], vec![3, 2]]),
        ] {
            let b = boson(d, "Uqsg");
            for beta in betas {
                let (corank, dim, inside) = b.radical_vs_serre(&beta).unwrap();
                assert!(inside, "{d} {beta:?}");
                assert_eq!(corank, dim, "{d} {beta:?}");
            }
        }
    }

    #[test]
    fn bold_normalization_reports_integrality() {
        let b = boson("A1odd", "boldU");
        let r = b.bold_integrality(&[1]).unwrap();
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(|(_, ok)| !ok));
    }
}
