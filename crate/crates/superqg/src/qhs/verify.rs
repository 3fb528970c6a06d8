use super::perm::{reduced_words, Perm};
use super::rewrite::{Gen, Rewriter};
use super::QHSElement;
use crate::error::Result;
use crate::highest::Outcome;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Combo = Vec<(BigRational, Vec<Gen>)>;

fn r(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn sg(e: i64) -> BigRational {
    r(if e % 2 == 0 { 1 } else { -1 })
}

fn lin(rw: &Rewriter, parts: &Combo) -> Result<QHSElement> {
    let mut out = QHSElement::zero();
    for (c, w) in parts {
        out.add_scaled(&rw.word_element(w)?, c);
    }
    Ok(out)
}

fn xs(letters: &[usize]) -> Vec<Gen> {
    letters.iter().map(|&k| Gen::X(k)).collect()
}

fn rep(l: usize, m: u32) -> impl Iterator<Item = usize> + Clone {
    std::iter::repeat_n(l, m as usize)
}

pub(crate) fn all_sequences(rank: usize, n: usize) -> Vec<Vec<usize>> {
    (0..rank.pow(n as u32))
        .map(|mut c| {
            let mut nu = vec![0; n];
            for s in nu.iter_mut().rev() {
                *s = c % rank;
                c /= rank;
            }
            nu
        })
        .collect()
}

/// Exponent pairs of `Q_{i,j}(u,v)` with coefficients.
fn q_terms(rw: &Rewriter, i: usize, j: usize) -> Vec<(u32, u32, BigRational)> {
    rw.params
        .terms()
        .into_iter()
        .filter_map(|t| match (t.i, t.j) {
            (a, b) if (a, b) == (i, j) => Some((t.r, t.s, t.t)),
            (a, b) if (a, b) == (j, i) => Some((t.s, t.r, t.t)),
            _ => None,
        })
        .collect()
}

/// Each defining relation of `R(n)`, stated directly from the residue parities, straightens
/// to zero on every `e(ν)`. The braid deviation is checked after clearing its denominator.
pub fn relation_closure(rw: &Rewriter) -> Result<Outcome> {
    let d = &rw.params.datum;
    let p = |i: usize| d.parity[i] as i64;
    let n = rw.n;
    for nu in all_sequences(d.rank, n) {
        let e = Gen::E(nu.clone());
        let mut checks: Vec<(String, Combo)> = Vec::new();
        for a in 0..n {
            for b in (0..n).filter(|&b| b != a) {
                let s = sg(p(nu[a]) * p(nu[b]));
                checks.push((format!("x{} x{}", a + 1, b + 1), vec![(r(1), vec![Gen::X(a), Gen::X(b), e.clone()]), (-s, vec![Gen::X(b), Gen::X(a), e.clone()])]));
            }
        }
        for a in 0..n.saturating_sub(1) {
            let (i, j) = (nu[a], nu[a + 1]);
            let s = sg(p(i) * p(j));
            let delta = r((i == j) as i64);
            for q in (0..n).filter(|&q| q != a && q != a + 1) {
                let t = sg(p(nu[q]) * p(i) * p(j));
                checks.push((format!("t{} x{}", a + 1, q + 1), vec![(r(1), vec![Gen::T(a), Gen::X(q), e.clone()]), (-t, vec![Gen::X(q), Gen::T(a), e.clone()])]));
            }
            checks.push((
                format!("t{0} x{1} - x{0} t{0}", a + 1, a + 2),
                vec![(r(1), vec![Gen::T(a), Gen::X(a + 1), e.clone()]), (-s.clone(), vec![Gen::X(a), Gen::T(a), e.clone()]), (-delta.clone(), vec![e.clone()])],
            ));
            checks.push((
                format!("x{1} t{0} - t{0} x{0}", a + 1, a + 2),
                vec![(r(1), vec![Gen::X(a + 1), Gen::T(a), e.clone()]), (-s, vec![Gen::T(a), Gen::X(a), e.clone()]), (-delta, vec![e.clone()])],
            ));
            let mut sq = vec![(r(1), vec![Gen::T(a), Gen::T(a), e.clone()])];
            if i != j {
                for (rr, ss, t) in q_terms(rw, i, j) {
                    let letters: Vec<usize> = rep(a, rr).chain(rep(a + 1, ss)).collect();
                    sq.push((-t, [xs(&letters), vec![e.clone()]].concat()));
                }
            }
            checks.push((format!("t{}^2", a + 1), sq));
            for b in (0..n - 1).filter(|&b| b.abs_diff(a) > 1) {
                let t = sg(p(nu[a]) * p(nu[a + 1]) * p(nu[b]) * p(nu[b + 1]));
                checks.push((format!("t{} t{}", a + 1, b + 1), vec![(r(1), vec![Gen::T(a), Gen::T(b), e.clone()]), (-t, vec![Gen::T(b), Gen::T(a), e.clone()])]));
            }
        }
        for (what, combo) in &checks {
            if !lin(rw, combo)?.is_zero() {
                return Ok(Outcome::fail(format!("{what} fails at e{nu:?}")));
            }
        }
        for a in 0..n.saturating_sub(2) {
            let dev: Combo = vec![
                (r(1), vec![Gen::T(a + 1), Gen::T(a), Gen::T(a + 1), e.clone()]),
                (r(-1), vec![Gen::T(a), Gen::T(a + 1), Gen::T(a), e.clone()]),
            ];
            let (i, j) = (nu[a], nu[a + 1]);
            if nu[a + 2] != i || i == j {
                if !lin(rw, &dev)?.is_zero() {
                    return Ok(Outcome::fail(format!("braid t{} fails at e{nu:?}", a + 1)));
                }
                continue;
            }
            // (X^k - Y^k)·dev = (-1)^{p(j)}(X - Y)^{k-1}·(Q(X, x_{a+1}) - Q(Y, x_{a+1})), k = 1 + p(i)
            let odd = p(i) == 1;
            let k = if odd { 2 } else { 1 };
            let mut lhs = Combo::new();
            for (c, w) in &dev {
                lhs.push((c.clone(), [xs(&vec![a + 2; k]), w.clone()].concat()));
                lhs.push((-c.clone(), [xs(&vec![a; k]), w.clone()].concat()));
            }
            let mut rhs = Combo::new();
            for (rr, ss, t) in q_terms(rw, i, j) {
                for (var, c) in [(a + 2, t.clone()), (a, -t)] {
                    let body: Vec<usize> = rep(var, rr).chain(rep(a + 1, ss)).collect();
                    if odd {
                        let c = c * sg(p(j));
                        rhs.push((c.clone(), [xs(&[a + 2]), xs(&body), vec![e.clone()]].concat()));
                        rhs.push((-c, [xs(&[a]), xs(&body), vec![e.clone()]].concat()));
                    } else {
                        rhs.push((c, [xs(&body), vec![e.clone()]].concat()));
                    }
                }
            }
            if lin(rw, &lhs)? != lin(rw, &rhs)? {
                return Ok(Outcome::fail(format!("braid deviation t{} fails at e{nu:?}", a + 1)));
            }
        }
    }
    Ok(Outcome::pass())
}

/// A random product of `len` generators `x_k`, `τ_a`.
pub fn random_word(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Vec<Gen> {
    (0..len).map(|_| if n > 1 && rng.gen_bool(0.5) { Gen::T(rng.gen_range(0..n - 1)) } else { Gen::X(rng.gen_range(0..n)) }).collect()
}

/// `(uv)w = u(vw)` on `cases` random triples, each factor a word times a random `e(ν)`.
pub fn associativity_fuzz(rw: &Rewriter, cases: usize, seed: u64, max_len: usize) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rank = rw.params.datum.rank;
    for case in 0..cases {
        let mut factor = || -> Result<QHSElement> {
            let len = rng.gen_range(0..=max_len);
            let mut w = random_word(&mut rng, rw.n, len);
            w.push(Gen::E((0..rw.n).map(|_| rng.gen_range(0..rank)).collect()));
            rw.word_element(&w)
        };
        let (u, v, w) = (factor()?, factor()?, factor()?);
        let left = rw.multiply(&rw.multiply(&u, &v)?, &w)?;
        let right = rw.multiply(&u, &rw.multiply(&v, &w)?)?;
        if left != right {
            return Ok(Outcome::fail(format!("associativity fails on case {case} (seed {seed})")));
        }
    }
    Ok(Outcome::pass())
}

/// `b_k² = b_k`, the braid relations among the `b_k`, and `b(iⁿ)` equal over every reduced
/// word of the longest element.
pub fn b_checks(rw: &Rewriter, i: usize) -> Result<Outcome> {
    let n = rw.n;
    for k in 0..n.saturating_sub(1) {
        let b = rw.b_idempotent(i, k)?;
        if rw.multiply(&b, &b)? != b {
            return Ok(Outcome::fail(format!("b_{} is not idempotent", k + 1)));
        }
    }
    for k in 0..n.saturating_sub(2) as u8 {
        if rw.b_word(i, &[k, k + 1, k])? != rw.b_word(i, &[k + 1, k, k + 1])? {
            return Ok(Outcome::fail(format!("b_{} b_{} b_{} braid relation fails", k + 1, k + 2, k + 1)));
        }
    }
    let w0: Perm = (0..n as u8).rev().collect();
    let top = rw.b_longest(i)?;
    for word in reduced_words(&w0) {
        if rw.b_word(i, &word)? != top {
            return Ok(Outcome::fail(format!("b(i^{n}) depends on the reduced word {word:?}")));
        }
    }
    if rw.multiply(&top, &top)? != top {
        return Ok(Outcome::fail(format!("b(i^{n}) is not idempotent")));
    }
    Ok(Outcome::pass())
}
