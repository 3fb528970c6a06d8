use super::perm::{act, all_perms, lex_reduced_word};
use crate::cartan::{CartanSuperdatum, Weight};
use crate::coeffs::{LaurentPi, PiScalar};
use crate::error::{Error, Result};
use crate::ring::Ring;
use num_rational::BigRational;
use std::collections::{BTreeMap, BTreeSet};

/// `(q,π)`-characters `Σ_ν dim^π_q(e(ν)M) e(ν)`.
pub type Character = BTreeMap<Vec<usize>, LaurentPi>;

/// The sequences `I^β`.
pub fn sequences(beta: &[i64]) -> Vec<Vec<usize>> {
    let mut out = BTreeSet::new();
    let mut base: Vec<usize> = beta.iter().enumerate().flat_map(|(i, &m)| std::iter::repeat_n(i, m.max(0) as usize)).collect();
    base.sort_unstable();
    for p in all_perms(base.len()) {
        out.insert(act(&p, &base));
    }
    out.into_iter().collect()
}

/// `dim^π_q R(β)` in degrees `≤ max_degree`, counted over the PBW basis.
pub fn graded_dim(datum: &CartanSuperdatum, beta: &[i64], max_degree: i64) -> Result<LaurentPi> {
    if beta.len() != datum.rank || beta.iter().any(|&b| b < 0) {
        return Err(Error::Domain(format!("{beta:?} is not in Q⁺")));
    }
    let n: i64 = beta.iter().sum();
    if n > 6 {
        return Err(Error::Domain("graded dimensions are enumerated for |β| ≤ 6".into()));
    }
    let mut acc: BTreeMap<i64, [i64; 2]> = BTreeMap::new();
    for nu in sequences(beta) {
        for w in all_perms(nu.len()) {
            let mut mu = nu.clone();
            let (mut deg, mut par) = (0i64, 0usize);
            for &c in lex_reduced_word(&w).iter().rev() {
                let c = c as usize;
                deg -= datum.root_form(mu[c], mu[c + 1]);
                par ^= (datum.parity[mu[c]] & datum.parity[mu[c + 1]]) as usize;
                mu.swap(c, c + 1);
            }
            // Π_k Σ_a π^{a p(λ_k)} q^{a (α_{λ_k}|α_{λ_k})}, truncated
            let mut series: BTreeMap<i64, [i64; 2]> = BTreeMap::from([(deg, [0, 0])]);
            series.get_mut(&deg).expect("seeded")[par] = 1;
            for &i in &mu {
                let step = datum.root_form(i, i);
                let odd = datum.parity[i] as usize;
                let mut next: BTreeMap<i64, [i64; 2]> = BTreeMap::new();
                for (&e, c) in &series {
                    let mut a = 0;
                    while e + a * step <= max_degree {
                        let slot = next.entry(e + a * step).or_default();
                        let flip = (a as usize * odd) % 2;
                        slot[0] += c[flip];
                        slot[1] += c[1 - flip];
                        a += 1;
                    }
                }
                series = next;
            }
            for (e, c) in series {
                let slot = acc.entry(e).or_default();
                slot[0] += c[0];
                slot[1] += c[1];
            }
        }
    }
    Ok(LaurentPi::from_terms(acc.into_iter().filter(|(e, _)| *e <= max_degree).map(|(e, [a, b])| (e, PiScalar::new(a, b)))))
}

/// `ch L(iⁿ)` for `L(iⁿ) = R(nα_i) ⊗_{𝕜[x]} 𝕜`, spanned by `τ_w ⊗ 1`.
pub fn char_l_in(datum: &CartanSuperdatum, i: usize, n: usize) -> Character {
    let step = LaurentPi::pi_q(datum.parity[i] as i64, -datum.root_form(i, i));
    let mut dim = LaurentPi::zero();
    for w in all_perms(n) {
        let l = lex_reduced_word(&w).len() as i64;
        dim = dim.add(&step.powi(l).expect("monomial"));
    }
    BTreeMap::from([(vec![i; n], dim)])
}

/// Restriction of `ch` to sequences ending in `iᵏ`.
pub fn char_delta(ch: &Character, i: usize, k: usize) -> Character {
    ch.iter()
        .filter(|(nu, v)| !v.is_zero() && nu.len() >= k && nu[nu.len() - k..].iter().all(|&x| x == i))
        .map(|(nu, v)| (nu.clone(), v.clone()))
        .collect()
}

pub fn char_epsilon(ch: &Character, i: usize) -> usize {
    let longest = ch.keys().map(Vec::len).max().unwrap_or(0);
    (0..=longest).rev().find(|&k| !char_delta(ch, i, k).is_empty()).unwrap_or(0)
}

/// Coefficients of `a^Λ_i(u) = Σ_k c_{i;k} u^{⟨h_i,Λ⟩-k}`, indexed by the power of `u`.
/// `c` lists `c_{i;1}, c_{i;2}, …`; missing entries are zero.
pub fn cyclotomic_poly(datum: &CartanSuperdatum, lambda: &Weight, i: usize, c: &[BigRational]) -> Result<Vec<BigRational>> {
    if !datum.is_dominant(lambda) {
        return Err(Error::Domain("cyclotomic polynomials need a dominant weight".into()));
    }
    let top = datum.pairing(i, lambda) as usize;
    if c.len() > top {
        return Err(Error::Domain(format!("{} coefficients supplied for degree {top}", c.len())));
    }
    let mut out = vec![BigRational::zero(); top + 1];
    out[top] = BigRational::one();
    for (k, ck) in c.iter().enumerate().map(|(k, x)| (k + 1, x)) {
        if datum.parity[i] == 1 && k % 2 == 1 && !ck.is_zero() {
            return Err(Error::Inadmissible(format!("c_{{{i};{k}}} must vanish for odd i and odd k")));
        }
        out[top - k] = ck.clone();
    }
    Ok(out)
}

/// The default cyclotomic polynomial is monic of degree `⟨h_i,Λ⟩`.
pub fn cyclotomic_degree_check(datum: &CartanSuperdatum, lambda: &Weight, i: usize) -> Result<bool> {
    let p = cyclotomic_poly(datum, lambda, i, &[])?;
    Ok(p.len() as i64 - 1 == datum.pairing(i, lambda) && p.last().is_some_and(|x| x.is_one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::preset;
    use crate::coeffs::gauss_pi_fact;
    use num_bigint::BigInt;

    /// Direct PBW enumeration with exponents bounded by `bound`.
    fn brute(d: &CartanSuperdatum, beta: &[i64], max_degree: i64, bound: u32) -> LaurentPi {
        let mut acc = LaurentPi::zero();
        for nu in sequences(beta) {
            let n = nu.len();
            for w in all_perms(n) {
                let word = lex_reduced_word(&w);
                let mut mu = nu.clone();
                let (mut deg, mut par) = (0, 0);
                for &c in word.iter().rev() {
                    let c = c as usize;
                    deg -= d.root_form(mu[c], mu[c + 1]);
                    par += (d.parity[mu[c]] * d.parity[mu[c + 1]]) as i64;
                    mu.swap(c, c + 1);
                }
                let mut a = vec![0u32; n];
                loop {
                    let e = deg + (0..n).map(|k| a[k] as i64 * d.root_form(mu[k], mu[k])).sum::<i64>();
                    let p = par + (0..n).map(|k| a[k] as i64 * d.parity[mu[k]] as i64).sum::<i64>();
                    if e <= max_degree {
                        acc = acc.add(&LaurentPi::pi_q(p, e));
                    }
                    let Some(k) = (0..n).find(|&k| a[k] < bound) else { break };
                    a[k] += 1;
                    a[..k].iter_mut().for_each(|x| *x = 0);
                }
            }
        }
        acc
    }

    #[test]
    fn rank_one_series() {
        let d = preset("A1").unwrap();
        assert_eq!(graded_dim(&d, &[1], 6).unwrap(), LaurentPi::from_terms((0..=3).map(|k| (2 * k, PiScalar::new(1, 0)))));
        let d = preset("A1odd").unwrap();
        assert_eq!(graded_dim(&d, &[1], 6).unwrap(), LaurentPi::from_terms((0..=3).map(|k| (2 * k, PiScalar::pi_pow(k)))));
    }

    #[test]
    fn two_alpha_families() {
        // {x^a e(ii)} from degree 0 and {x^a τ₁ e(ii)} from degree -2
        let d = preset("A1").unwrap();
        let g = graded_dim(&d, &[2], 4).unwrap();
        let expect = [(-2, 1), (0, 3), (2, 5), (4, 7)];
        assert_eq!(g, LaurentPi::from_terms(expect.iter().map(|&(e, c)| (e, PiScalar::new(c, 0)))));
    }

    #[test]
    fn matches_enumeration() {
        for (name, beta) in [("A2", vec![1, 1]), ("B2odd", vec![1, 2]), ("A1odd", vec![3]), ("B2", vec![2, 1])] {
            let d = preset(name).unwrap();
            assert_eq!(graded_dim(&d, &beta, 8).unwrap(), brute(&d, &beta, 8, 8), "{name}");
        }
    }

    #[test]
    fn l_in_character() {
        for name in ["A1", "A1odd"] {
            let d = preset(name).unwrap();
            for n in 1..=4 {
                let ch = char_l_in(&d, 0, n);
                let dim = &ch[&vec![0; n]];
                let fact = gauss_pi_fact(n as u32, d.d[0], d.parity[0]);
                let shift = n as i64 * (n as i64 - 1) / 2;
                let unit = LaurentPi::pi_q(d.parity[0] as i64 * shift, -d.d[0] * shift);
                assert_eq!(*dim, fact.mul(&unit), "{name} n={n}");
                assert_eq!(char_epsilon(&ch, 0), n);
            }
        }
    }

    #[test]
    fn epsilon_examples() {
        let one = LaurentPi::one();
        let ch: Character = BTreeMap::from([(vec![0], one.clone())]);
        assert_eq!((char_epsilon(&ch, 0), char_epsilon(&ch, 1)), (1, 0));
        let mixed: Character = BTreeMap::from([(vec![0, 1], one.clone()), (vec![1, 0], LaurentPi::q_pow(1))]);
        assert_eq!((char_epsilon(&mixed, 0), char_epsilon(&mixed, 1)), (1, 1));
        assert_eq!(char_delta(&mixed, 0, 1).keys().collect::<Vec<_>>(), vec![&vec![1, 0]]);
        let lone: Character = BTreeMap::from([(vec![0, 1], one), (vec![1, 0], LaurentPi::zero())]);
        assert_eq!(char_epsilon(&lone, 0), 0);
        assert_eq!(char_epsilon(&lone, 1), 1);
    }

    #[test]
    fn cyclotomic() {
        let d = preset("A1odd").unwrap();
        let l = Weight(vec![2]);
        let r = |x: i64| BigRational::from_integer(BigInt::from(x));
        assert_eq!(cyclotomic_poly(&d, &l, 0, &[]).unwrap(), vec![r(0), r(0), r(1)]);
        assert!(matches!(cyclotomic_poly(&d, &l, 0, &[r(1)]), Err(Error::Inadmissible(_))));
        assert_eq!(cyclotomic_poly(&d, &l, 0, &[r(0), r(5)]).unwrap(), vec![r(5), r(0), r(1)]);
        let e = preset("A1").unwrap();
        assert_eq!(cyclotomic_poly(&e, &l, 0, &[r(3)]).unwrap(), vec![r(0), r(3), r(1)]);
        for (name, lam) in [("A2", vec![1, 2]), ("B2odd", vec![2, 1])] {
            let d = preset(name).unwrap();
            for i in 0..2 {
                assert!(cyclotomic_degree_check(&d, &Weight(lam.clone()), i).unwrap());
            }
        }
        assert!(cyclotomic_poly(&e, &Weight(vec![-1]), 0, &[]).is_err());
    }
}
