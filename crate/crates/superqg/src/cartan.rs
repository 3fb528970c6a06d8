//! Cartan superdata, the weight lattice, Weyl groups and root multiplicities.

use crate::error::{Error, Result};
use crate::linalg::{inverse, rank, Mat};
use crate::ring::{rat, Ring};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

/// Element of the root lattice in simple-root coordinates.
pub type RootVec = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CartanSuperdatum {
    #[serde(default)]
    pub name: String,
    pub rank: usize,
    pub a: Vec<Vec<i64>>,
    pub d: Vec<i64>,
    pub parity: Vec<u8>,
    pub coweights: Vec<Vec<i64>>,
    pub simple_roots: Vec<Vec<i64>>,
    #[serde(with = "rat_matrix")]
    pub form_gram: Vec<Vec<BigRational>>,
    pub rho: Vec<i64>,
}

mod rat_matrix {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &[Vec<BigRational>], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigRational>>, D::Error> {
        let raw = Vec::<Vec<serde_json::Value>>::deserialize(d)?;
        raw.iter()
            .map(|r| {
                r.iter()
                    .map(|v| {
                        let s = match v {
                            serde_json::Value::Number(n) => n.to_string(),
                            serde_json::Value::String(s) => s.clone(),
                            _ => return Err(serde::de::Error::custom("expected a rational")),
                        };
                        s.parse::<BigRational>().map_err(serde::de::Error::custom)
                    })
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeylElement {
    pub word: Vec<usize>,
    pub sign: i8,
    /// Action on P-coordinates, row-major, `dim_p × dim_p`.
    pub matrix: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootTable {
    pub entries: Vec<(RootVec, u64)>,
    pub cutoff: usize,
}

impl RootTable {
    pub fn mult(&self, beta: &[i64]) -> u64 {
        self.entries.iter().find(|(b, _)| b == beta).map_or(0, |(_, m)| *m)
    }
}

pub fn height(beta: &[i64]) -> i64 {
    beta.iter().sum()
}

impl CartanSuperdatum {
    pub fn dim_p(&self) -> usize {
        self.form_gram.len()
    }

    pub fn pairing(&self, i: usize, lambda: &Weight) -> i64 {
        self.coweights[i].iter().zip(&lambda.0).map(|(h, l)| h * l).sum()
    }

    pub fn alpha(&self, i: usize) -> Weight {
        Weight(self.simple_roots[i].clone())
    }

    pub fn root_to_weight(&self, beta: &[i64]) -> Weight {
        let mut w = vec![0; self.dim_p()];
        for (j, &m) in beta.iter().enumerate() {
            for (k, x) in self.simple_roots[j].iter().enumerate() {
                w[k] += m * x;
            }
        }
        Weight(w)
    }

    pub fn form(&self, l: &Weight, m: &Weight) -> BigRational {
        let mut acc = rat(0, 1);
        for (i, a) in l.0.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in m.0.iter().enumerate() {
                if *b != 0 {
                    acc += &self.form_gram[i][j] * BigRational::from_integer(BigInt::from(a * b));
                }
            }
        }
        acc
    }

    /// `(α_i|α_j) = d_i a_ij`
    pub fn root_form(&self, i: usize, j: usize) -> i64 {
        self.d[i] * self.a[i][j]
    }

    /// `(β|γ)` for root-lattice elements.
    pub fn root_lattice_form(&self, b: &[i64], c: &[i64]) -> i64 {
        let mut acc = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += b[i] * c[j] * self.root_form(i, j);
            }
        }
        acc
    }

    /// `⟨h_i, β⟩` for `β` in simple-root coordinates.
    pub fn root_pairing(&self, i: usize, beta: &[i64]) -> i64 {
        (0..self.rank).map(|j| self.a[i][j] * beta[j]).sum()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.rank;
        let fail = |s: &str| Err(Error::InvalidDatum(s.to_string()));
        if n == 0 {
            return fail("rank");
        }
        if self.a.len() != n || self.a.iter().any(|r| r.len() != n) || self.d.len() != n || self.parity.len() != n {
            return fail("shape");
        }
        let dp = self.dim_p();
        if self.coweights.len() != n
            || self.simple_roots.len() != n
            || self.coweights.iter().chain(&self.simple_roots).any(|r| r.len() != dp)
            || self.form_gram.iter().any(|r| r.len() != dp)
            || self.rho.len() != dp
        {
            return fail("shape");
        }
        if self.parity.iter().any(|&p| p > 1) {
            return fail("parity values");
        }
        if self.d.iter().any(|&x| x <= 0) {
            return fail("symmetrizer positivity");
        }
        for i in 0..n {
            if self.a[i][i] != 2 {
                return fail("diagonal entries");
            }
            for j in 0..n {
                if i != j && self.a[i][j] > 0 {
                    return fail("off-diagonal sign");
                }
                if (self.a[i][j] == 0) != (self.a[j][i] == 0) {
                    return fail("zero pattern");
                }
                if self.d[i] * self.a[i][j] != self.d[j] * self.a[j][i] {
                    return fail("symmetrizability");
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.pairing(i, &self.alpha(j)) != self.a[i][j] {
                    return fail("coweight pairing");
                }
            }
        }
        for i in 0..dp {
            for j in 0..dp {
                if self.form_gram[i][j] != self.form_gram[j][i] {
                    return fail("form symmetry");
                }
            }
        }
        for i in 0..n {
            for k in 0..dp {
                let mut e = vec![0; dp];
                e[k] = 1;
                let lhs = self.form(&self.alpha(i), &Weight(e));
                if lhs != BigRational::from_integer(BigInt::from(self.d[i] * self.coweights[i][k])) {
                    return fail("form compatibility");
                }
            }
        }
        let roots = Mat::from_fn(n, dp, |i, k| rat(self.simple_roots[i][k], 1));
        if rank(&roots) != n {
            return fail("linear independence");
        }
        for i in 0..n {
            if self.parity[i] == 1 && (0..n).any(|j| self.a[i][j] % 2 != 0) {
                return fail("superdatum parity");
            }
        }
        if (0..n).any(|i| self.pairing(i, &Weight(self.rho.clone())) != 1) {
            return fail("rho");
        }
        Ok(())
    }

    pub fn reflect(&self, i: usize, lambda: &Weight) -> Weight {
        lambda.sub(&self.alpha(i).scale(self.pairing(i, lambda)))
    }

    fn reflection_matrix(&self, i: usize) -> Vec<i64> {
        let dp = self.dim_p();
        let mut m = vec![0; dp * dp];
        for r in 0..dp {
            for c in 0..dp {
                m[r * dp + c] = i64::from(r == c) - self.simple_roots[i][r] * self.coweights[i][c];
            }
        }
        m
    }

    /// Elements of length at most `cutoff`, in order of length, deduplicated by action.
    pub fn weyl_group(&self, cutoff: usize) -> Vec<WeylElement> {
        let dp = self.dim_p();
        let id: Vec<i64> = (0..dp * dp).map(|k| i64::from(k / dp == k % dp)).collect();
        let gens: Vec<Vec<i64>> = (0..self.rank).map(|i| self.reflection_matrix(i)).collect();
        let mut seen: HashSet<Vec<i64>> = HashSet::from([id.clone()]);
        let mut out = vec![WeylElement { word: vec![], sign: 1, matrix: id }];
        let mut frontier = vec![0usize];
        for len in 1..=cutoff {
            let mut next = Vec::new();
            for &idx in &frontier {
                for (i, g) in gens.iter().enumerate() {
                    let m = matmul(g, &out[idx].matrix, dp);
                    if seen.insert(m.clone()) {
                        let mut word = vec![i];
                        word.extend(&out[idx].word);
                        out.push(WeylElement { word, sign: if len % 2 == 0 { 1 } else { -1 }, matrix: m });
                        next.push(out.len() - 1);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        out
    }

    pub fn act(&self, w: &WeylElement, lambda: &Weight) -> Weight {
        let dp = self.dim_p();
        Weight((0..dp).map(|r| (0..dp).map(|c| w.matrix[r * dp + c] * lambda.0[c]).sum()).collect())
    }

    /// Whether the symmetrized matrix `DA` is positive definite.
    pub fn is_finite_type(&self) -> bool {
        let n = self.rank;
        (1..=n).all(|k| {
            let m = Mat::from_fn(k, k, |i, j| rat(self.root_form(i, j), 1));
            det(&m) > rat(0, 1)
        })
    }

    /// `Σ_w ε(w) e^{-(ρ - wρ)}` truncated at height `cutoff`, keyed by root coordinates.
    pub fn denominator(&self, cutoff: usize) -> Result<HashMap<RootVec, i64>> {
        let rho = Weight(self.rho.clone());
        let mut out: HashMap<RootVec, i64> = HashMap::new();
        for w in self.weyl_group(cutoff) {
            let diff = rho.sub(&self.act(&w, &rho));
            let beta = self
                .weight_to_root(&diff)
                .ok_or_else(|| Error::Inconsistent("ρ − wρ outside the root lattice".into()))?;
            if height(&beta) as usize <= cutoff {
                *out.entry(beta).or_insert(0) += w.sign as i64;
            }
        }
        out.retain(|_, v| *v != 0);
        Ok(out)
    }

    /// Positive roots up to height `cutoff`.
    ///
    /// With `c_β = Σ_k mult(β/k)/k` we have `Σ c_β e^{-β} = -log D` for the denominator `D`,
    /// so `ht(β) c_β = -ht(β) D_β - Σ_{0<γ<β} D_γ ht(β-γ) c_{β-γ}`. The quadratic Peterson
    /// recurrence is re-checked wherever its leading factor `(β|β-2ρ)` is nonzero.
    pub fn positive_roots(&self, cutoff: usize) -> Result<RootTable> {
        let n = self.rank;
        let boxes = qplus_up_to_height(n, cutoff);
        let den = self.denominator(cutoff)?;
        let dcoef = |g: &RootVec| den.get(g).copied().unwrap_or(0);
        let mut c: HashMap<RootVec, BigRational> = HashMap::new();
        let mut mult: BTreeMap<RootVec, u64> = BTreeMap::new();
        for beta in &boxes {
            let h = height(beta);
            if h == 0 {
                continue;
            }
            let mut acc = rat(-h * dcoef(beta), 1);
            for (g, dg) in &den {
                let hg = height(g);
                if hg == 0 || hg >= h || g.iter().zip(beta).any(|(x, y)| x > y) {
                    continue;
                }
                let rest: RootVec = beta.iter().zip(g).map(|(x, y)| x - y).collect();
                if let Some(cr) = c.get(&rest) {
                    acc -= cr * rat(dg * height(&rest), 1);
                }
            }
            let cb = acc / rat(h, 1);
            let lhs = self.root_lattice_form(beta, beta) - 2 * (0..n).map(|i| beta[i] * self.d[i]).sum::<i64>();
            if lhs != 0 {
                let mut rhs = rat(0, 1);
                for (b1, c1) in &c {
                    if b1.iter().zip(beta).any(|(x, y)| x > y) || b1 == beta {
                        continue;
                    }
                    let b2: RootVec = beta.iter().zip(b1).map(|(x, y)| x - y).collect();
                    if let Some(c2) = c.get(&b2) {
                        rhs += c1 * c2 * rat(self.root_lattice_form(b1, &b2), 1);
                    }
                }
                if rat(lhs, 1) * &cb != rhs {
                    return Err(Error::Inconsistent(format!("Peterson recurrence fails at {beta:?}")));
                }
            }
            // mult(β) = c_β − Σ_{k≥2, β/k ∈ Q⁺} mult(β/k)/k
            let mut m = cb.clone();
            for k in 2..=h {
                if beta.iter().all(|x| x % k == 0) {
                    let sub: RootVec = beta.iter().map(|x| x / k).collect();
                    if let Some(&ms) = mult.get(&sub) {
                        m -= rat(ms as i64, k);
                    }
                }
            }
            if !m.is_integer() || m.is_negative() {
                return Err(Error::Inconsistent(format!("non-integral multiplicity {m} at {beta:?}")));
            }
            let mi = m.to_integer().to_u64().unwrap();
            if mi > 0 {
                mult.insert(beta.clone(), mi);
            }
            if !Ring::is_zero(&cb) {
                c.insert(beta.clone(), cb);
            }
        }
        let mut entries: Vec<(RootVec, u64)> = mult.into_iter().collect();
        entries.sort_by_key(|(b, _)| (height(b), std::cmp::Reverse(b.clone())));
        Ok(RootTable { entries, cutoff })
    }

    /// Positive real roots by reflecting simple roots; finite type only.
    pub fn roots_by_reflection(&self) -> Vec<RootVec> {
        let n = self.rank;
        let mut seen: HashSet<RootVec> = HashSet::new();
        let mut queue: VecDeque<RootVec> = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(b) = queue.pop_front() {
            for i in 0..n {
                let k = self.root_pairing(i, &b);
                let mut r = b.clone();
                r[i] -= k;
                if r.iter().all(|&x| x >= 0) && r.iter().any(|&x| x > 0) && seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        let mut out: Vec<RootVec> = seen.into_iter().collect();
        out.sort_by_key(|b| (height(b), std::cmp::Reverse(b.clone())));
        out
    }

    pub fn parity_of(&self, beta: &[i64]) -> u8 {
        (beta.iter().zip(&self.parity).map(|(m, p)| m * *p as i64).sum::<i64>().rem_euclid(2)) as u8
    }

    pub fn is_pev(&self, lambda: &Weight) -> bool {
        (0..self.rank).all(|i| self.parity[i] == 0 || self.pairing(i, lambda) % 2 == 0)
    }

    pub fn is_c6(&self) -> bool {
        (0..self.rank).all(|i| (self.d[i] % 2 == 1) == (self.parity[i] == 1))
    }

    pub fn is_dominant(&self, lambda: &Weight) -> bool {
        (0..self.rank).all(|i| self.pairing(i, lambda) >= 0)
    }

    /// Writes a weight that lies in the span of the simple roots in root coordinates.
    pub fn weight_to_root(&self, lambda: &Weight) -> Option<RootVec> {
        let n = self.rank;
        let dp = self.dim_p();
        // Solve Σ β_j α_j = λ through the normal equations of the root matrix.
        let a = Mat::from_fn(dp, n, |k, j| rat(self.simple_roots[j][k], 1));
        let at = a.transpose();
        let ata = at.mul(&a);
        let rhs = at.mul(&Mat::from_fn(dp, 1, |k, _| rat(lambda.0[k], 1)));
        let sol = crate::linalg::solve(&ata, &rhs)?;
        let beta: Vec<BigRational> = (0..n).map(|j| sol.get(j, 0).clone()).collect();
        if beta.iter().any(|b| !b.is_integer()) {
            return None;
        }
        let beta: RootVec = beta.iter().map(|b| b.to_integer().to_i64().unwrap()).collect();
        (self.root_to_weight(&beta) == *lambda).then_some(beta)
    }

    pub fn fundamental_weight(&self, i: usize) -> Option<Weight> {
        (0..self.dim_p())
            .map(|k| {
                let mut e = vec![0; self.dim_p()];
                e[k] = 1;
                Weight(e)
            })
            .find(|w| (0..self.rank).all(|j| self.pairing(j, w) == i64::from(i == j)))
    }
}

fn matmul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x != 0 {
                for j in 0..n {
                    out[i * n + j] += x * b[k * n + j];
                }
            }
        }
    }
    out
}

fn det(m: &Mat<BigRational>) -> BigRational {
    let n = m.rows();
    let mut a = m.clone();
    let mut d = rat(1, 1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !Ring::is_zero(a.get(i, k))) else { return rat(0, 1) };
        if p != k {
            for j in 0..n {
                let t = a.get(p, j).clone();
                let u = a.get(k, j).clone();
                a.set(p, j, u);
                a.set(k, j, t);
            }
            d = -d;
        }
        let piv = a.get(k, k).clone();
        d *= &piv;
        for i in k + 1..n {
            let f = a.get(i, k) / &piv;
            for j in k..n {
                let v = a.get(i, j) - &f * a.get(k, j);
                a.set(i, j, v);
            }
        }
    }
    d
}

/// All `β ∈ Q⁺` of height at most `h`, by height then lexicographically.
pub fn qplus_up_to_height(n: usize, h: usize) -> Vec<RootVec> {
    let mut out = Vec::new();
    for total in 0..=h as i64 {
        let mut cur = vec![0; n];
        compositions(n, total, 0, &mut cur, &mut out);
    }
    out
}

fn compositions(n: usize, left: i64, idx: usize, cur: &mut Vec<i64>, out: &mut Vec<RootVec>) {
    if idx == n - 1 {
        cur[idx] = left;
        out.push(cur.clone());
        return;
    }
    for k in (0..=left).rev() {
        cur[idx] = k;
        compositions(n, left - k, idx + 1, cur, out);
    }
}

/// Coefficients of `Π_{α>0}(1−e^{−α})^{−mult α}` on the box `0 ≤ γ ≤ bound`.
pub fn kostant_series(roots: &RootTable, bound: &[i64]) -> HashMap<RootVec, i64> {
    let n = bound.len();
    let mut pts: Vec<RootVec> = vec![vec![]];
    for &b in bound {
        pts = pts.into_iter().flat_map(|p| (0..=b).map(move |k| {
            let mut q = p.clone();
            q.push(k);
            q
        })).collect();
    }
    pts.sort_by_key(|p| height(p));
    let mut s: HashMap<RootVec, i64> = pts.iter().map(|p| (p.clone(), i64::from(p.iter().all(|&x| x == 0)))).collect();
    for (alpha, m) in &roots.entries {
        if alpha.iter().zip(bound).any(|(a, b)| a > b) {
            continue;
        }
        for _ in 0..*m {
            for p in &pts {
                let prev: RootVec = (0..n).map(|k| p[k] - alpha[k]).collect();
                if prev.iter().all(|&x| x >= 0) {
                    let v = s[&prev];
                    *s.get_mut(p).unwrap() += v;
                }
            }
        }
    }
    s
}

fn datum_from_invertible(name: &str, a: Vec<Vec<i64>>, d: Vec<i64>, parity: Vec<u8>) -> CartanSuperdatum {
    let n = a.len();
    let am = Mat::from_fn(n, n, |i, j| rat(a[i][j], 1));
    let at_inv = inverse(&am.transpose()).expect("invertible Cartan matrix");
    let dm = Mat::from_fn(n, n, |i, j| if i == j { rat(d[i], 1) } else { rat(0, 1) });
    let g = at_inv.mul(&dm);
    CartanSuperdatum {
        name: name.to_string(),
        rank: n,
        coweights: (0..n).map(|i| (0..n).map(|k| i64::from(i == k)).collect()).collect(),
        simple_roots: (0..n).map(|j| (0..n).map(|k| a[k][j]).collect()).collect(),
        form_gram: (0..n).map(|i| (0..n).map(|j| g.get(i, j).clone()).collect()).collect(),
        rho: vec![1; n],
        a,
        d,
        parity,
    }
}

/// Fundamental-weight basis for an invertible Cartan matrix.
pub fn datum_from_cartan(name: &str, a: Vec<Vec<i64>>, d: Vec<i64>, parity: Vec<u8>) -> Result<CartanSuperdatum> {
    let n = a.len();
    let am = Mat::from_fn(n, n, |i, j| rat(a.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0), 1));
    if n == 0 || d.len() != n || parity.len() != n || inverse(&am).is_none() {
        return Err(Error::InvalidDatum("shape".into()));
    }
    let out = datum_from_invertible(name, a, d, parity);
    out.validate()?;
    Ok(out)
}

pub const PRESETS: [&str; 6] = ["A1", "A1odd", "A2", "B2", "B2odd", "A1affine"];

pub fn preset(name: &str) -> Result<CartanSuperdatum> {
    let out = match name {
        "A1" => datum_from_invertible(name, vec![vec![2]], vec![1], vec![0]),
        "A1odd" => datum_from_invertible(name, vec![vec![2]], vec![1], vec![1]),
        "A2" => datum_from_invertible(name, vec![vec![2, -1], vec![-1, 2]], vec![1, 1], vec![0, 0]),
        "B2" => datum_from_invertible(name, vec![vec![2, -1], vec![-2, 2]], vec![2, 1], vec![0, 0]),
        "B2odd" => datum_from_invertible(name, vec![vec![2, -1], vec![-2, 2]], vec![2, 1], vec![0, 1]),
        "A1affine" => CartanSuperdatum {
            name: name.to_string(),
            rank: 2,
            a: vec![vec![2, -2], vec![-2, 2]],
            d: vec![1, 1],
            parity: vec![0, 0],
            coweights: vec![vec![1, 0, 0], vec![0, 1, 0]],
            simple_roots: vec![vec![2, -2, 1], vec![-2, 2, 0]],
            form_gram: vec![
                vec![rat(0, 1), rat(0, 1), rat(1, 1)],
                vec![rat(0, 1), rat(1, 2), rat(1, 1)],
                vec![rat(1, 1), rat(1, 1), rat(0, 1)],
            ],
            rho: vec![1, 1, 0],
        },
        _ => return Err(Error::UnknownPreset(name.to_string())),
    };
    out.validate()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        for p in PRESETS {
            preset(p).unwrap();
        }
    }

    #[test]
    fn parity_violation_is_named() {
        let mut d = preset("A2").unwrap();
        d.parity = vec![1, 0];
        assert_eq!(d.validate(), Err(Error::InvalidDatum("superdatum parity".into())));
    }

    #[test]
    fn wrong_rho_rejected() {
        let mut d = preset("A2").unwrap();
        d.rho = vec![1, 0];
        assert_eq!(d.validate(), Err(Error::InvalidDatum("rho".into())));
    }

    #[test]
    fn b2_symmetrizes() {
        let d = preset("B2").unwrap();
        assert_eq!(d.d[0] * d.a[0][1], -2);
        assert_eq!(d.d[1] * d.a[1][0], -2);
    }

    #[test]
    fn reflections() {
        let a1 = preset("A1").unwrap();
        let l = Weight(vec![1]);
        assert_eq!(a1.reflect(0, &l), l.sub(&a1.alpha(0)));
        let a2 = preset("A2").unwrap();
        let x = a2.reflect(0, &a2.reflect(1, &a2.reflect(0, &a2.alpha(0))));
        assert_eq!(x, a2.alpha(1).scale(-1));
        let fixed = Weight(vec![0, 1]);
        assert_eq!(a2.reflect(0, &fixed), fixed);
    }

    #[test]
    fn weyl_orders() {
        assert_eq!(preset("A1").unwrap().weyl_group(10).len(), 2);
        assert_eq!(preset("A2").unwrap().weyl_group(10).len(), 6);
        assert_eq!(preset("B2").unwrap().weyl_group(10).len(), 8);
        let signs: Vec<i8> = preset("A1").unwrap().weyl_group(5).iter().map(|w| w.sign).collect();
        assert_eq!(signs, vec![1, -1]);
        // Affine A1: two elements of each positive length.
        assert_eq!(preset("A1affine").unwrap().weyl_group(4).len(), 9);
    }

    #[test]
    fn finite_roots() {
        let a2 = preset("A2").unwrap().positive_roots(6).unwrap();
        assert_eq!(a2.entries, vec![(vec![1, 0], 1), (vec![0, 1], 1), (vec![1, 1], 1)]);
        assert_eq!(preset("A1").unwrap().positive_roots(5).unwrap().entries, vec![(vec![1], 1)]);
        assert_eq!(preset("B2").unwrap().positive_roots(6).unwrap().entries.len(), 4);
    }

    #[test]
    fn g2_matches_reflection_closure() {
        let g2 = datum_from_cartan("G2", vec![vec![2, -1], vec![-3, 2]], vec![3, 1], vec![0, 0]).unwrap();
        let t = g2.positive_roots(8).unwrap();
        let closure = g2.roots_by_reflection();
        assert_eq!(closure.len(), 6);
        assert_eq!(t.entries.iter().map(|(b, _)| b.clone()).collect::<Vec<_>>(), closure);
        assert!(t.entries.iter().all(|(_, m)| *m == 1));
    }

    #[test]
    fn affine_imaginary_roots() {
        let t = preset("A1affine").unwrap().positive_roots(6).unwrap();
        assert_eq!(t.mult(&[1, 1]), 1);
        assert_eq!(t.mult(&[2, 2]), 1);
        assert_eq!(t.mult(&[2, 1]), 1);
        assert_eq!(t.mult(&[2, 0]), 0);
    }

    #[test]
    fn parity_and_c6() {
        let d = preset("A1odd").unwrap();
        assert_eq!(d.parity_of(&[3]), 1);
        assert!(d.is_c6());
        assert!(!preset("B2").unwrap().is_c6());
        assert!(d.is_pev(&Weight(vec![2])));
        assert!(!d.is_pev(&Weight(vec![1])));
    }

    #[test]
    fn kostant_a2() {
        let d = preset("A2").unwrap();
        let t = d.positive_roots(4).unwrap();
        let s = kostant_series(&t, &[2, 1]);
        assert_eq!(s[&vec![2, 1]], 2);
        assert_eq!(s[&vec![1, 1]], 2);
        assert_eq!(s[&vec![0, 0]], 1);
    }

    #[test]
    fn weight_to_root_inverts() {
        let d = preset("A1affine").unwrap();
        let w = d.root_to_weight(&[3, 1]);
        assert_eq!(d.weight_to_root(&w), Some(vec![3, 1]));
        assert_eq!(d.weight_to_root(&Weight(vec![1, 0, 0])), None);
    }

    #[test]
    fn json_roundtrip() {
        let d = preset("A1affine").unwrap();
        let s = serde_json::to_string(&d).unwrap();
        let back: CartanSuperdatum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }
}
