//! Perfect and strong perfect bases of weight-graded spaces with raising operators.
//!
//! Scalars live in `Q(q)^π ≅ Q(q) × Q(q)`; every check runs on the `π = 1` and `π = -1`
//! components and the results are merged.

use crate::cartan::{height, RootVec};
use crate::coeffs::{gauss_pi_fact, Branch, Poly, RatFuncPi, RatQ, K};
use crate::error::{Error, Result};
use crate::highest::{build_hw, VermaContext};
use crate::linalg::{inverse, nullspace, solve, Mat};
use crate::ring::{Field, Ring};
use crate::uminus::Word;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

const SIGNS: [i8; 2] = [1, -1];

/// A homogeneous vector: coordinates in the block `β` (weight `Λ - β`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HVector {
    pub beta: RootVec,
    pub coords: Vec<RatFuncPi>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockDim {
    pub beta: RootVec,
    pub dim: usize,
}

/// `e_i` from block `β` to block `β - α_i`, as a `dim(β-α_i) × dim(β)` matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EMatrix {
    pub i: usize,
    pub beta: RootVec,
    pub rows: Vec<Vec<RatFuncPi>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasedModule {
    pub rank: usize,
    pub d: Vec<i64>,
    pub parity: Vec<u8>,
    pub blocks: Vec<BlockDim>,
    pub e: Vec<EMatrix>,
    pub basis: Vec<HVector>,
}

/// `c_i(b) = sign·π^pi·q^m·[ε_i(b)]^π_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub sign: i8,
    pub pi: u8,
    pub m: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Entry {
    pub b: usize,
    pub i: usize,
    /// `None` stands for `-∞`.
    pub epsilon: Option<u32>,
    pub etilde: Option<usize>,
    pub c: Option<RatFuncPi>,
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PerfectReport {
    pub perfect: bool,
    pub strong: Option<bool>,
    pub entries: Vec<Entry>,
    pub failures: Vec<String>,
}

/// One `π`-component of a based module.
struct Comp {
    dims: HashMap<RootVec, usize>,
    e: HashMap<(usize, RootVec), Mat<RatQ>>,
}

type CVec = (RootVec, Vec<RatQ>);

fn is_zero_vec(v: &[RatQ]) -> bool {
    v.iter().all(|x| x.is_zero())
}

impl Comp {
    fn dim(&self, beta: &[i64]) -> usize {
        self.dims.get(beta).copied().unwrap_or(0)
    }

    fn apply(&self, i: usize, v: &CVec) -> Result<CVec> {
        let (beta, x) = v;
        let mut down = beta.clone();
        down[i] -= 1;
        if down[i] < 0 || self.dim(&down) == 0 || is_zero_vec(x) {
            let d = if down[i] < 0 { 0 } else { self.dim(&down) };
            return Ok((down, vec![RatQ::zero(); d]));
        }
        let m = self
            .e
            .get(&(i, beta.clone()))
            .ok_or_else(|| Error::Domain(format!("missing e_{i} on block {beta:?}")))?;
        Ok((down, m.apply(x)))
    }

    fn power(&self, i: usize, n: u32, v: &CVec) -> Result<CVec> {
        (0..n).try_fold(v.clone(), |acc, _| self.apply(i, &acc))
    }

    fn eps(&self, i: usize, v: &CVec) -> Result<Option<u32>> {
        if is_zero_vec(&v.1) {
            return Ok(None);
        }
        let mut cur = v.clone();
        for n in 0..=v.0[i] as u32 {
            cur = self.apply(i, &cur)?;
            if is_zero_vec(&cur.1) {
                return Ok(Some(n));
            }
        }
        Err(Error::Domain(format!("e_{i} is not nilpotent on a vector of block {:?}", v.0)))
    }
}

fn ratq_of_k(x: &K) -> Result<RatQ> {
    let re = |p: &Poly<crate::coeffs::GaussRat>| -> Result<Poly<num_rational::BigRational>> {
        if p.coeffs().iter().any(|c| !c.is_real()) {
            return Err(Error::Domain("coefficients are not real; use π-only parameters".into()));
        }
        Ok(p.map(|c| c.re.clone()))
    };
    Ok(RatQ::new(re(x.num())?, re(x.den())?))
}

pub fn rdiv(a: &RatFuncPi, b: &RatFuncPi) -> Result<RatFuncPi> {
    if b.plus.is_zero() || b.minus.is_zero() {
        return Err(Error::Domain("division by a zero divisor of Q(q)^π".into()));
    }
    Ok(RatFuncPi { plus: a.plus.div(&b.plus), minus: a.minus.div(&b.minus) })
}

/// `(sign, pi, m)` when `x = sign·π^pi·q^m`.
pub fn unit_certificate(x: &RatFuncPi) -> Option<Certificate> {
    let z = crate::coeffs::ratfunc::ratq_to_laurent_z(&x.plus)?;
    if z.len() != 1 {
        return None;
    }
    let (m, c) = z.terms().next()?;
    let sign: i8 = if c.0 == 1.into() {
        1
    } else if c.0 == (-1).into() {
        -1
    } else {
        return None;
    };
    let pi = if x.minus == x.plus {
        0
    } else if x.minus == x.plus.neg() {
        1
    } else {
        return None;
    };
    Some(Certificate { sign, pi, m })
}

pub fn in_api(x: &RatFuncPi) -> bool {
    x.to_laurent().is_some()
}

impl BasedModule {
    fn comp(&self, sign: i8) -> Result<Comp> {
        let dims: HashMap<RootVec, usize> = self.blocks.iter().map(|b| (b.beta.clone(), b.dim)).collect();
        let mut e = HashMap::new();
        for m in &self.e {
            let rows = m.rows.len();
            let cols = dims.get(&m.beta).copied().unwrap_or(0);
            if m.rows.iter().any(|r| r.len() != cols) {
                return Err(Error::Domain(format!("e_{} on {:?} has the wrong width", m.i, m.beta)));
            }
            let mat = Mat::from_fn(rows, cols, |r, c| m.rows[r][c].component(sign).clone());
            e.insert((m.i, m.beta.clone()), mat);
        }
        Ok(Comp { dims, e })
    }

    fn comps(&self) -> Result<Vec<Comp>> {
        SIGNS.iter().map(|&s| self.comp(s)).collect()
    }

    fn split(v: &HVector, sign: i8) -> CVec {
        (v.beta.clone(), v.coords.iter().map(|x| x.component(sign).clone()).collect())
    }

    fn join(plus: &CVec, minus: &CVec) -> HVector {
        HVector {
            beta: plus.0.clone(),
            coords: plus.1.iter().zip(&minus.1).map(|(a, b)| RatFuncPi { plus: a.clone(), minus: b.clone() }).collect(),
        }
    }

    fn dim(&self, beta: &[i64]) -> usize {
        self.blocks.iter().find(|b| b.beta == beta).map_or(0, |b| b.dim)
    }

    /// Basis indices grouped by block, each group forming an invertible matrix on both components.
    fn check_basis(&self) -> Result<BTreeMap<RootVec, Vec<usize>>> {
        let mut groups: BTreeMap<RootVec, Vec<usize>> = BTreeMap::new();
        for (k, b) in self.basis.iter().enumerate() {
            if b.coords.len() != self.dim(&b.beta) {
                return Err(Error::Domain(format!("basis vector {k} has the wrong length")));
            }
            groups.entry(b.beta.clone()).or_default().push(k);
        }
        for blk in &self.blocks {
            let idx = groups.get(&blk.beta).cloned().unwrap_or_default();
            if idx.len() != blk.dim {
                return Err(Error::Domain(format!("block {:?} needs {} basis vectors, got {}", blk.beta, blk.dim, idx.len())));
            }
            for s in SIGNS {
                if blk.dim > 0 && inverse(&self.basis_matrix(&idx, s)).is_none() {
                    return Err(Error::Domain(format!("basis of block {:?} is singular", blk.beta)));
                }
            }
        }
        Ok(groups)
    }

    fn basis_matrix(&self, idx: &[usize], sign: i8) -> Mat<RatQ> {
        let cols: Vec<Vec<RatQ>> = idx.iter().map(|&k| Self::split(&self.basis[k], sign).1).collect();
        Mat::from_columns(self.dim(&self.basis[idx[0]].beta), &cols)
    }

    /// `ε_i(v)`; `None` is `-∞`.
    pub fn epsilon(&self, v: &HVector, i: usize) -> Result<Option<u32>> {
        let mut out = None;
        for (s, c) in SIGNS.iter().zip(self.comps()?) {
            out = out.max(c.eps(i, &Self::split(v, *s))?);
        }
        Ok(out)
    }

    fn apply_power(&self, comps: &[Comp], i: usize, n: u32, v: &HVector) -> Result<HVector> {
        let p = comps[0].power(i, n, &Self::split(v, 1))?;
        let m = comps[1].power(i, n, &Self::split(v, -1))?;
        Ok(Self::join(&p, &m))
    }

    /// `e_i^{{n}} v = e_i^n v / [n]^π_i!`.
    pub fn divided_power(&self, i: usize, n: u32, v: &HVector) -> Result<HVector> {
        let comps = self.comps()?;
        self.divided_power_with(&comps, i, n, v)
    }

    fn divided_power_with(&self, comps: &[Comp], i: usize, n: u32, v: &HVector) -> Result<HVector> {
        let w = self.apply_power(comps, i, n, v)?;
        let f = RatFuncPi::from_laurent(&gauss_pi_fact(n, self.d[i], self.parity[i]));
        let coords = w.coords.iter().map(|x| rdiv(x, &f)).collect::<Result<_>>()?;
        Ok(HVector { beta: w.beta, coords })
    }

    fn coords_in_basis(&self, groups: &BTreeMap<RootVec, Vec<usize>>, v: &HVector) -> Result<Vec<(usize, RatFuncPi)>> {
        let Some(idx) = groups.get(&v.beta).filter(|g| !g.is_empty()) else {
            return Ok(Vec::new());
        };
        let mut parts = Vec::new();
        for s in SIGNS {
            let rhs = Mat::from_columns(v.coords.len(), &[Self::split(v, s).1]);
            let x = solve(&self.basis_matrix(idx, s), &rhs).expect("basis checked");
            parts.push(x.column(0));
        }
        Ok(idx
            .iter()
            .enumerate()
            .map(|(k, &b)| (b, RatFuncPi { plus: parts[0][k].clone(), minus: parts[1][k].clone() }))
            .filter(|(_, c)| !c.is_zero())
            .collect())
    }

    /// Per-component `(ε, ẽ, c)` for `e_i b`, or a description of the axiom failure.
    fn edge(&self, comp: &Comp, sign: i8, groups: &BTreeMap<RootVec, Vec<usize>>, b: usize, i: usize) -> Result<std::result::Result<(Option<u32>, Option<(usize, RatQ)>), String>> {
        let v = Self::split(&self.basis[b], sign);
        let eps = comp.eps(i, &v)?;
        let w = comp.apply(i, &v)?;
        if is_zero_vec(&w.1) {
            return Ok(Ok((eps, None)));
        }
        let k = eps.expect("nonzero") - 1;
        let target = comp.power(i, k, &w)?;
        let mut found = Vec::new();
        for &c in groups.get(&w.0).map(Vec::as_slice).unwrap_or(&[]) {
            let cand = comp.power(i, k, &Self::split(&self.basis[c], sign))?;
            if is_zero_vec(&cand.1) {
                continue;
            }
            let pivot = cand.1.iter().position(|x| !x.is_zero()).expect("nonzero");
            let ratio = target.1[pivot].div(&cand.1[pivot]);
            if !ratio.is_zero() && cand.1.iter().zip(&target.1).all(|(a, t)| a.mul(&ratio) == *t) {
                found.push((c, ratio));
            }
        }
        Ok(match found.len() {
            1 => Ok((eps, found.pop())),
            0 => Err(format!("no ẽ_{i} candidate for basis vector {b}")),
            _ => Err(format!("several ẽ_{i} candidates for basis vector {b}")),
        })
    }

    pub fn check_perfect(&self) -> Result<PerfectReport> {
        let groups = self.check_basis()?;
        let comps = self.comps()?;
        let mut entries = Vec::new();
        let mut failures = Vec::new();
        for b in 0..self.basis.len() {
            for i in 0..self.rank {
                let plus = self.edge(&comps[0], 1, &groups, b, i)?;
                let minus = self.edge(&comps[1], -1, &groups, b, i)?;
                match (plus, minus) {
                    (Ok((ep, tp)), Ok((em, tm))) => {
                        let epsilon = ep.max(em);
                        match (tp, tm) {
                            (None, None) => entries.push(Entry { b, i, epsilon, etilde: None, c: None, certificate: None }),
                            (Some((x, cp)), Some((y, cm))) if x == y && ep == em => entries.push(Entry {
                                b,
                                i,
                                epsilon,
                                etilde: Some(x),
                                c: Some(RatFuncPi { plus: cp, minus: cm }),
                                certificate: None,
                            }),
                            _ => failures.push(format!("π-components disagree on e_{i} of basis vector {b}")),
                        }
                    }
                    (Err(m), _) | (_, Err(m)) => failures.push(m),
                }
            }
        }
        let mut seen: HashMap<(usize, u32, usize), usize> = HashMap::new();
        for e in &entries {
            if let (Some(t), Some(eps)) = (e.etilde, e.epsilon) {
                if let Some(&other) = seen.get(&(e.i, eps, t)) {
                    failures.push(format!("basis vectors {other} and {} share ε_{} = {eps} and ẽ_{}", e.b, e.i, e.i));
                } else {
                    seen.insert((e.i, eps, t), e.b);
                }
            }
        }
        Ok(PerfectReport { perfect: failures.is_empty(), strong: None, entries, failures })
    }

    pub fn check_strong(&self) -> Result<PerfectReport> {
        let mut rep = self.check_perfect()?;
        if !rep.perfect {
            return Err(Error::Domain("basis is not perfect".into()));
        }
        let mut strong = true;
        for e in &mut rep.entries {
            let (Some(c), Some(n)) = (&e.c, e.epsilon) else { continue };
            let g = RatFuncPi::from_laurent(&crate::coeffs::gauss_pi(n, self.d[e.i], self.parity[e.i]));
            e.certificate = unit_certificate(&rdiv(c, &g)?);
            if e.certificate.is_none() {
                strong = false;
                rep.failures.push(format!("c_{}(b{}) is not a unit times [{n}]", e.i, e.b));
            }
        }
        rep.strong = Some(strong);
        Ok(rep)
    }

    /// Compares `v` and `w` under `⪯_𝐢`.
    pub fn preorder(&self, seq: &[usize], v: &HVector, w: &HVector) -> Result<Ordering> {
        let comps = self.comps()?;
        self.preorder_with(&comps, seq, v, w)
    }

    fn preorder_with(&self, comps: &[Comp], seq: &[usize], v: &HVector, w: &HVector) -> Result<Ordering> {
        let Some((&i, rest)) = seq.split_first() else {
            return Err(Error::Domain("empty index sequence".into()));
        };
        let eps = |x: &HVector| -> Result<Option<u32>> {
            let a = comps[0].eps(i, &Self::split(x, 1))?;
            let b = comps[1].eps(i, &Self::split(x, -1))?;
            Ok(a.max(b))
        };
        let (Some(ev), Some(ew)) = (eps(v)?, eps(w)?) else {
            return Err(Error::Domain("the preorder is defined on nonzero vectors".into()));
        };
        if rest.is_empty() || ev != ew {
            return Ok(ev.cmp(&ew));
        }
        let v2 = self.apply_power(comps, i, ev, v)?;
        let w2 = self.apply_power(comps, i, ew, w)?;
        self.preorder_with(comps, rest, &v2, &w2)
    }

    /// `e^top_𝐢 v`, applying `e_{i₁}^{{ε}}` first.
    pub fn e_top(&self, seq: &[usize], v: &HVector) -> Result<HVector> {
        let comps = self.comps()?;
        self.e_string(&comps, &self.top_string(&comps, seq, v)?, v)
    }

    /// The exponents `ℓ_k = ε_{i_k}(v_{k-1})` along `seq`.
    fn top_string(&self, comps: &[Comp], seq: &[usize], v: &HVector) -> Result<Vec<(usize, u32)>> {
        let mut cur = v.clone();
        let mut out = Vec::new();
        for &i in seq {
            let a = comps[0].eps(i, &Self::split(&cur, 1))?;
            let b = comps[1].eps(i, &Self::split(&cur, -1))?;
            let Some(l) = a.max(b) else { break };
            cur = self.divided_power_with(comps, i, l, &cur)?;
            out.push((i, l));
        }
        Ok(out)
    }

    fn e_string(&self, comps: &[Comp], string: &[(usize, u32)], v: &HVector) -> Result<HVector> {
        string.iter().try_fold(v.clone(), |acc, &(i, l)| self.divided_power_with(comps, i, l, &acc))
    }

    /// Dimension of `V^H = ∩ Ker e_i` on each component.
    pub fn highest_space_dim(&self) -> Result<[usize; 2]> {
        let mut out = [0; 2];
        for (k, c) in self.comps()?.iter().enumerate() {
            for blk in &self.blocks {
                if blk.dim == 0 {
                    continue;
                }
                let mut rows: Vec<Vec<RatQ>> = Vec::new();
                for i in 0..self.rank {
                    let mut down = blk.beta.clone();
                    down[i] -= 1;
                    if down[i] < 0 || c.dim(&down) == 0 {
                        continue;
                    }
                    let m = c.e.get(&(i, blk.beta.clone())).ok_or_else(|| Error::Domain("missing e block".into()))?;
                    rows.extend((0..m.rows()).map(|r| (0..m.cols()).map(|j| m.get(r, j).clone()).collect::<Vec<_>>()));
                }
                out[k] += if rows.is_empty() { blk.dim } else { nullspace(&Mat::from_rows(rows, blk.dim)).len() };
            }
        }
        Ok(out)
    }

    /// Basis vectors killed by every `e_i`.
    pub fn highest_basis(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (k, b) in self.basis.iter().enumerate() {
            let mut top = true;
            for i in 0..self.rank {
                if self.epsilon(b, i)?.is_some_and(|e| e > 0) {
                    top = false;
                }
            }
            if top {
                out.push(k);
            }
        }
        Ok(out)
    }

    /// `(0, 1, …, n-1)` repeated once per unit of the largest height.
    pub fn full_sequence(&self) -> Vec<usize> {
        let h = self.blocks.iter().filter(|b| b.dim > 0).map(|b| height(&b.beta)).max().unwrap_or(0);
        (0..h.max(1) as usize).flat_map(|_| 0..self.rank).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecognitionReport {
    pub ok: bool,
    pub witness: Option<String>,
    pub sequence: Vec<usize>,
}

impl RecognitionReport {
    fn fail(seq: &[usize], msg: String) -> Self {
        RecognitionReport { ok: false, witness: Some(msg), sequence: seq.to_vec() }
    }
}

/// Checks that every lattice generator has `A^π` coefficients over the strong perfect basis,
/// obtaining each coefficient by peeling maximal terms along `e^top` strings.
pub fn recognition_check(bm: &BasedModule, generators: &[HVector]) -> Result<RecognitionReport> {
    let seq = bm.full_sequence();
    let groups = bm.check_basis()?;
    let comps = bm.comps()?;
    let rep = bm.check_perfect()?;
    if !rep.perfect {
        return Ok(RecognitionReport::fail(&seq, format!("basis is not perfect: {}", rep.failures[0])));
    }
    let rep = bm.check_strong()?;
    if rep.strong != Some(true) {
        return Ok(RecognitionReport::fail(&seq, format!("basis is not strong: {}", rep.failures[0])));
    }
    let top = bm.highest_basis()?;
    let zero = vec![0; bm.rank];
    if top.len() != 1 || bm.basis[top[0]].beta != zero {
        return Ok(RecognitionReport::fail(&seq, format!("B^H has {} elements", top.len())));
    }
    let vl = &bm.basis[top[0]];
    let scalar_at_top = |v: &HVector| -> Result<RatFuncPi> {
        if v.beta != zero {
            return Err(Error::Inconsistent("e^top string did not reach the highest weight".into()));
        }
        rdiv(&v.coords[0], &vl.coords[0])
    };
    let mut strings = Vec::new();
    for (k, b) in bm.basis.iter().enumerate() {
        let s = bm.top_string(&comps, &seq, b)?;
        let a = scalar_at_top(&bm.e_string(&comps, &s, b)?)?;
        if unit_certificate(&a).is_none() {
            return Ok(RecognitionReport::fail(&seq, format!("e^top of basis vector {k} is not a unit multiple of v_Λ")));
        }
        strings.push(s);
    }
    for idx in groups.values() {
        for (x, &a) in idx.iter().enumerate() {
            for &b in &idx[x + 1..] {
                if bm.preorder_with(&comps, &seq, &bm.basis[a], &bm.basis[b])? == Ordering::Equal {
                    return Ok(RecognitionReport::fail(&seq, format!("basis vectors {a} and {b} are ≡ under the preorder")));
                }
            }
        }
    }
    for (g, u) in generators.iter().enumerate() {
        let direct = bm.coords_in_basis(&groups, u)?;
        let mut support: Vec<usize> = direct.iter().map(|(b, _)| *b).collect();
        let mut err = None;
        support.sort_by(|&a, &b| {
            bm.preorder_with(&comps, &seq, &bm.basis[b], &bm.basis[a]).unwrap_or_else(|e| {
                err = Some(e);
                Ordering::Equal
            })
        });
        if let Some(e) = err {
            return Err(e);
        }
        let mut known: Vec<(usize, RatFuncPi)> = Vec::new();
        for &b in &support {
            let s = &strings[b];
            let mut resid = scalar_at_top(&bm.e_string(&comps, s, u)?)?;
            for (b2, c2) in &known {
                resid = resid.sub(&c2.mul(&scalar_at_top(&bm.e_string(&comps, s, &bm.basis[*b2])?)?));
            }
            let a = scalar_at_top(&bm.e_string(&comps, s, &bm.basis[b])?)?;
            let c = rdiv(&resid, &a)?;
            let want = &direct.iter().find(|(x, _)| *x == b).expect("in support").1;
            if c != *want {
                return Err(Error::Inconsistent(format!("peeled coefficient of basis vector {b} disagrees with the expansion")));
            }
            if !in_api(&c) {
                return Ok(RecognitionReport::fail(&seq, format!("generator {g} has coefficient outside A^π on basis vector {b}")));
            }
            known.push((b, c));
        }
    }
    Ok(RecognitionReport { ok: true, witness: None, sequence: seq })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    /// Pivot words `f_{i₁}···f_{iₙ} v_Λ`.
    Words,
    /// Pivot words with runs of equal letters replaced by divided powers.
    DividedWords,
    /// Dual of `DividedWords` under the contravariant form.
    DualDivided,
}

fn divided_scale(ctx: &VermaContext, w: &Word) -> crate::coeffs::LaurentPi {
    let mut acc = crate::coeffs::LaurentPi::one();
    let mut k = 0;
    while k < w.0.len() {
        let i = w.0[k];
        let run = w.0[k..].iter().take_while(|&&j| j == i).count();
        acc = acc.mul(&gauss_pi_fact(run as u32, ctx.datum.d[i], ctx.datum.parity[i]));
        k += run;
    }
    acc
}

/// Based module for `V(Λ)` truncated at height `cutoff`, over a `π`-only parameter family.
pub fn from_verma(ctx: &VermaContext, cutoff: usize, kind: BasisKind) -> Result<BasedModule> {
    if ctx.branches != Branch::PI {
        return Err(Error::Domain("based modules need π-only parameters".into()));
    }
    let hw = build_hw(ctx, cutoff)?;
    let [b0, b1] = [&hw.branches[0], &hw.branches[1]];
    let sign_of = |b: Branch| b.pi_sign();
    let (plus, minus) = if sign_of(b0.branch) == 1 { (b0, b1) } else { (b1, b0) };
    let table = (kind == BasisKind::DualDivided).then(|| ctx.form_table_height(cutoff));
    let mut blocks = Vec::new();
    let mut e = Vec::new();
    let mut basis = Vec::new();
    for (beta, blk) in &plus.blocks {
        if minus.blocks[beta].basis != blk.basis {
            return Err(Error::Inconsistent(format!("π-components chose different bases at {beta:?}")));
        }
        let dim = blk.dim();
        blocks.push(BlockDim { beta: beta.clone(), dim });
        if dim == 0 {
            continue;
        }
        for i in 0..ctx.datum.rank {
            if beta[i] == 0 {
                continue;
            }
            let (Some(mp), Some(mm)) = (plus.e_op(i, beta), minus.e_op(i, beta)) else { continue };
            let rows = (0..mp.rows())
                .map(|r| (0..mp.cols()).map(|c| Ok(RatFuncPi { plus: ratq_of_k(mp.get(r, c))?, minus: ratq_of_k(mm.get(r, c))? })).collect())
                .collect::<Result<_>>()?;
            e.push(EMatrix { i, beta: beta.clone(), rows });
        }
        let scales: Vec<RatFuncPi> = blk
            .basis
            .iter()
            .map(|w| rdiv(&RatFuncPi::one(), &RatFuncPi::from_laurent(&divided_scale(ctx, w))))
            .collect::<Result<_>>()?;
        match (&kind, &table) {
            (BasisKind::DualDivided, Some(t)) => {
                let mut parts = Vec::new();
                for s in SIGNS {
                    let g = Mat::from_fn(dim, dim, |a, b| {
                        let v = RatFuncPi::from_laurent(&t.pair(&blk.basis[a], &blk.basis[b]).to_pi().expect("π-only form"));
                        v.mul(&scales[a]).mul(&scales[b]).component(s).clone()
                    });
                    parts.push(inverse(&g).ok_or_else(|| Error::Inconsistent(format!("degenerate form at {beta:?}")))?.transpose());
                }
                for j in 0..dim {
                    let coords = (0..dim)
                        .map(|k| {
                            let x = RatFuncPi { plus: parts[0].get(k, j).clone(), minus: parts[1].get(k, j).clone() };
                            x.mul(&scales[k])
                        })
                        .collect();
                    basis.push(HVector { beta: beta.clone(), coords });
                }
            }
            _ => {
                for j in 0..dim {
                    let coords = (0..dim)
                        .map(|k| match (k == j, kind) {
                            (false, _) => RatFuncPi::zero(),
                            (true, BasisKind::Words) => RatFuncPi::one(),
                            (true, _) => scales[k].clone(),
                        })
                        .collect();
                    basis.push(HVector { beta: beta.clone(), coords });
                }
            }
        }
    }
    Ok(BasedModule { rank: ctx.datum.rank, d: ctx.datum.d.clone(), parity: ctx.datum.parity.clone(), blocks, e, basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{preset, Weight};
    use crate::params;

    fn module(name: &str, l: &[i64], cutoff: usize, kind: BasisKind) -> BasedModule {
        let d = preset(name).unwrap();
        let f = params::preset("Uqsg", &d).unwrap();
        let c = VermaContext::new(&d, &f, &Weight(l.to_vec())).unwrap();
        from_verma(&c, cutoff, kind).unwrap()
    }

    fn scaled(v: &HVector, c: &RatFuncPi) -> HVector {
        HVector { beta: v.beta.clone(), coords: v.coords.iter().map(|x| x.mul(c)).collect() }
    }

    fn rf(x: crate::coeffs::LaurentPi) -> RatFuncPi {
        RatFuncPi::from_laurent(&x)
    }

    #[test]
    fn epsilon_values() {
        let m = module("A1odd", &[2], 3, BasisKind::DividedWords);
        let eps: Vec<_> = m.basis.iter().map(|b| m.epsilon(b, 0).unwrap()).collect();
        assert_eq!(eps, vec![Some(0), Some(1), Some(2)]);
        let zero = HVector { beta: vec![1], coords: vec![RatFuncPi::zero()] };
        assert_eq!(m.epsilon(&zero, 0).unwrap(), None);
    }

    #[test]
    fn rank_one_bases() {
        for kind in [BasisKind::Words, BasisKind::DividedWords, BasisKind::DualDivided] {
            let m = module("A1odd", &[2], 3, kind);
            let r = m.check_perfect().unwrap();
            assert!(r.perfect, "{kind:?}");
            let t: Vec<_> = r.entries.iter().map(|e| e.etilde).collect();
            assert_eq!(t, vec![None, Some(0), Some(1)]);
        }
        let r = module("A1odd", &[2], 3, BasisKind::DualDivided).check_strong().unwrap();
        assert_eq!(r.strong, Some(true));
        let r = module("A1", &[3], 4, BasisKind::DividedWords).check_strong().unwrap();
        assert_eq!(r.strong, Some(false));
    }

    #[test]
    fn empty_module_is_perfect() {
        let m = BasedModule { rank: 1, d: vec![1], parity: vec![0], blocks: vec![], e: vec![], basis: vec![] };
        assert!(m.check_perfect().unwrap().perfect);
    }

    #[test]
    fn strong_fails_after_rescaling() {
        let mut m = module("A1odd", &[2], 3, BasisKind::DualDivided);
        m.basis[1] = scaled(&m.basis[1], &rf(crate::coeffs::LaurentPi::one().add(&crate::coeffs::LaurentPi::q_pow(1))));
        let r = m.check_strong().unwrap();
        assert_eq!(r.strong, Some(false));
    }

    #[test]
    fn a2_adjoint_dual_basis() {
        let m = module("A2", &[1, 1], 4, BasisKind::DualDivided);
        let r = m.check_strong().unwrap();
        assert!(r.perfect && r.strong == Some(true), "{:?}", r.failures);
        let mut bad = m.clone();
        let idx: Vec<usize> = (0..bad.basis.len()).filter(|&k| bad.basis[k].beta == vec![1, 1]).collect();
        let sum: Vec<RatFuncPi> = bad.basis[idx[0]].coords.iter().zip(&bad.basis[idx[1]].coords).map(|(a, b)| a.add(b)).collect();
        bad.basis[idx[1]].coords = sum;
        assert!(!bad.check_perfect().unwrap().perfect);
    }

    #[test]
    fn preorder_and_top() {
        let m = module("A1odd", &[2], 3, BasisKind::DualDivided);
        assert_eq!(m.preorder(&[0], &m.basis[2], &m.basis[1]).unwrap(), Ordering::Greater);
        for b in &m.basis {
            let t = m.e_top(&m.full_sequence(), b).unwrap();
            assert_eq!(t.beta, vec![0]);
            assert!(unit_certificate(&rdiv(&t.coords[0], &m.basis[0].coords[0]).unwrap()).is_some());
        }
    }

    #[test]
    fn highest_space() {
        let m = module("A2", &[1, 1], 4, BasisKind::DualDivided);
        assert_eq!(m.highest_space_dim().unwrap(), [1, 1]);
        assert_eq!(m.highest_basis().unwrap(), vec![0]);
    }

    #[test]
    fn recognition_rank_one() {
        let m = module("A1", &[3], 4, BasisKind::DualDivided);
        let lattice = module("A1", &[3], 4, BasisKind::DividedWords).basis;
        assert!(recognition_check(&m, &lattice).unwrap().ok);
        let mut bad = lattice.clone();
        let p = crate::coeffs::LaurentPi::one().add(&crate::coeffs::LaurentPi::pi_q(1, 2));
        bad[1] = scaled(&bad[1], &rdiv(&RatFuncPi::one(), &rf(p)).unwrap());
        let r = recognition_check(&m, &bad).unwrap();
        assert!(!r.ok && r.witness.is_some());
        let one_plus_q = rf(crate::coeffs::LaurentPi::one().add(&crate::coeffs::LaurentPi::q_pow(1)));
        let mut weak = m.clone();
        weak.basis[2] = scaled(&weak.basis[2], &one_plus_q);
        assert!(!recognition_check(&weak, &lattice).unwrap().ok);
        let mut top = lattice.clone();
        top[0] = scaled(&top[0], &rdiv(&RatFuncPi::one(), &one_plus_q).unwrap());
        assert!(!recognition_check(&m, &top).unwrap().ok);
        let trivial = module("A1", &[0], 2, BasisKind::DualDivided);
        assert!(recognition_check(&trivial, &trivial.basis).unwrap().ok);
    }
}
