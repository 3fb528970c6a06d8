//! Verma modules, their irreducible quotients as explicit weight-block matrices, and the
//! identities those matrices must satisfy.

pub mod casimir;
pub mod character;
pub mod gauge;

use crate::cartan::{height, qplus_up_to_height, CartanSuperdatum, RootVec, Weight};
use crate::coeffs::{gauss_pi_fact, laurent_to_k, Branch, K};
use crate::error::{Error, Result};
use crate::linalg::{laurent_rank, rank_profile, solve, Mat};
use crate::params::{chi_build, derive_tilde, upow, ChiFunction, Lsp, ParamFamily, ThetaP, TildeThetaP};
use crate::ring::{Field, Ring};
use crate::uminus::{dual_table, levels_below, words_of_weight, FormTable, UMinusElt, Word};
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};

/// `(1 - p̃^m)/(1 - p̃)`, a Laurent polynomial for every integer `m`.
pub fn tilde_bracket(pt: &Lsp, m: i64) -> Result<Lsp> {
    let geo = |k: i64| (0..k).fold(Ok(Lsp::zero()), |acc: Result<Lsp>, j| Ok(acc?.add(&upow(pt, j)?)));
    if m >= 0 {
        geo(m)
    } else {
        Ok(upow(pt, m)?.mul(&geo(-m)?).neg())
    }
}

/// Outcome of a module identity check; `failure` names the first failing block.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub ok: bool,
    pub failure: Option<String>,
}

impl Outcome {
    pub fn pass() -> Self {
        Outcome { ok: true, failure: None }
    }

    pub fn fail(msg: impl Into<String>) -> Self {
        Outcome { ok: false, failure: Some(msg.into()) }
    }
}

pub fn weight_at(datum: &CartanSuperdatum, lambda: &Weight, beta: &[i64]) -> Weight {
    lambda.sub(&datum.root_to_weight(beta))
}

fn shift(beta: &[i64], i: usize, by: i64) -> Option<RootVec> {
    let mut out = beta.to_vec();
    out[i] += by;
    (out[i] >= 0).then_some(out)
}

fn pi_only(tt: &TildeThetaP) -> bool {
    tt.ttheta.iter().flatten().chain(&tt.tp).all(|x| x.to_pi().is_some())
}

/// The Verma module `M(Λ)` in its word basis `f_{i₁}···f_{iₙ} u_Λ`.
#[derive(Clone, Debug)]
pub struct VermaContext {
    pub datum: CartanSuperdatum,
    pub tt: TildeThetaP,
    pub lambda: Weight,
    pub branches: Vec<Branch>,
}

impl VermaContext {
    pub fn new(datum: &CartanSuperdatum, fam: &ParamFamily, lambda: &Weight) -> Result<Self> {
        fam.validate(datum)?;
        if lambda.0.len() != datum.dim_p() {
            return Err(Error::Domain(format!("weight needs {} coordinates", datum.dim_p())));
        }
        let tt = fam.tilde()?;
        let branches = if pi_only(&tt) { Branch::PI.to_vec() } else { Branch::SQRT_PI.to_vec() };
        Ok(VermaContext { datum: datum.clone(), tt, lambda: lambda.clone(), branches })
    }

    pub fn with_branches(mut self, branches: &[Branch]) -> Self {
        self.branches = branches.to_vec();
        self
    }

    fn rank(&self) -> usize {
        self.datum.rank
    }

    pub fn pairing_at(&self, i: usize, beta: &[i64]) -> i64 {
        self.datum.pairing(i, &weight_at(&self.datum, &self.lambda, beta))
    }

    /// `e_i f_j X = θ̃_ji f_j e_i X + δ_ij (1-K̃_i)/(1-p̃_i) X` on `u_Λ`-words.
    pub fn e_word(&self, i: usize, w: &Word) -> Result<UMinusElt> {
        let n = self.rank();
        let mut out = UMinusElt::zero();
        let mut acc = Lsp::one();
        let mut suffix = w.content(n);
        for (k, &j) in w.0.iter().enumerate() {
            suffix[j] -= 1;
            if j == i {
                let br = tilde_bracket(&self.tt.tp[i], self.pairing_at(i, &suffix))?;
                let mut v = w.0.clone();
                v.remove(k);
                out.add_term(Word(v), acc.mul(&br));
            }
            acc = acc.mul(&self.tt.ttheta[j][i]);
        }
        Ok(out)
    }

    fn table(&self, levels: &[Vec<RootVec>]) -> FormTable {
        dual_table(self.rank(), levels, |i, w| self.e_word(i, w).expect("unit parameters"))
    }

    pub fn form_table(&self, beta: &[i64]) -> FormTable {
        self.table(&levels_below(beta))
    }

    pub fn form_table_height(&self, cutoff: usize) -> FormTable {
        let mut levels = vec![Vec::new(); cutoff];
        for b in qplus_up_to_height(self.rank(), cutoff) {
            let h = height(&b) as usize;
            if h > 0 {
                levels[h - 1].push(b);
            }
        }
        self.table(&levels)
    }

    /// Contravariant pairing `(f_{w₁}u_Λ, f_{w₂}u_Λ)`.
    pub fn verma_form(&self, w1: &Word, w2: &Word) -> Lsp {
        let n = self.rank();
        if w1.content(n) != w2.content(n) {
            return Lsp::zero();
        }
        self.form_table(&w1.content(n)).pair(w1, w2)
    }

    pub fn gram(&self, beta: &[i64]) -> (Vec<Word>, Mat<Lsp>) {
        let words = words_of_weight(beta);
        let t = self.form_table(beta);
        let m = Mat::from_fn(words.len(), words.len(), |a, b| t.pair(&words[a], &words[b]));
        (words, m)
    }

    fn rank_all(&self, m: &Mat<Lsp>) -> Result<usize> {
        let mut out = None;
        for (k, b) in self.branches.iter().enumerate() {
            let r = laurent_rank(m, *b, 0xbeef + k as u64)?;
            if out.is_some_and(|p| p != r) {
                return Err(Error::Inconsistent(format!("branch {} gives rank {r}, expected {}", b.0, out.unwrap())));
            }
            out = Some(r);
        }
        Ok(out.unwrap_or(0))
    }

    /// `dim V(Λ)_{Λ-β}` as the Verma Gram rank.
    pub fn irr_weight_dim(&self, beta: &[i64]) -> Result<usize> {
        self.rank_all(&self.gram(beta).1)
    }
}

/// One weight block of `V(Λ)` on one branch.
#[derive(Clone, Debug)]
pub struct Block {
    pub basis: Vec<Word>,
}

impl Block {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Debug)]
pub struct BranchModule {
    pub branch: Branch,
    pub blocks: BTreeMap<RootVec, Block>,
    /// `E_i` from block `β` to `β - α_i`.
    pub e: HashMap<(usize, RootVec), Mat<K>>,
    /// `F_i` from block `β` to `β + α_i`.
    pub f: HashMap<(usize, RootVec), Mat<K>>,
}

impl BranchModule {
    pub fn dim(&self, beta: &[i64]) -> usize {
        self.blocks.get(beta).map_or(0, Block::dim)
    }

    /// `E_i` on block `β`; the zero map when `β - α_i ∉ Q⁺`.
    pub fn e_op(&self, i: usize, beta: &[i64]) -> Option<Mat<K>> {
        match shift(beta, i, -1) {
            None => Some(Mat::zeros(0, self.dim(beta))),
            Some(_) => self.e.get(&(i, beta.to_vec())).cloned(),
        }
    }

    /// `F_i` on block `β`; `None` past the cutoff.
    pub fn f_op(&self, i: usize, beta: &[i64]) -> Option<Mat<K>> {
        self.f.get(&(i, beta.to_vec())).cloned()
    }
}

#[derive(Clone, Debug)]
pub enum Presentation {
    /// `e_if_j - θ̃_ji f_je_i = δ_ij (1-K̃_i)/(1-p̃_i)`.
    Tilde(TildeThetaP),
    /// `e_if_j - θ_ji f_je_i = δ_ij (K_i-K_i^{-1})/(p_i-p_i^{-1})`, `K_i` acting by `χ_i`.
    Theta { tp: ThetaP, chi: ChiFunction },
}

/// `V(Λ)` truncated at height `cutoff`, one copy per branch.
#[derive(Clone, Debug)]
pub struct HWModule {
    pub datum: CartanSuperdatum,
    pub lambda: Weight,
    pub cutoff: usize,
    pub presentation: Presentation,
    pub branches: Vec<BranchModule>,
}

struct Projector {
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    basis: Vec<Word>,
    /// `G[R,P]^{-1} G[R,:]`: word coordinates to pivot coordinates.
    proj: Mat<K>,
}

fn projector(words: &[Word], g: &Mat<K>, prefer: Option<&(Vec<usize>, Vec<usize>)>, rank: usize) -> Result<(Projector, (Vec<usize>, Vec<usize>))> {
    let all: Vec<usize> = (0..words.len()).collect();
    let try_pivots = |rc: &(Vec<usize>, Vec<usize>)| -> Option<Mat<K>> {
        if rc.0.len() != rank || rc.1.len() != rank {
            return None;
        }
        solve(&g.submatrix(&rc.0, &rc.1), &g.submatrix(&rc.0, &all))
    };
    let (rc, proj) = match prefer.and_then(|rc| try_pivots(rc).map(|p| (rc.clone(), p))) {
        Some(x) => x,
        None => {
            let rc = rank_profile(g);
            let p = try_pivots(&rc).ok_or_else(|| Error::Inconsistent("singular pivot Gram block".into()))?;
            (rc, p)
        }
    };
    let p = Projector {
        words: words.to_vec(),
        index: words.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect(),
        basis: rc.1.iter().map(|&k| words[k].clone()).collect(),
        proj,
    };
    Ok((p, rc))
}

impl Projector {
    fn coords(&self, x: &UMinusElt, b: Branch) -> Vec<K> {
        let mut v = vec![K::zero(); self.words.len()];
        for (w, c) in x.terms() {
            v[self.index[w]] = laurent_to_k(c, b);
        }
        self.proj.apply(&v)
    }
}

/// Builds `V(Λ)` as `M(Λ)` modulo the radical of the contravariant form.
pub fn build_hw(ctx: &VermaContext, cutoff: usize) -> Result<HWModule> {
    let n = ctx.datum.rank;
    let table = ctx.form_table_height(cutoff);
    let contents = qplus_up_to_height(n, cutoff);
    let grams: Vec<(RootVec, Vec<Word>, Mat<Lsp>)> = contents
        .par_iter()
        .map(|b| {
            let words = words_of_weight(b);
            let g = Mat::from_fn(words.len(), words.len(), |x, y| table.pair(&words[x], &words[y]));
            (b.clone(), words, g)
        })
        .collect();
    let ranks: Vec<usize> = grams.par_iter().map(|(_, _, g)| ctx.rank_all(g)).collect::<Result<_>>()?;
    let mut chosen: HashMap<RootVec, (Vec<usize>, Vec<usize>)> = HashMap::new();
    let mut branches = Vec::new();
    for &b in &ctx.branches {
        let mut projs: HashMap<RootVec, Projector> = HashMap::new();
        for ((beta, words, g), &r) in grams.iter().zip(&ranks) {
            let gk = g.map(|x| laurent_to_k(x, b));
            let (p, rc) = projector(words, &gk, chosen.get(beta), r)?;
            chosen.entry(beta.clone()).or_insert(rc);
            projs.insert(beta.clone(), p);
        }
        let mut e = HashMap::new();
        let mut f = HashMap::new();
        for (beta, p) in &projs {
            for i in 0..n {
                if let Some(up) = shift(beta, i, 1).and_then(|u| projs.get(&u)) {
                    let cols: Vec<Vec<K>> =
                        p.basis.iter().map(|w| up.coords(&UMinusElt::word(Word(std::iter::once(i).chain(w.0.iter().copied()).collect())), b)).collect();
                    f.insert((i, beta.clone()), Mat::from_columns(up.basis.len(), &cols));
                }
                if let Some(down) = shift(beta, i, -1).and_then(|d| projs.get(&d)) {
                    let cols: Vec<Vec<K>> =
                        p.basis.iter().map(|w| Ok(down.coords(&ctx.e_word(i, w)?, b))).collect::<Result<_>>()?;
                    e.insert((i, beta.clone()), Mat::from_columns(down.basis.len(), &cols));
                }
            }
        }
        let blocks = projs.into_iter().map(|(beta, p)| (beta, Block { basis: p.basis })).collect();
        branches.push(BranchModule { branch: b, blocks, e, f });
    }
    let hw = HWModule {
        datum: ctx.datum.clone(),
        lambda: ctx.lambda.clone(),
        cutoff,
        presentation: Presentation::Tilde(ctx.tt.clone()),
        branches,
    };
    if let Some(msg) = hw.top_relations().failure {
        return Err(Error::Inconsistent(msg));
    }
    Ok(hw)
}

fn scalar_k(x: &Lsp, b: Branch) -> K {
    laurent_to_k(x, b)
}

fn rat_scale(m: &Mat<K>, c: &K) -> Mat<K> {
    m.map(|x| x.mul(c))
}

impl HWModule {
    fn zero(&self) -> RootVec {
        vec![0; self.datum.rank]
    }

    pub fn weight(&self, beta: &[i64]) -> Weight {
        weight_at(&self.datum, &self.lambda, beta)
    }

    pub fn pairing_at(&self, i: usize, beta: &[i64]) -> i64 {
        self.datum.pairing(i, &self.weight(beta))
    }

    /// Block dimensions, identical on every branch.
    pub fn dims(&self) -> BTreeMap<RootVec, usize> {
        self.branches[0].blocks.iter().map(|(b, bl)| (b.clone(), bl.dim())).collect()
    }

    pub fn interior(&self, beta: &[i64]) -> bool {
        (height(beta) as usize) < self.cutoff
    }

    /// `E_i v_Λ = 0` and `F_i^{⟨h_i,Λ⟩+1} v_Λ = 0` when the power stays inside the cutoff.
    pub fn top_relations(&self) -> Outcome {
        let z = self.zero();
        for bm in &self.branches {
            if bm.dim(&z) != 1 {
                return Outcome::fail("highest weight block is not one-dimensional");
            }
            for i in 0..self.datum.rank {
                if !bm.e_op(i, &z).is_none_or(|m| m.is_zero()) {
                    return Outcome::fail(format!("E_{i} v_Λ ≠ 0"));
                }
                let top = self.pairing_at(i, &z) + 1;
                if top < 0 || top as usize > self.cutoff {
                    continue;
                }
                let mut v = vec![K::one()];
                let mut beta = z.clone();
                for _ in 0..top {
                    let Some(f) = bm.f_op(i, &beta) else { break };
                    v = f.apply(&v);
                    beta[i] += 1;
                }
                if v.iter().any(|x| !x.is_zero()) {
                    return Outcome::fail(format!("F_{i}^{top} v_Λ ≠ 0 on branch {}", bm.branch.0));
                }
            }
        }
        Outcome::pass()
    }

    /// Eigenvalue of `K̃_i` (tilde presentation) or `K_i` on block `β`.
    pub fn k_eigen(&self, i: usize, beta: &[i64]) -> Result<Lsp> {
        match &self.presentation {
            Presentation::Tilde(tt) => upow(&tt.tp[i], self.pairing_at(i, beta)),
            Presentation::Theta { chi, .. } => chi.value(&self.datum, i, &self.weight(beta)),
        }
    }

    pub fn commutation_coeff(&self, i: usize, j: usize) -> Lsp {
        match &self.presentation {
            Presentation::Tilde(tt) => tt.ttheta[j][i].clone(),
            Presentation::Theta { tp, .. } => tp.theta[j][i].clone(),
        }
    }

    fn diagonal_term(&self, i: usize, beta: &[i64], b: Branch) -> Result<K> {
        match &self.presentation {
            Presentation::Tilde(tt) => Ok(scalar_k(&tilde_bracket(&tt.tp[i], self.pairing_at(i, beta))?, b)),
            Presentation::Theta { tp, .. } => {
                let k = self.k_eigen(i, beta)?;
                let num = k.sub(&upow(&k, -1)?);
                let den = tp.p_diag[i].sub(&upow(&tp.p_diag[i], -1)?);
                let den = scalar_k(&den, b);
                if den.is_zero() {
                    return Err(Error::Domain(format!("p_{i} - p_{i}^-1 vanishes on branch {}", b.0)));
                }
                Ok(scalar_k(&num, b).div(&den))
            }
        }
    }

    /// `E_iF_j - c_ij F_jE_i = δ_ij·(diagonal term)` on interior blocks, `c_ij` the defining coefficient.
    pub fn check_ef(&self) -> Result<Outcome> {
        self.check_ef_with(|i, j| self.commutation_coeff(i, j))
    }

    pub fn check_ef_with(&self, coeff: impl Fn(usize, usize) -> Lsp) -> Result<Outcome> {
        let n = self.datum.rank;
        for bm in &self.branches {
            let b = bm.branch;
            for beta in bm.blocks.keys().filter(|x| self.interior(x)) {
                for i in 0..n {
                    for j in 0..n {
                        let Some(target) = shift(beta, j, 1).and_then(|t| shift(&t, i, -1)) else { continue };
                        let (Some(fj), Some(ei_up)) = (bm.f_op(j, beta), shift(beta, j, 1).and_then(|u| bm.e_op(i, &u))) else {
                            continue;
                        };
                        let mut lhs = ei_up.mul(&fj);
                        if let Some(down) = shift(beta, i, -1) {
                            let ei = bm.e_op(i, beta).expect("interior block");
                            let fj_down = bm.f_op(j, &down).expect("interior block");
                            lhs = lhs.sub(&rat_scale(&fj_down.mul(&ei), &scalar_k(&coeff(i, j), b)));
                        }
                        let rhs = if i == j {
                            rat_scale(&Mat::identity(bm.dim(beta)), &self.diagonal_term(i, beta, b)?)
                        } else {
                            Mat::zeros(bm.dim(&target), bm.dim(beta))
                        };
                        if lhs != rhs {
                            return Ok(Outcome::fail(format!("E_{i}F_{j} relation fails at block {beta:?} on branch {}", b.0)));
                        }
                    }
                }
            }
        }
        Ok(Outcome::pass())
    }

    fn power(&self, bm: &BranchModule, i: usize, beta: &[i64], k: usize, raise: bool) -> Option<(RootVec, Mat<K>)> {
        let mut m = Mat::identity(bm.dim(beta));
        let mut cur = beta.to_vec();
        for _ in 0..k {
            let op = if raise { bm.e_op(i, &cur)? } else { bm.f_op(i, &cur)? };
            m = op.mul(&m);
            match shift(&cur, i, if raise { -1 } else { 1 }) {
                Some(next) => cur = next,
                None => return Some((cur, Mat::zeros(0, m.cols()))),
            }
        }
        Some((cur, m))
    }

    /// `e^{{n}}f^{{m}} = Σ_k q_i^{-k(k-n-m+1)} p̃_i^{k(k+1)/2-nm} f^{{m-k}} e^{{n-k}} [p̃_i^{n-m}K̃_i; k]`
    /// with `p̃_i = q_i²π_i` and divided powers over `[n]^π_i!`.
    pub fn check_divided_powers(&self, n: u32, m: u32, i: usize) -> Result<Outcome> {
        let Presentation::Tilde(tt) = &self.presentation else {
            return Err(Error::Domain("divided powers are checked in the tilde presentation".into()));
        };
        let d = self.datum.d[i];
        let par = self.datum.parity[i];
        let pt = &tt.tp[i];
        let fact = |k: u32| gauss_pi_fact(k, d, par).to_sqrt();
        for bm in &self.branches {
            let b = bm.branch;
            let inv_fact = |k: u32| scalar_k(&fact(k), b).inv();
            for beta in bm.blocks.keys() {
                if height(beta) as usize + m as usize > self.cutoff {
                    continue;
                }
                let (up, fm) = self.power(bm, i, beta, m as usize, false).expect("inside cutoff");
                let Some((out, en)) = self.power(bm, i, &up, n as usize, true) else { continue };
                let lhs = rat_scale(&en.mul(&fm), &inv_fact(n).mul(&inv_fact(m)));
                let mut rhs = Mat::zeros(lhs.rows(), lhs.cols());
                let h = self.pairing_at(i, beta);
                for k in 0..=n.min(m) {
                    let Some((mid, ek)) = self.power(bm, i, beta, (n - k) as usize, true) else { continue };
                    if ek.rows() == 0 {
                        continue;
                    }
                    let (_, fk) = self.power(bm, i, &mid, (m - k) as usize, false).expect("inside cutoff");
                    let (k64, n64, m64) = (k as i64, n as i64, m as i64);
                    let c = Lsp::q_pow(-d * k64 * (k64 - n64 - m64 + 1)).mul(&upow(pt, k64 * (k64 + 1) / 2 - n64 * m64)?);
                    let mut ck = scalar_k(&c, b);
                    for r in 1..=k64 {
                        let num = Lsp::one().sub(&upow(pt, n64 - m64 + h + 1 - r)?);
                        let den = Lsp::one().sub(&upow(pt, r)?);
                        ck = ck.mul(&scalar_k(&num, b)).div(&scalar_k(&den, b));
                    }
                    let term = rat_scale(&fk.mul(&ek), &ck.mul(&inv_fact(m - k)).mul(&inv_fact(n - k)));
                    if term.rows() == rhs.rows() {
                        rhs = rhs.add(&term);
                    }
                }
                if lhs.rows() != rhs.rows() || lhs != rhs {
                    return Ok(Outcome::fail(format!("divided powers (n={n}, m={m}) fail at block {beta:?} ({out:?})")));
                }
            }
        }
        Ok(Outcome::pass())
    }

    /// F-form of a tilde-presented module: `E^F_i = p_i p_ii^{-1} χ_i(μ)^{-1} E^H_i` on weight `μ`.
    pub fn to_f_form(&self, tp: &ThetaP) -> Result<HWModule> {
        let Presentation::Tilde(tt) = &self.presentation else {
            return Err(Error::Domain("module is already in the (θ, p) presentation".into()));
        };
        if &derive_tilde(tp)? != tt {
            return Err(Error::Domain("(θ, p) does not induce this tilde family".into()));
        }
        let chi = chi_build(&self.datum, tp, &self.lambda)?;
        let mut out = self.clone();
        out.presentation = Presentation::Theta { tp: tp.clone(), chi: chi.clone() };
        let factors = |i: usize, beta: &[i64]| -> Result<Lsp> {
            let c = chi.value(&self.datum, i, &self.weight(beta))?;
            Ok(tp.p_diag[i].mul(&upow(&tp.p_offdiag[i][i], -1)?).mul(&upow(&c, -1)?))
        };
        out.rescale_e(factors)?;
        Ok(out)
    }

    /// Inverse of [`HWModule::to_f_form`].
    pub fn to_h_form(&self) -> Result<HWModule> {
        let Presentation::Theta { tp, chi } = &self.presentation else {
            return Err(Error::Domain("module is already in the tilde presentation".into()));
        };
        let mut out = self.clone();
        out.presentation = Presentation::Tilde(derive_tilde(tp)?);
        let factors = |i: usize, beta: &[i64]| -> Result<Lsp> {
            let c = chi.value(&self.datum, i, &self.weight(beta))?;
            Ok(upow(&tp.p_diag[i], -1)?.mul(&tp.p_offdiag[i][i]).mul(&c))
        };
        out.rescale_e(factors)?;
        Ok(out)
    }

    pub(crate) fn rescale_e(&mut self, factor: impl Fn(usize, &[i64]) -> Result<Lsp>) -> Result<()> {
        for bm in &mut self.branches {
            let b = bm.branch;
            for ((i, beta), m) in bm.e.iter_mut() {
                *m = rat_scale(m, &scalar_k(&factor(*i, beta)?, b));
            }
        }
        Ok(())
    }

    pub(crate) fn rescale_f(&mut self, factor: impl Fn(usize, &[i64]) -> Result<Lsp>) -> Result<()> {
        for bm in &mut self.branches {
            let b = bm.branch;
            for ((i, beta), m) in bm.f.iter_mut() {
                *m = rat_scale(m, &scalar_k(&factor(*i, beta)?, b));
            }
        }
        Ok(())
    }
}
