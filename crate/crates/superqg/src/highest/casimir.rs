use super::{build_hw, shift, BranchModule, HWModule, Outcome, Presentation, VermaContext};
use crate::cartan::{height, qplus_up_to_height, CartanSuperdatum, RootVec, Weight};
use crate::coeffs::{laurent_to_k, Branch, K};
use crate::error::{Error, Result};
use crate::linalg::{inverse, rank_profile, Mat};
use crate::params::{upow, Lsp, ParamFamily, ThetaP};
use crate::ring::Ring;
use crate::uminus::{words_of_weight, Boson, Word};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use std::collections::HashMap;

/// Builds `g` on `Q⁺` up to `cutoff` from `g(0) = 1` and `g(β + α_i) = step(i, β)·g(β)`,
/// failing if two paths disagree.
fn path_function(n: usize, cutoff: usize, step: impl Fn(usize, &[i64]) -> Result<Lsp>) -> Result<HashMap<RootVec, Lsp>> {
    let mut out: HashMap<RootVec, Lsp> = HashMap::from([(vec![0; n], Lsp::one())]);
    for beta in qplus_up_to_height(n, cutoff) {
        if height(&beta) == 0 {
            continue;
        }
        let mut val: Option<Lsp> = None;
        for i in 0..n {
            let Some(prev) = shift(&beta, i, -1) else { continue };
            let v = step(i, &prev)?.mul(&out[&prev]);
            match &val {
                Some(w) if *w != v => return Err(Error::Inconsistent(format!("path dependence at {beta:?}"))),
                _ => val = Some(v),
            }
        }
        out.insert(beta, val.expect("nonzero content"));
    }
    Ok(out)
}

/// Quantum Casimir data for a `(θ, p)` module with `θ_ii = 1` and `θ_ij^2 = 1`.
#[derive(Clone, Debug)]
pub struct CasimirContext {
    pub hw: HWModule,
    pub tp: ThetaP,
    pub boson: Boson,
    /// `Ψ(-γ)`, keyed by `γ`.
    pub psi: HashMap<RootVec, Lsp>,
    /// `Ξ̂` on the block `Λ - β`.
    pub xi: HashMap<RootVec, Lsp>,
    /// `(Λ+ρ|Λ+ρ) - (ρ|ρ)`.
    pub absolute_exponent: BigRational,
}

pub fn casimir_build(datum: &CartanSuperdatum, tp: &ThetaP, lambda: &Weight, cutoff: usize) -> Result<CasimirContext> {
    let n = datum.rank;
    for i in 0..n {
        for j in 0..n {
            let t = &tp.theta[i][j];
            if (i == j && !t.is_one()) || !t.mul(t).is_one() {
                return Err(Error::Domain("Casimir needs θ_ii = 1 and θ_ij^2 = 1".into()));
            }
        }
    }
    let fam = ParamFamily::Theta(tp.clone());
    let ctx = VermaContext::new(datum, &fam, lambda)?;
    let hw = build_hw(&ctx, cutoff)?.to_f_form(tp)?;
    let boson = Boson::new(datum, &fam)?;
    let psi = path_function(n, cutoff, |i, g| {
        let mut a = Lsp::one();
        for (j, &gj) in g.iter().enumerate() {
            a = a.mul(&upow(&tp.theta[j][i], gj)?);
        }
        let e: i64 = (0..n).map(|j| datum.a[i][j] * g[j]).sum();
        upow(&a.mul(&upow(&tp.p_diag[i], e)?), -1)
    })?;
    let pi_of = |i: usize| if datum.parity[i] == 1 { Lsp::constant(crate::coeffs::SqrtPiScalar::sqrt_pi_pow(2)) } else { Lsp::one() };
    let t = path_function(n, cutoff, |i, b| upow(&pi_of(i), datum.pairing(i, &hw.weight(b))))?;
    let rho = Weight(datum.rho.clone());
    let top = lambda.add(&rho);
    let norm = |w: &Weight| datum.form(w, w);
    let mut xi = HashMap::new();
    for (beta, tv) in &t {
        let e = norm(&hw.weight(beta).add(&rho)) - norm(&top);
        if !e.is_integer() {
            return Err(Error::NonIntegral(format!("Casimir exponent {e} at {beta:?}")));
        }
        let e = e.to_integer().to_i64().ok_or_else(|| Error::NonIntegral("exponent overflow".into()))?;
        xi.insert(beta.clone(), tv.mul(&Lsp::q_pow(e)));
    }
    let absolute_exponent = norm(&top) - norm(&rho);
    Ok(CasimirContext { hw, tp: tp.clone(), boson, psi, xi, absolute_exponent })
}

/// Applies the word `f_{k₁}···f_{kₙ}` from block `β`.
fn apply_f(bm: &BranchModule, w: &Word, beta: &[i64]) -> Option<Mat<K>> {
    let mut cur = beta.to_vec();
    let mut m = Mat::identity(bm.dim(beta));
    for &k in w.0.iter().rev() {
        m = bm.f_op(k, &cur)?.mul(&m);
        cur[k] += 1;
    }
    Some(m)
}

impl CasimirContext {
    fn k_value(&self, i: usize, beta: &[i64], b: Branch) -> Result<K> {
        Ok(laurent_to_k(&self.hw.k_eigen(i, beta)?, b))
    }

    /// `ψ(f_{j₁}···f_{jₙ}) = K_{j₁}e_{j₁}···K_{jₙ}e_{jₙ}` from block `β`; `None` when it leaves `Q⁺`.
    fn apply_psi(&self, bm: &BranchModule, w: &Word, beta: &[i64]) -> Result<Option<Mat<K>>> {
        let mut cur = beta.to_vec();
        let mut m = Mat::identity(bm.dim(beta));
        for &j in w.0.iter().rev() {
            let Some(next) = shift(&cur, j, -1) else { return Ok(None) };
            let e = bm.e_op(j, &cur).ok_or_else(|| Error::Inconsistent("missing E block".into()))?;
            m = e.mul(&m).scale(&self.k_value(j, &next, bm.branch)?);
            cur = next;
        }
        Ok(Some(m))
    }

    /// `Φ = Σ_ν Ψ(wt A_ν) A′_ν ψ(A_ν)` on block `β` of one branch.
    pub fn phi(&self, bm: &BranchModule, beta: &[i64]) -> Result<Mat<K>> {
        let b = bm.branch;
        let dim = bm.dim(beta);
        let mut acc = Mat::zeros(dim, dim);
        for delta in qplus_up_to_height(beta.len(), height(beta) as usize) {
            if delta.iter().zip(beta).any(|(d, x)| d > x) {
                continue;
            }
            let low: RootVec = beta.iter().zip(&delta).map(|(x, d)| x - d).collect();
            if bm.dim(&low) == 0 {
                continue;
            }
            let words = words_of_weight(&delta);
            let g = self
                .boson
                .bold_gram(&delta)?
                .into_iter()
                .find(|(br, _)| *br == b)
                .map(|(_, g)| g)
                .ok_or_else(|| Error::Domain(format!("branch {} unavailable", b.0)))?;
            let (rows, _) = rank_profile(&g);
            let ginv = inverse(&g.submatrix(&rows, &rows)).ok_or_else(|| Error::Inconsistent(format!("singular Gram at {delta:?}")))?;
            let basis: Vec<&Word> = rows.iter().map(|&r| &words[r]).collect();
            let psis: Vec<Mat<K>> =
                basis.iter().map(|w| Ok(self.apply_psi(bm, w, beta)?.expect("δ ≤ β"))).collect::<Result<_>>()?;
            let fs: Vec<Mat<K>> =
                basis.iter().map(|w| apply_f(bm, w, &low).ok_or_else(|| Error::Inconsistent("missing F block".into()))).collect::<Result<_>>()?;
            let mut part = Mat::zeros(dim, dim);
            for (nu, ps) in psis.iter().enumerate() {
                for (kappa, fk) in fs.iter().enumerate() {
                    let c = ginv.get(kappa, nu);
                    if !c.is_zero() {
                        part = part.add(&fk.mul(ps).scale(c));
                    }
                }
            }
            acc = acc.add(&part.scale(&laurent_to_k(&self.psi[&delta], b)));
        }
        Ok(acc)
    }

    /// `Ω̂ = Φ·Ξ̂` on block `β` of one branch.
    pub fn omega(&self, bm: &BranchModule, beta: &[i64]) -> Result<Mat<K>> {
        Ok(self.phi(bm, beta)?.scale(&laurent_to_k(&self.xi[beta], bm.branch)))
    }

    /// `Ω̂ = id` on every block and `Ω̂` commutes with `E_i`, `F_i` on interior blocks.
    pub fn check(&self) -> Result<Outcome> {
        let n = self.hw.datum.rank;
        for bm in &self.hw.branches {
            let omegas: HashMap<RootVec, Mat<K>> =
                bm.blocks.keys().map(|b| Ok((b.clone(), self.omega(bm, b)?))).collect::<Result<_>>()?;
            for (beta, om) in &omegas {
                if *om != Mat::identity(om.rows()) {
                    return Ok(Outcome::fail(format!("Ω̂ ≠ id at block {beta:?} on branch {}", bm.branch.0)));
                }
            }
            for beta in bm.blocks.keys().filter(|b| self.hw.interior(b)) {
                for i in 0..n {
                    let up = shift(beta, i, 1).expect("raising stays in Q⁺");
                    let f = bm.f_op(i, beta).expect("interior block");
                    if omegas[&up].mul(&f) != f.mul(&omegas[beta]) {
                        return Ok(Outcome::fail(format!("Ω̂ F_{i} ≠ F_{i} Ω̂ at {beta:?}")));
                    }
                    if let Some(down) = shift(beta, i, -1) {
                        let e = bm.e_op(i, beta).expect("block present");
                        if omegas[&down].mul(&e) != e.mul(&omegas[beta]) {
                            return Ok(Outcome::fail(format!("Ω̂ E_{i} ≠ E_{i} Ω̂ at {beta:?}")));
                        }
                    }
                }
            }
        }
        Ok(Outcome::pass())
    }
}

pub fn casimir_check(ctx: &CasimirContext) -> Result<bool> {
    if !matches!(ctx.hw.presentation, Presentation::Theta { .. }) {
        return Err(Error::Domain("Casimir acts on (θ, p) modules".into()));
    }
    Ok(ctx.check()?.ok)
}
