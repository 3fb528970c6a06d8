use super::{HWModule, Presentation};
use crate::cartan::CartanSuperdatum;
use crate::error::{Error, Result};
use crate::params::{same_gauge_class, udiv, upow, ChiFunction, Lsp, ThetaP};
use crate::ring::Ring;

/// Rescaling data `E'_i = E_i·P_i(μ)^{-1}`, `F'_i = F_i·Q_i(μ)^{-1}` on block `μ = Λ - β` with
/// `P_i = Π_j x_ij^{-β_j}` and `Q_i = c_i Π_j y_ij^{-β_j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeData {
    pub x: Vec<Vec<Lsp>>,
    pub y: Vec<Vec<Lsp>>,
    pub c: Vec<Lsp>,
}

impl GaugeData {
    pub fn p_factor(&self, i: usize, beta: &[i64]) -> Result<Lsp> {
        beta.iter().enumerate().try_fold(Lsp::one(), |acc, (j, &b)| Ok(acc.mul(&upow(&self.x[i][j], -b)?)))
    }

    pub fn q_factor(&self, i: usize, beta: &[i64]) -> Result<Lsp> {
        beta.iter().enumerate().try_fold(self.c[i].clone(), |acc, (j, &b)| Ok(acc.mul(&upow(&self.y[i][j], -b)?)))
    }
}

/// Solves for a rescaling carrying `(θ, p)` modules to `(θ', p')` modules.
pub fn gauge_solve(datum: &CartanSuperdatum, from: &ThetaP, to: &ThetaP) -> Result<GaugeData> {
    if !same_gauge_class(from, to)? {
        return Err(Error::Domain("parameter families lie in different gauge classes".into()));
    }
    let n = datum.rank;
    if (0..n).any(|i| from.p_diag[i].mul(&from.p_diag[i]) != to.p_diag[i].mul(&to.p_diag[i])) {
        return Err(Error::Domain("gauge solve needs p'_i^2 = p_i^2".into()));
    }
    let eps = |i: usize, j: usize| udiv(&to.p_offdiag[i][j], &from.p_offdiag[i][j]);
    let mut x = vec![vec![Lsp::one(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            x[j][i] = udiv(&to.theta[i][j], &from.theta[i][j].mul(&eps(i, j)?))?;
        }
    }
    let mut y = vec![vec![Lsp::one(); n]; n];
    for i in 0..n {
        for j in 0..n {
            y[i][j] = udiv(&eps(i, j)?, &x[i][j])?;
        }
    }
    let c = (0..n)
        .map(|i| Ok(x[i][i].mul(&udiv(&to.p_diag[i], &from.p_diag[i])?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(GaugeData { x, y, c })
}

/// Carries a module in the `(θ, p)` presentation to the family `to`.
pub fn gauge_transform(hw: &HWModule, to: &ThetaP) -> Result<HWModule> {
    let Presentation::Theta { tp, chi } = &hw.presentation else {
        return Err(Error::Domain("gauge transforms act on (θ, p) modules".into()));
    };
    if tp == to {
        return Ok(hw.clone());
    }
    let g = gauge_solve(&hw.datum, tp, to)?;
    let mut out = hw.clone();
    out.rescale_e(|i, beta| upow(&g.p_factor(i, beta)?, -1))?;
    out.rescale_f(|i, beta| upow(&g.q_factor(i, beta)?, -1))?;
    out.presentation = Presentation::Theta {
        tp: to.clone(),
        chi: ChiFunction { base: chi.base.clone(), values: chi.values.clone(), shift: to.p_offdiag.clone() },
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{self, Weight};
    use crate::highest::{build_hw, VermaContext};
    use crate::params::{lift_tilde, preset};

    fn theta(name: &str, d: &CartanSuperdatum) -> ThetaP {
        preset(name, d).unwrap().theta_p(d).unwrap()
    }

    fn f_module(d: &CartanSuperdatum, lambda: &[i64], cutoff: usize) -> HWModule {
        let fam = preset("Uqsg", d).unwrap();
        let c = VermaContext::new(d, &fam, &Weight(lambda.to_vec())).unwrap();
        let hw = build_hw(&c, cutoff).unwrap();
        let lift = lift_tilde(&fam.tilde().unwrap(), d).unwrap();
        hw.to_f_form(&lift).unwrap()
    }

    #[test]
    fn uqsg_to_bold_and_bkm() {
        for (name, l) in [("A2", vec![1, 1]), ("A1odd", vec![2]), ("B2", vec![1, 1])] {
            let d = cartan::preset(name).unwrap();
            let f = f_module(&d, &l, 3);
            assert!(f.check_ef().unwrap().ok);
            let bold = gauge_transform(&f, &theta("boldU", &d)).unwrap();
            assert!(bold.check_ef().unwrap().ok, "{name} boldU");
            let bkm = gauge_transform(&bold, &theta("BKM", &d)).unwrap();
            assert!(bkm.check_ef().unwrap().ok, "{name} BKM");
            let back = gauge_transform(&bkm, &theta("boldU", &d)).unwrap();
            assert!(back.check_ef().unwrap().ok);
        }
    }

    #[test]
    fn identity_gauge() {
        let d = cartan::preset("A2").unwrap();
        let t = theta("boldU", &d);
        let g = gauge_solve(&d, &t, &t).unwrap();
        assert!(g.x.iter().flatten().chain(g.y.iter().flatten()).chain(&g.c).all(|v| v.is_one()));
        let mut other = t.clone();
        other.theta[0][1] = other.theta[0][1].mul(&Lsp::q_pow(1));
        assert!(gauge_solve(&d, &t, &other).is_err());
    }
}
