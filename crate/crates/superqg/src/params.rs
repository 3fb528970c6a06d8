//! Parameter families `(θ, p)` and `(θ̃, p̃)`, presets, and conversions.

use crate::cartan::{CartanSuperdatum, Weight};
use crate::coeffs::{LaurentPi, LaurentSqrtPi, SqrtPiScalar};
use crate::error::{Error, Result};
use crate::ring::Ring;
use serde::{Deserialize, Serialize};

pub type Lsp = LaurentSqrtPi;

/// `x^n` for a unit `x`; negative `n` needs `x` invertible.
pub fn upow(x: &Lsp, n: i64) -> Result<Lsp> {
    x.powi(n).ok_or_else(|| Error::Domain(format!("{x} is not invertible")))
}

pub fn uinv(x: &Lsp) -> Result<Lsp> {
    upow(x, -1)
}

/// Unit entries: `x / y`.
pub fn udiv(x: &Lsp, y: &Lsp) -> Result<Lsp> {
    Ok(x.mul(&uinv(y)?))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaP {
    pub theta: Vec<Vec<Lsp>>,
    #[serde(rename = "p")]
    pub p_offdiag: Vec<Vec<Lsp>>,
    pub p_diag: Vec<Lsp>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TildeThetaP {
    pub ttheta: Vec<Vec<Lsp>>,
    pub tp: Vec<Lsp>,
}

/// One square root of `π_i` per index.
#[derive(Clone, Debug, PartialEq)]
pub struct SqrtChoice(pub Vec<SqrtPiScalar>);

impl SqrtChoice {
    /// `√π` on odd indices, `1` on even ones.
    pub fn standard(datum: &CartanSuperdatum) -> Self {
        SqrtChoice(datum.parity.iter().map(|&p| SqrtPiScalar::sqrt_pi_pow(p as i64)).collect())
    }

    pub fn validate(&self, datum: &CartanSuperdatum) -> Result<()> {
        if self.0.len() != datum.rank {
            return Err(Error::Domain("one square root per index is required".into()));
        }
        for (i, r) in self.0.iter().enumerate() {
            let target = SqrtPiScalar::sqrt_pi_pow(2 * datum.parity[i] as i64);
            if r.mul(r) != target {
                return Err(Error::Domain(format!("choice {r} at index {i} does not square to π_{i}")));
            }
        }
        Ok(())
    }

    fn root(&self, i: usize) -> Lsp {
        Lsp::constant(self.0[i].clone())
    }
}

fn check_shape(datum: &CartanSuperdatum, rows: &[Vec<Lsp>], diag: &[Lsp]) -> Result<()> {
    let n = datum.rank;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) || diag.len() != n {
        return Err(Error::Domain(format!("parameter matrices must be {n}x{n}")));
    }
    Ok(())
}

fn violation(i: usize, j: usize, identity: &str) -> Error {
    Error::Condition { i, j, identity: identity.into() }
}

fn need_unit(x: &Lsp, i: usize, j: usize) -> Result<()> {
    if x.is_unit() {
        Ok(())
    } else {
        Err(violation(i, j, "entry is not invertible"))
    }
}

/// The three identities tying `θ_ij`, `p_ij`, `p_i`.
pub fn check_pt(tp: &ThetaP, datum: &CartanSuperdatum) -> Result<()> {
    check_shape(datum, &tp.theta, &tp.p_diag)?;
    check_shape(datum, &tp.p_offdiag, &tp.p_diag)?;
    let n = datum.rank;
    for i in 0..n {
        need_unit(&tp.p_diag[i], i, i)?;
        for j in 0..n {
            need_unit(&tp.theta[i][j], i, j)?;
            need_unit(&tp.p_offdiag[i][j], i, j)?;
        }
    }
    for i in 0..n {
        let pi = &tp.p_diag[i];
        for j in 0..n {
            let a = datum.a[i][j];
            let target = upow(pi, 2 * a)?;
            let pij = &tp.p_offdiag[i][j];
            if pij.mul(pij) != target {
                return Err(violation(i, j, "p_ij^2 = p_i^(2a_ij)"));
            }
            let lhs = pij.mul(&tp.p_offdiag[j][i]);
            let rhs = target.mul(&tp.theta[i][j]).mul(&tp.theta[j][i]);
            if lhs != rhs {
                return Err(violation(i, j, "p_ij p_ji = p_i^(2a_ij) θ_ij θ_ji"));
            }
        }
        if tp.p_offdiag[i][i] != pi.mul(pi).mul(&tp.theta[i][i]) {
            return Err(violation(i, i, "p_ii = p_i^2 θ_ii"));
        }
    }
    Ok(())
}

/// `θ̃_ij θ̃_ji = p̃_i^(-a_ij)` and `θ̃_ii = p̃_i^(-1)`.
pub fn check_ttp(t: &TildeThetaP, datum: &CartanSuperdatum) -> Result<()> {
    check_shape(datum, &t.ttheta, &t.tp)?;
    let n = datum.rank;
    for i in 0..n {
        need_unit(&t.tp[i], i, i)?;
        for j in 0..n {
            need_unit(&t.ttheta[i][j], i, j)?;
        }
    }
    for i in 0..n {
        if t.ttheta[i][i] != uinv(&t.tp[i])? {
            return Err(violation(i, i, "θ̃_ii = p̃_i^(-1)"));
        }
        for j in 0..n {
            let lhs = t.ttheta[i][j].mul(&t.ttheta[j][i]);
            if lhs != upow(&t.tp[i], -datum.a[i][j])? {
                return Err(violation(i, j, "θ̃_ij θ̃_ji = p̃_i^(-a_ij)"));
            }
        }
    }
    Ok(())
}

/// `θ̃_ij = θ_ij p_ji^(-1)`, `p̃_i = p_i^2`.
pub fn derive_tilde(tp: &ThetaP) -> Result<TildeThetaP> {
    let n = tp.p_diag.len();
    let mut ttheta = vec![vec![Lsp::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            ttheta[i][j] = udiv(&tp.theta[i][j], &tp.p_offdiag[j][i])?;
        }
    }
    Ok(TildeThetaP { ttheta, tp: tp.p_diag.iter().map(|p| p.mul(p)).collect() })
}

/// Unit square root of `c·q^(2m)` with `c` an even power of `√π`.
pub fn unit_sqrt(x: &Lsp) -> Result<Lsp> {
    let err = || Error::Domain(format!("{x} has no unit square root"));
    let mut it = x.terms();
    let (e, c) = it.next().ok_or_else(err)?;
    if it.next().is_some() || e % 2 != 0 {
        return Err(err());
    }
    for k in 0..4 {
        let r = SqrtPiScalar::sqrt_pi_pow(k);
        if r.mul(&r) == *c {
            return Ok(Lsp::monomial(e / 2, r));
        }
    }
    Err(err())
}

/// A `(θ, p)` family whose tilde family is `t`, with `p_i = √p̃_i` and `p_ij = p_i^(a_ij)`.
pub fn lift_tilde(t: &TildeThetaP, datum: &CartanSuperdatum) -> Result<ThetaP> {
    let n = datum.rank;
    let p_diag = t.tp.iter().map(unit_sqrt).collect::<Result<Vec<_>>>()?;
    let mut p_offdiag = vec![vec![Lsp::zero(); n]; n];
    let mut theta = vec![vec![Lsp::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            p_offdiag[i][j] = upow(&p_diag[i], datum.a[i][j])?;
        }
    }
    for i in 0..n {
        for j in 0..n {
            theta[i][j] = t.ttheta[i][j].mul(&p_offdiag[j][i]);
        }
    }
    Ok(ThetaP { theta, p_offdiag, p_diag })
}

/// The invariants `p_ij^2`, `p_ij p_ji / (θ_ij θ_ji)`, `p_ii / θ_ii`.
pub fn gauge_invariants(tp: &ThetaP) -> Result<(Vec<Vec<Lsp>>, Vec<Vec<Lsp>>, Vec<Lsp>)> {
    let n = tp.p_diag.len();
    let mut sq = vec![vec![Lsp::zero(); n]; n];
    let mut cross = vec![vec![Lsp::zero(); n]; n];
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..n {
            let pij = &tp.p_offdiag[i][j];
            sq[i][j] = pij.mul(pij);
            let th = tp.theta[i][j].mul(&tp.theta[j][i]);
            cross[i][j] = udiv(&pij.mul(&tp.p_offdiag[j][i]), &th)?;
        }
        diag.push(udiv(&tp.p_offdiag[i][i], &tp.theta[i][i])?);
    }
    Ok((sq, cross, diag))
}

pub fn same_gauge_class(a: &ThetaP, b: &ThetaP) -> Result<bool> {
    Ok(gauge_invariants(a)? == gauge_invariants(b)?)
}

/// Tilde families compare through `p̃_i` and the products `θ̃_ij θ̃_ji`.
pub fn same_gauge_class_tilde(a: &TildeThetaP, b: &TildeThetaP) -> bool {
    let n = a.tp.len();
    a.tp == b.tp
        && (0..n).all(|i| {
            (0..n).all(|j| a.ttheta[i][j].mul(&a.ttheta[j][i]) == b.ttheta[i][j].mul(&b.ttheta[j][i]))
        })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamFamily {
    Theta(ThetaP),
    Tilde(TildeThetaP),
}

impl ParamFamily {
    pub fn validate(&self, datum: &CartanSuperdatum) -> Result<()> {
        match self {
            ParamFamily::Theta(t) => check_pt(t, datum),
            ParamFamily::Tilde(t) => check_ttp(t, datum),
        }
    }

    pub fn tilde(&self) -> Result<TildeThetaP> {
        match self {
            ParamFamily::Theta(t) => derive_tilde(t),
            ParamFamily::Tilde(t) => Ok(t.clone()),
        }
    }

    pub fn theta_p(&self, datum: &CartanSuperdatum) -> Result<ThetaP> {
        match self {
            ParamFamily::Theta(t) => Ok(t.clone()),
            ParamFamily::Tilde(t) => lift_tilde(t, datum),
        }
    }
}

pub const PARAM_PRESETS: [&str; 3] = ["BKM", "boldU", "Uqsg"];

fn q_i(datum: &CartanSuperdatum, i: usize) -> i64 {
    datum.d[i]
}

pub fn preset(name: &str, datum: &CartanSuperdatum) -> Result<ParamFamily> {
    preset_with(name, datum, &SqrtChoice::standard(datum))
}

pub fn preset_with(name: &str, datum: &CartanSuperdatum, roots: &SqrtChoice) -> Result<ParamFamily> {
    roots.validate(datum)?;
    let n = datum.rank;
    let p_i = |i: usize| Lsp::q_pow(q_i(datum, i)).mul(&roots.root(i));
    match name {
        "BKM" => {
            let mut theta = vec![vec![Lsp::one(); n]; n];
            let mut p_offdiag = vec![vec![Lsp::zero(); n]; n];
            for i in 0..n {
                theta[i][i] = LaurentPi::pi_q(datum.parity[i] as i64, 0).to_sqrt();
                for j in 0..n {
                    p_offdiag[i][j] = Lsp::q_pow(q_i(datum, i) * datum.a[i][j]);
                }
            }
            Ok(ParamFamily::Theta(ThetaP { theta, p_offdiag, p_diag: (0..n).map(p_i).collect() }))
        }
        "boldU" => {
            let p_diag: Vec<Lsp> = (0..n).map(p_i).collect();
            let mut theta = vec![vec![Lsp::one(); n]; n];
            let mut p_offdiag = vec![vec![Lsp::zero(); n]; n];
            for i in 0..n {
                for j in 0..n {
                    p_offdiag[i][j] = upow(&p_diag[i], datum.a[i][j])?;
                    if i != j {
                        theta[i][j] = upow(&roots.root(j), datum.a[j][i])?;
                    }
                }
            }
            Ok(ParamFamily::Theta(ThetaP { theta, p_offdiag, p_diag }))
        }
        "Uqsg" => {
            let mut ttheta = vec![vec![Lsp::zero(); n]; n];
            for i in 0..n {
                for j in 0..n {
                    let e = (datum.parity[i] * datum.parity[j]) as i64;
                    ttheta[i][j] = LaurentPi::pi_q(e, -q_i(datum, i) * datum.a[i][j]).to_sqrt();
                }
            }
            let tp = (0..n)
                .map(|i| LaurentPi::pi_q(datum.parity[i] as i64, 2 * q_i(datum, i)).to_sqrt())
                .collect();
            Ok(ParamFamily::Tilde(TildeThetaP { ttheta, tp }))
        }
        _ => Err(Error::UnknownPreset(name.into())),
    }
}

/// JSON parameter spec: a preset name or an explicit family.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamSpec {
    Preset { preset: String },
    Explicit(ParamFamily),
}

impl ParamSpec {
    pub fn resolve(&self, datum: &CartanSuperdatum) -> Result<ParamFamily> {
        let fam = match self {
            ParamSpec::Preset { preset: name } => preset(name, datum)?,
            ParamSpec::Explicit(f) => f.clone(),
        };
        fam.validate(datum)?;
        Ok(fam)
    }
}

/// `χ_i` on `λ₀ + Q`, determined by `χ_i(λ₀)` and `χ_i(λ+α_j) = s_ij χ_i(λ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChiFunction {
    pub base: Weight,
    pub values: Vec<Lsp>,
    pub shift: Vec<Vec<Lsp>>,
}

impl ChiFunction {
    pub fn value(&self, datum: &CartanSuperdatum, i: usize, lambda: &Weight) -> Result<Lsp> {
        let m = datum
            .weight_to_root(&lambda.sub(&self.base))
            .ok_or_else(|| Error::Domain("weight is not in the orbit λ₀ + Q".into()))?;
        let mut out = self.values[i].clone();
        for (j, mj) in m.iter().enumerate() {
            out = out.mul(&upow(&self.shift[i][j], *mj)?);
        }
        Ok(out)
    }

    /// `χ_i(λ)^2 = p_i^(2⟨h_i,λ⟩)` at `λ`.
    pub fn check_at(&self, datum: &CartanSuperdatum, p_diag: &[Lsp], lambda: &Weight) -> Result<bool> {
        for i in 0..datum.rank {
            let c = self.value(datum, i, lambda)?;
            if c.mul(&c) != upow(&p_diag[i], 2 * datum.pairing(i, lambda))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `χ_i(λ₀ + Σ m_j α_j) = p_i^⟨h_i,λ₀⟩ Π p_ij^(m_j)`.
pub fn chi_build(datum: &CartanSuperdatum, tp: &ThetaP, base: &Weight) -> Result<ChiFunction> {
    let values = (0..datum.rank)
        .map(|i| upow(&tp.p_diag[i], datum.pairing(i, base)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ChiFunction { base: base.clone(), values, shift: tp.p_offdiag.clone() })
}

/// `χ̃_i(λ) = p̃_i^⟨h_i,λ⟩`.
pub fn chi_build_tilde(datum: &CartanSuperdatum, t: &TildeThetaP, base: &Weight) -> Result<ChiFunction> {
    let n = datum.rank;
    let values = (0..n).map(|i| upow(&t.tp[i], datum.pairing(i, base))).collect::<Result<Vec<_>>>()?;
    let mut shift = vec![vec![Lsp::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            shift[i][j] = upow(&t.tp[i], datum.a[i][j])?;
        }
    }
    Ok(ChiFunction { base: base.clone(), values, shift })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan;

    fn theta(name: &str, d: &CartanSuperdatum) -> ThetaP {
        match preset(name, d).unwrap() {
            ParamFamily::Theta(t) => t,
            _ => unreachable!(),
        }
    }

    fn tilde(name: &str, d: &CartanSuperdatum) -> TildeThetaP {
        match preset(name, d).unwrap() {
            ParamFamily::Tilde(t) => t,
            _ => unreachable!(),
        }
    }

    #[test]
    fn presets_satisfy_their_conditions() {
        for dn in ["A1", "A1odd", "A2", "B2", "A1affine"] {
            let d = cartan::preset(dn).unwrap();
            for pn in PARAM_PRESETS {
                let f = preset(pn, &d).unwrap();
                f.validate(&d).unwrap_or_else(|e| panic!("{pn} on {dn}: {e}"));
                check_ttp(&f.tilde().unwrap(), &d).unwrap();
            }
        }
    }

    #[test]
    fn uqsg_rank_one_odd() {
        let d = cartan::preset("A1odd").unwrap();
        let t = tilde("Uqsg", &d);
        assert_eq!(t.tp[0], LaurentPi::pi_q(1, 2).to_sqrt());
        assert_eq!(t.ttheta[0][0], LaurentPi::pi_q(1, -2).to_sqrt());
        let mut bad = t.clone();
        bad.ttheta[0][0] = Lsp::q_pow(-2);
        assert_eq!(check_ttp(&bad, &d), Err(violation(0, 0, "θ̃_ii = p̃_i^(-1)")));
    }

    #[test]
    fn bkm_rank_one_even() {
        let d = cartan::preset("A1").unwrap();
        let t = theta("BKM", &d);
        assert_eq!(t.p_diag[0], Lsp::q_pow(1));
        assert!(t.theta[0][0].is_one());
        assert_eq!(derive_tilde(&t).unwrap().ttheta[0][0], Lsp::q_pow(-2));
    }

    #[test]
    fn bold_u_a2_is_trivial_and_symmetric() {
        let d = cartan::preset("A2").unwrap();
        let t = theta("boldU", &d);
        assert!(t.theta.iter().flatten().all(|x| x.is_one()));
        let tt = derive_tilde(&t).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(tt.ttheta[i][j], tt.ttheta[j][i]);
            }
        }
    }

    #[test]
    fn bold_u_tilde_matches_uqsg_up_to_gauge() {
        for dn in ["A1odd", "A2", "B2"] {
            let d = cartan::preset(dn).unwrap();
            let from_bold = derive_tilde(&theta("boldU", &d)).unwrap();
            let u = tilde("Uqsg", &d);
            assert!(same_gauge_class_tilde(&from_bold, &u));
            let lifted = lift_tilde(&u, &d).unwrap();
            check_pt(&lifted, &d).unwrap();
            assert!(same_gauge_class(&lifted, &theta("boldU", &d)).unwrap());
        }
        let d = cartan::preset("A1odd").unwrap();
        assert_eq!(derive_tilde(&theta("boldU", &d)).unwrap().ttheta[0][0], LaurentPi::pi_q(1, -2).to_sqrt());
    }

    #[test]
    fn alternate_square_roots() {
        let d = cartan::preset("A1odd").unwrap();
        let neg = SqrtChoice(vec![SqrtPiScalar::sqrt_pi_pow(1).neg()]);
        let f = preset_with("boldU", &d, &neg).unwrap();
        f.validate(&d).unwrap();
        let bad = SqrtChoice(vec![SqrtPiScalar::sqrt_pi_pow(0)]);
        assert!(preset_with("boldU", &d, &bad).is_err());
        assert!(matches!(preset("nope", &d), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn chi_on_rank_one() {
        let d = cartan::preset("A1").unwrap();
        let t = theta("BKM", &d);
        let l = Weight(vec![1]);
        let chi = chi_build(&d, &t, &l).unwrap();
        assert_eq!(chi.value(&d, 0, &l).unwrap(), Lsp::q_pow(1));
        assert_eq!(chi.value(&d, 0, &l.sub(&d.alpha(0))).unwrap(), Lsp::q_pow(-1));
        let z = chi_build(&d, &t, &Weight(vec![0])).unwrap();
        assert!(z.values[0].is_one());

        let d = cartan::preset("A1odd").unwrap();
        let u = tilde("Uqsg", &d);
        let l = Weight(vec![2]);
        let chi = chi_build_tilde(&d, &u, &l).unwrap();
        assert_eq!(chi.values[0], LaurentPi::pi_q(2, 4).to_sqrt());
        assert!(chi.check_at(&d, &u.tp, &l.sub(&d.alpha(0))).unwrap());
    }

    #[test]
    fn explicit_spec_roundtrip() {
        let d = cartan::preset("A1").unwrap();
        let spec: ParamSpec = serde_json::from_str(r#"{"theta":[[[[0,1,0]]]],"p":[[[[2,1,0]]]],"p_diag":[[[1,1,0]]]}"#).unwrap();
        let f = spec.resolve(&d).unwrap();
        assert_eq!(f, preset("BKM", &d).unwrap());
        let spec: ParamSpec = serde_json::from_str(r#"{"preset":"Uqsg"}"#).unwrap();
        assert!(matches!(spec.resolve(&d).unwrap(), ParamFamily::Tilde(_)));
    }
}
