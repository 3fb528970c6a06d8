use proptest::prelude::*;
use superqg::cartan::{preset as datum, CartanSuperdatum};
use superqg::coeffs::SqrtPiScalar;
use superqg::params::{check_pt, check_ttp, derive_tilde, lift_tilde, preset, same_gauge_class_tilde, Lsp, ThetaP, PARAM_PRESETS};
use superqg::ring::Ring;

fn unit(sign: bool, root: i64, q: i64) -> Lsp {
    let c = SqrtPiScalar::sqrt_pi_pow(root);
    Lsp::monomial(q, if sign { c.neg() } else { c })
}

/// `p_i = ±q^{d_i}`, `p_ij = ±p_i^{a_ij}`, free `θ_ij` for `i < j` and `θ_ji` solved from the
/// cross identity.
fn family(d: &CartanSuperdatum, signs: &[bool], free: &[(bool, i64, i64)]) -> ThetaP {
    let n = d.rank;
    let p_diag: Vec<Lsp> = (0..n).map(|i| unit(signs[i], 0, d.d[i])).collect();
    let mut p = vec![vec![Lsp::zero(); n]; n];
    let mut theta = vec![vec![Lsp::one(); n]; n];
    let mut k = n;
    for i in 0..n {
        for j in 0..n {
            let base = p_diag[i].powi(d.a[i][j]).unwrap();
            p[i][j] = if signs[k % signs.len()] { base.neg() } else { base };
            k += 1;
        }
    }
    for i in 0..n {
        theta[i][i] = p[i][i].mul(&p_diag[i].mul(&p_diag[i]).powi(-1).unwrap());
    }
    let mut f = free.iter().cycle();
    for i in 0..n {
        for j in i + 1..n {
            let &(s, r, e) = f.next().unwrap();
            theta[i][j] = unit(s, 2 * r, e);
            let target = p_diag[i].powi(2 * d.a[i][j]).unwrap();
            theta[j][i] = p[i][j].mul(&p[j][i]).mul(&target.mul(&theta[i][j]).powi(-1).unwrap());
        }
    }
    ThetaP { theta, p_offdiag: p, p_diag }
}

fn inputs() -> impl Strategy<Value = (CartanSuperdatum, Vec<bool>, Vec<(bool, i64, i64)>)> {
    (
        prop::sample::select(vec!["A1", "A1odd", "A2", "B2", "B2odd", "A1affine"]),
        prop::collection::vec(any::<bool>(), 8),
        prop::collection::vec((any::<bool>(), 0i64..2, -4i64..=4), 1..4),
    )
        .prop_map(|(n, s, f)| (datum(n).unwrap(), s, f))
}

proptest! {
    #[test]
    fn derived_tilde_families_satisfy_their_identities((d, signs, free) in inputs()) {
        let tp = family(&d, &signs, &free);
        prop_assert!(check_pt(&tp, &d).is_ok());
        let t = derive_tilde(&tp).unwrap();
        prop_assert!(check_ttp(&t, &d).is_ok());
        let back = lift_tilde(&t, &d).unwrap();
        prop_assert!(check_pt(&back, &d).is_ok());
        prop_assert!(same_gauge_class_tilde(&derive_tilde(&back).unwrap(), &t));
    }

    #[test]
    fn broken_cross_identity_is_rejected((d, signs, free) in inputs()) {
        prop_assume!(d.rank > 1);
        let mut tp = family(&d, &signs, &free);
        tp.theta[1][0] = tp.theta[1][0].mul(&Lsp::q_pow(2));
        prop_assert!(check_pt(&tp, &d).is_err());
    }
}

#[test]
fn presets_on_every_datum() {
    for dn in ["A1", "A1odd", "A2", "B2", "B2odd", "A1affine"] {
        let d = datum(dn).unwrap();
        for pn in PARAM_PRESETS {
            let f = preset(pn, &d).unwrap();
            f.validate(&d).unwrap_or_else(|e| panic!("{pn} on {dn}: {e}"));
            let t = f.tilde().unwrap();
            check_ttp(&t, &d).unwrap();
            let lifted = f.theta_p(&d).unwrap();
            let relifted = lift_tilde(&t, &d).unwrap();
            assert!(same_gauge_class_tilde(&derive_tilde(&lifted).unwrap(), &derive_tilde(&relifted).unwrap()), "{pn} on {dn}");
        }
    }
}
