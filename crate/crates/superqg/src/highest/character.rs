use super::HWModule;
use crate::cartan::{height, kostant_series, qplus_up_to_height, CartanSuperdatum, RootVec, Weight};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Weyl–Kac character of `V(Λ)` through height `cutoff`, keyed by `β` for the weight `Λ - β`.
pub fn weyl_kac_char(datum: &CartanSuperdatum, lambda: &Weight, cutoff: usize) -> Result<BTreeMap<RootVec, i64>> {
    if !datum.is_dominant(lambda) {
        return Err(Error::Domain("Weyl–Kac needs a dominant weight".into()));
    }
    let n = datum.rank;
    let roots = datum.positive_roots(cutoff)?;
    let kost = kostant_series(&roots, &vec![cutoff as i64; n]);
    let lr = lambda.add(&Weight(datum.rho.clone()));
    let mut shifts: Vec<(RootVec, i64)> = Vec::new();
    for w in datum.weyl_group(cutoff) {
        let diff = lr.sub(&datum.act(&w, &lr));
        let beta = datum
            .weight_to_root(&diff)
            .ok_or_else(|| Error::Inconsistent("Λ+ρ - w(Λ+ρ) is not in the root lattice".into()))?;
        if height(&beta) as usize <= cutoff {
            shifts.push((beta, i64::from(w.sign)));
        }
    }
    let mut out = BTreeMap::new();
    for beta in qplus_up_to_height(n, cutoff) {
        let mut c = 0;
        for (bw, s) in &shifts {
            let rest: RootVec = beta.iter().zip(bw).map(|(a, b)| a - b).collect();
            if rest.iter().all(|&x| x >= 0) {
                c += s * kost.get(&rest).copied().unwrap_or(0);
            }
        }
        if c < 0 {
            return Err(Error::Inconsistent(format!("negative multiplicity {c} at {beta:?}")));
        }
        out.insert(beta, c);
    }
    Ok(out)
}

/// `dim V(Λ)_{Λ-β-kα_i} = 0` once `k > ⟨h_i,Λ⟩ + ht(β)·max_j(-a_ij)`, whenever that block is in range.
pub fn nilpotency_check(hw: &HWModule) -> bool {
    let d = &hw.datum;
    let dims = hw.dims();
    dims.keys().all(|beta| {
        (0..d.rank).all(|i| {
            let spread = (0..d.rank).map(|j| -d.a[i][j]).max().unwrap_or(0).max(0);
            let k0 = d.pairing(i, &hw.lambda) + height(beta) * spread + 1;
            (k0.max(1)..).map_while(|k| {
                let mut b = beta.clone();
                b[i] += k;
                dims.get(&b).copied()
            })
            .all(|x| x == 0)
        })
    })
}
