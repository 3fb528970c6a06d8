//! The end-to-end verification suite shared by `verify all` and the acceptance target.

use crate::cartan::{self, qplus_up_to_height, CartanSuperdatum, Weight};
use crate::coeffs::{bino_identity_generic, LaurentPi, RatFuncPi};
use crate::error::Result;
use crate::highest::casimir::casimir_build;
use crate::highest::character::{nilpotency_check, weyl_kac_char};
use crate::highest::gauge::gauge_transform;
use crate::highest::{build_hw, HWModule, VermaContext};
use crate::params::{self, lift_tilde};
use crate::perfect::{from_verma, recognition_check, BasisKind, HVector};
use crate::qhs::verify::{associativity_fuzz, b_checks, relation_closure};
use crate::qhs::{QParams, Rewriter};
use crate::ring::Ring;
use crate::uminus::Boson;
use serde::Serialize;
use serde_json::{json, Map, Value};

pub const CHECK_NAMES: [&str; 11] = [
    "q-binomial identity",
    "U- character",
    "Serre radical",
    "irreducible characters",
    "super-commutation",
    "divided powers",
    "Casimir",
    "gauge equivalence",
    "quiver Hecke rewriter",
    "strong perfect basis",
    "nilpotency",
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub id: usize,
    pub name: &'static str,
    pub ok: bool,
    pub failure: Option<String>,
    pub detail: Value,
}

#[derive(Clone, Debug, Default)]
pub struct Verdict {
    pub failure: Option<String>,
    pub detail: Value,
}

impl Verdict {
    fn pass(detail: Value) -> Self {
        Verdict { failure: None, detail }
    }

    fn fail(msg: impl Into<String>, detail: Value) -> Self {
        Verdict { failure: Some(msg.into()), detail }
    }
}

/// Wraps a check result; library errors count as failures of that check.
pub fn report(id: usize, r: Result<Verdict>) -> CheckReport {
    let (failure, detail) = match r {
        Ok(v) => (v.failure, v.detail),
        Err(e) => (Some(e.to_string()), Value::Null),
    };
    CheckReport { id, name: CHECK_NAMES[id - 1], ok: failure.is_none(), failure, detail }
}

/// A highest-weight module `V(Λ)` truncated at height `cutoff`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModuleCase {
    pub datum: String,
    pub lambda: Vec<i64>,
    pub cutoff: usize,
}

impl ModuleCase {
    pub fn new(datum: &str, lambda: &[i64], cutoff: usize) -> Self {
        ModuleCase { datum: datum.into(), lambda: lambda.to_vec(), cutoff }
    }

    fn label(&self) -> String {
        format!("{} Λ={:?} h≤{}", self.datum, self.lambda, self.cutoff)
    }

    fn context(&self, family: &str) -> Result<VermaContext> {
        let d = cartan::preset(&self.datum)?;
        let fam = params::preset(family, &d)?;
        VermaContext::new(&d, &fam, &Weight(self.lambda.clone()))
    }

    fn module(&self) -> Result<HWModule> {
        build_hw(&self.context("Uqsg")?, self.cutoff)
    }
}

fn key(beta: &[i64]) -> String {
    beta.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn uqsg_boson(d: &CartanSuperdatum) -> Result<Boson> {
    Boson::new(d, &params::preset("Uqsg", d)?)
}

pub fn binomial(max_n: u32) -> Result<Verdict> {
    let bad: Vec<u32> = (0..=max_n).filter(|&n| !bino_identity_generic(n)).collect();
    let detail = json!({ "max_n": max_n });
    Ok(match bad.first() {
        None => Verdict::pass(detail),
        Some(n) => Verdict::fail(format!("identity fails at n={n}"), detail),
    })
}

/// Gram ranks of `U⁻_{-β}` against the product formula, every `β` up to `max_height`.
pub fn uminus_characters(presets: &[&str], max_height: usize) -> Result<Verdict> {
    let mut detail = Map::new();
    for name in presets {
        let d = cartan::preset(name)?;
        let b = uqsg_boson(&d)?;
        let mut dims = Map::new();
        for beta in qplus_up_to_height(d.rank, max_height) {
            let r = b.weight_dim(&beta)?;
            dims.insert(key(&beta), json!(r));
        }
        detail.insert(name.to_string(), Value::Object(dims));
    }
    Ok(Verdict::pass(Value::Object(detail)))
}

pub fn serre_radical(presets: &[&str]) -> Result<Verdict> {
    let mut pairs = 0;
    for name in presets {
        let d = cartan::preset(name)?;
        let b = uqsg_boson(&d)?;
        for i in 0..d.rank {
            for j in (0..d.rank).filter(|&j| j != i) {
                if !b.serre_in_radical(i, j)? {
                    return Ok(Verdict::fail(format!("{name}: S_{i}{j} pairs nontrivially"), json!({})));
                }
                pairs += 1;
            }
        }
    }
    Ok(Verdict::pass(json!({ "pairs": pairs })))
}

/// Verma Gram ranks against the Weyl–Kac formula on every block of each case.
pub fn irreducible_characters(cases: &[ModuleCase]) -> Result<Verdict> {
    let mut detail = Vec::new();
    for c in cases {
        let ctx = c.context("Uqsg")?;
        let ch = weyl_kac_char(&ctx.datum, &Weight(c.lambda.clone()), c.cutoff)?;
        let mut dims = Map::new();
        let mut total = 0;
        for (beta, &m) in &ch {
            let r = ctx.irr_weight_dim(beta)?;
            if r as i64 != m {
                return Ok(Verdict::fail(format!("{}: rank {r} but character {m} at {beta:?}", c.label()), json!(detail)));
            }
            if r > 0 {
                dims.insert(key(beta), json!(r));
            }
            total += r;
        }
        detail.push(json!({ "case": c, "total": total, "dims": dims }));
    }
    Ok(Verdict::pass(json!(detail)))
}

/// The E/F relation on interior blocks, with a sign-flipped coefficient as negative control.
pub fn supercommutation(cases: &[ModuleCase]) -> Result<Verdict> {
    let mut caught = 0;
    for c in cases {
        let hw = c.module()?;
        let out = hw.check_ef()?;
        if !out.ok {
            return Ok(Verdict::fail(format!("{}: {}", c.label(), out.failure.unwrap_or_default()), json!({})));
        }
        let flipped = hw.check_ef_with(|i, j| hw.commutation_coeff(i, j).neg())?;
        let nontrivial = hw.dims().iter().any(|(b, &d)| d > 0 && hw.interior(b) && b.iter().any(|&x| x > 0));
        if flipped.ok && nontrivial {
            return Ok(Verdict::fail(format!("{}: sign-flipped relation was not detected", c.label()), json!({})));
        }
        caught += usize::from(!flipped.ok);
    }
    if caught == 0 {
        return Ok(Verdict::fail("the negative control never fired", json!({})));
    }
    Ok(Verdict::pass(json!({ "modules": cases.len(), "controls_caught": caught })))
}

pub fn divided_powers(cases: &[ModuleCase], max: u32) -> Result<Verdict> {
    let mut count = 0;
    for c in cases {
        let hw = c.module()?;
        for i in 0..hw.datum.rank {
            for n in 0..=max {
                for m in 0..=max {
                    let out = hw.check_divided_powers(n, m, i)?;
                    if !out.ok {
                        return Ok(Verdict::fail(format!("{} n={n} m={m} i={i}: {}", c.label(), out.failure.unwrap_or_default()), json!({})));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(Verdict::pass(json!({ "identities": count })))
}

/// Normalized `Ω̂ = id` and commutation with `E_i`, `F_i`, in the bold family.
pub fn casimir(cases: &[ModuleCase]) -> Result<Verdict> {
    let mut detail = Vec::new();
    for c in cases {
        let d = cartan::preset(&c.datum)?;
        let tp = params::preset("boldU", &d)?.theta_p(&d)?;
        let ctx = casimir_build(&d, &tp, &Weight(c.lambda.clone()), c.cutoff)?;
        let out = ctx.check()?;
        if !out.ok {
            return Ok(Verdict::fail(format!("{}: {}", c.label(), out.failure.unwrap_or_default()), json!(detail)));
        }
        detail.push(json!({ "case": c, "absolute_exponent": ctx.absolute_exponent.to_string() }));
    }
    Ok(Verdict::pass(json!(detail)))
}

/// Uqsg modules carried to the bold and BKM families keep their dimensions and relations.
pub fn gauge(cases: &[ModuleCase]) -> Result<Verdict> {
    let mut moved = 0;
    for c in cases {
        let ctx = c.context("Uqsg")?;
        let fam = params::preset("Uqsg", &ctx.datum)?;
        let hw = build_hw(&ctx, c.cutoff)?.to_f_form(&lift_tilde(&fam.tilde()?, &ctx.datum)?)?;
        for target in ["boldU", "BKM"] {
            let to = params::preset(target, &ctx.datum)?.theta_p(&ctx.datum)?;
            let out = gauge_transform(&hw, &to)?;
            if out.dims() != hw.dims() {
                return Ok(Verdict::fail(format!("{} -> {target}: dimensions changed", c.label()), json!({})));
            }
            let rel = out.check_ef()?;
            if !rel.ok {
                return Ok(Verdict::fail(format!("{} -> {target}: {}", c.label(), rel.failure.unwrap_or_default()), json!({})));
            }
            moved += 1;
        }
    }
    Ok(Verdict::pass(json!({ "transports": moved })))
}

/// Relation closure for `n ≤ 3`, `fuzz` associativity triples and the `b(iⁿ)` checks for `n ≤ 4`.
pub fn quiver_hecke(presets: &[&str], fuzz: usize, seed: u64) -> Result<Verdict> {
    let mut detail = Map::new();
    let runs = 2 * presets.len().max(1);
    let mut done = 0;
    for (k, name) in presets.iter().enumerate() {
        let d = cartan::preset(name)?;
        let params = QParams::preset(&d)?;
        for n in 1..=3 {
            let out = relation_closure(&Rewriter::new(params.clone(), n)?)?;
            if let Some(f) = out.failure {
                return Ok(Verdict::fail(format!("{name} n={n}: {f}"), json!({})));
            }
        }
        for (r, (n, len)) in [(3, 4), (4, 3)].into_iter().enumerate() {
            let slot = 2 * k + r;
            let cases = fuzz * (slot + 1) / runs - fuzz * slot / runs;
            let out = associativity_fuzz(&Rewriter::new(params.clone(), n)?, cases, seed.wrapping_add(slot as u64), len)?;
            if let Some(f) = out.failure {
                return Ok(Verdict::fail(format!("{name} n={n}: {f}"), json!({})));
            }
            done += cases;
        }
        for n in 1..=4 {
            let rw = Rewriter::new(params.clone(), n)?;
            for i in 0..d.rank {
                let out = b_checks(&rw, i)?;
                if let Some(f) = out.failure {
                    return Ok(Verdict::fail(format!("{name} n={n} i={i}: {f}"), json!({})));
                }
            }
        }
        detail.insert(name.to_string(), json!({ "odd_index": d.parity.contains(&1) }));
    }
    detail.insert("associativity_cases".into(), json!(done));
    Ok(Verdict::pass(Value::Object(detail)))
}

fn scaled(v: &HVector, c: &RatFuncPi) -> HVector {
    HVector { beta: v.beta.clone(), coords: v.coords.iter().map(|x| x.mul(c)).collect() }
}

fn inverse_of(x: LaurentPi) -> Result<RatFuncPi> {
    crate::perfect::rdiv(&RatFuncPi::one(), &RatFuncPi::from_laurent(&x))
}

/// Strong perfect certificates on the dual divided-power basis, recognition on the
/// divided-power lattice, and three mutations that recognition must reject.
pub fn strong_perfect(cases: &[ModuleCase]) -> Result<Verdict> {
    let mut detail = Vec::new();
    let one = LaurentPi::one();
    for c in cases {
        let ctx = c.context("Uqsg")?;
        let m = from_verma(&ctx, c.cutoff, BasisKind::DualDivided)?;
        let rep = m.check_strong()?;
        if rep.strong != Some(true) {
            return Ok(Verdict::fail(format!("{}: {}", c.label(), rep.failures.join("; ")), json!(detail)));
        }
        let lattice = from_verma(&ctx, c.cutoff, BasisKind::DividedWords)?.basis;
        let rec = recognition_check(&m, &lattice)?;
        if !rec.ok {
            return Ok(Verdict::fail(format!("{}: recognition failed: {}", c.label(), rec.witness.unwrap_or_default()), json!(detail)));
        }
        let mut mutants: Vec<(&str, _, Vec<HVector>)> = Vec::new();
        let last = m.basis.len() - 1;
        if lattice.len() > 1 {
            let mut bad = lattice.clone();
            bad[1] = scaled(&bad[1], &inverse_of(LaurentPi::from_int(2).add(&LaurentPi::q_pow(1)))?);
            mutants.push(("lattice generator divided by 2+q", m.clone(), bad));
        }
        let mut weak = m.clone();
        weak.basis[last] = scaled(&weak.basis[last], &RatFuncPi::from_laurent(&one.add(&LaurentPi::q_pow(1))));
        mutants.push(("basis vector times 1+q", weak, lattice.clone()));
        let mut top = lattice.clone();
        top[0] = scaled(&top[0], &inverse_of(one.add(&LaurentPi::q_pow(1)))?);
        mutants.push(("highest generator divided by 1+q", m.clone(), top));
        for (what, bm, gens) in &mutants {
            if recognition_check(bm, gens)?.ok {
                return Ok(Verdict::fail(format!("{}: mutation '{what}' was accepted", c.label()), json!(detail)));
            }
        }
        let certs: Vec<Value> = rep
            .entries
            .iter()
            .filter_map(|e| e.certificate.map(|z| json!({ "b": e.b, "i": e.i, "epsilon": e.epsilon, "sign": z.sign, "pi": z.pi, "q": z.m })))
            .collect();
        detail.push(json!({ "case": c, "certificates": certs, "mutations_rejected": mutants.len() }));
    }
    Ok(Verdict::pass(json!(detail)))
}

pub fn nilpotency(cases: &[ModuleCase]) -> Result<Verdict> {
    for c in cases {
        if !nilpotency_check(&c.module()?) {
            return Ok(Verdict::fail(format!("{}: a block beyond the bound is nonzero", c.label()), json!({})));
        }
    }
    Ok(Verdict::pass(json!({ "modules": cases.len() })))
}

/// Settings for a suite run restricted to one preset.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub preset: String,
    pub cutoff: usize,
    pub fuzz: usize,
    pub seed: u64,
}

/// Every check, instantiated on one Cartan preset.
pub fn preset_suite(cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let d = cartan::preset(&cfg.preset)?;
    let name = cfg.preset.as_str();
    let h = cfg.cutoff;
    let rho: Vec<i64> = d.rho.clone();
    let lambdas: Vec<Vec<i64>> = if d.rank == 1 { (0..=3).map(|k| vec![k]).collect() } else { vec![rho.clone()] };
    let cases: Vec<ModuleCase> = lambdas.iter().map(|l| ModuleCase::new(name, l, h)).collect();
    let rank_one: Vec<ModuleCase> = if d.rank == 1 { vec![ModuleCase::new(name, &[2], h.min(4))] } else { vec![ModuleCase::new(name, &rho, h.min(4))] };
    let fuzz_presets = [name];
    Ok(vec![
        report(1, binomial(8)),
        report(2, uminus_characters(&[name], h)),
        report(3, serre_radical(&[name])),
        report(4, irreducible_characters(&cases)),
        report(5, supercommutation(&cases)),
        report(6, divided_powers(&cases, 3)),
        report(7, casimir(&cases)),
        report(8, gauge(&cases)),
        report(9, quiver_hecke(&fuzz_presets, cfg.fuzz, cfg.seed)),
        report(10, strong_perfect(&rank_one)),
        report(11, nilpotency(&cases)),
    ])
}
