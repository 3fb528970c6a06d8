use crate::config::{CliError, CliResult, RunConfig};
use crate::{Basis, CartanCmd, HwCmd, Output, PerfectCmd, QhsCmd, UminusCmd, VerifyCmd};
use serde_json::{json, Map, Value};
use superqg::cartan::{qplus_up_to_height, CartanSuperdatum};
use superqg::highest::casimir::casimir_build;
use superqg::highest::character::{nilpotency_check, weyl_kac_char};
use superqg::highest::gauge::gauge_transform;
use superqg::highest::{build_hw, Presentation, VermaContext};
use superqg::params::{self, lift_tilde};
use superqg::perfect::{from_verma, BasisKind};
use superqg::qhs::verify::{associativity_fuzz, b_checks, relation_closure};
use superqg::qhs::{graded_dim, Rewriter};
use superqg::suite::{preset_suite, SuiteConfig};
use superqg::uminus::Boson;

fn key(beta: &[i64]) -> String {
    beta.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

/// A `β ↦ value` table, rendered as a JSON object and as CSV rows.
fn table(rows: Vec<(Vec<i64>, Value)>, extra: Value) -> Output {
    let flat = rows.iter().map(|(b, v)| (key(b), v.to_string())).collect();
    let mut obj = Map::new();
    for (b, v) in rows {
        obj.insert(key(&b), v);
    }
    let mut json = extra;
    json["table"] = Value::Object(obj);
    Output { json, table: Some(flat), ok: true }
}

fn checks(list: Vec<(String, Option<String>)>, mut json: Value) -> Output {
    let ok = list.iter().all(|(_, f)| f.is_none());
    json["checks"] = list.into_iter().map(|(name, failure)| json!({ "check": name, "ok": failure.is_none(), "failure": failure })).collect();
    json["ok"] = json!(ok);
    Output { json, table: None, ok }
}

fn context(cfg: &RunConfig, d: &CartanSuperdatum) -> CliResult<VermaContext> {
    Ok(VermaContext::new(d, &cfg.family(d)?, &cfg.lambda(d)?)?)
}

pub fn cartan(cfg: &RunConfig, cmd: &CartanCmd) -> CliResult<Output> {
    let CartanCmd::Check = cmd;
    let d = match cfg.raw_datum()? {
        Ok(d) => d,
        Err(e) => {
            let json = json!({ "ok": false, "error": "invalid_datum", "message": e.to_string() });
            return Ok(Output { json, table: None, ok: false });
        }
    };
    let roots = d.positive_roots(cfg.cutoff)?;
    let list: Vec<Value> = roots.entries.iter().map(|(b, m)| json!({ "beta": b, "mult": m })).collect();
    let json = json!({
        "ok": true,
        "name": d.name,
        "rank": d.rank,
        "a": d.a,
        "d": d.d,
        "parity": d.parity,
        "c6": d.is_c6(),
        "positive_roots": list,
    });
    Ok(Output { json, table: None, ok: true })
}

pub fn uminus(cfg: &RunConfig, cmd: &UminusCmd) -> CliResult<Output> {
    let d = cfg.datum()?;
    let b = Boson::new(&d, &cfg.family(&d)?)?;
    match cmd {
        UminusCmd::Dim => {
            let mut rows = Vec::new();
            for beta in qplus_up_to_height(d.rank, cfg.cutoff) {
                let r = b.weight_dim(&beta)?;
                rows.push((beta, json!(r)));
            }
            Ok(table(rows, json!({ "datum": d.name, "cutoff": cfg.cutoff })))
        }
        UminusCmd::Gram { beta } => {
            if beta.len() != d.rank || beta.iter().any(|&x| x < 0) {
                return Err(CliError::Config(format!("--beta needs {} nonnegative entries", d.rank)));
            }
            let (words, m) = b.gram(beta);
            let rank = b.rank_of(&m)?;
            let matrix: Vec<Vec<String>> = (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect()).collect();
            let words: Vec<&Vec<usize>> = words.iter().map(|w| &w.0).collect();
            Ok(Output { json: json!({ "beta": beta, "words": words, "gram": matrix, "rank": rank }), table: None, ok: true })
        }
        UminusCmd::Serre => {
            let mut list = Vec::new();
            for i in 0..d.rank {
                for j in (0..d.rank).filter(|&j| j != i) {
                    let ok = b.serre_in_radical(i, j)?;
                    list.push((format!("S_{i}{j} in the radical"), (!ok).then(|| "pairs nontrivially".to_string())));
                }
            }
            if d.rank > 1 {
                for beta in qplus_up_to_height(d.rank, cfg.cutoff) {
                    let (corank, dim, inside) = b.radical_vs_serre(&beta)?;
                    let failure = (!inside || corank != dim).then(|| format!("corank {corank}, ideal span {dim}"));
                    list.push((format!("radical = Serre ideal at {}", key(&beta)), failure));
                }
            }
            Ok(checks(list, json!({ "datum": d.name })))
        }
    }
}

pub fn hw(cfg: &RunConfig, cmd: &HwCmd) -> CliResult<Output> {
    let d = cfg.datum()?;
    let lambda = cfg.lambda(&d)?;
    let extra = json!({ "datum": d.name, "lambda": lambda.0, "cutoff": cfg.cutoff });
    match cmd {
        HwCmd::Char => {
            let ch = weyl_kac_char(&d, &lambda, cfg.cutoff)?;
            Ok(table(ch.into_iter().map(|(b, m)| (b, json!(m))).collect(), extra))
        }
        HwCmd::Dims => {
            let ctx = context(cfg, &d)?;
            let mut rows = Vec::new();
            for beta in qplus_up_to_height(d.rank, cfg.cutoff) {
                let r = ctx.irr_weight_dim(&beta)?;
                rows.push((beta, json!(r)));
            }
            Ok(table(rows, extra))
        }
        HwCmd::Verify => {
            let hw = build_hw(&context(cfg, &d)?, cfg.cutoff)?;
            let mut list = vec![("highest weight relations".to_string(), hw.top_relations().failure)];
            list.push(("E/F relations on interior blocks".into(), hw.check_ef()?.failure));
            list.push(("nilpotency bound".into(), (!nilpotency_check(&hw)).then(|| "nonzero block beyond the bound".into())));
            if matches!(hw.presentation, Presentation::Tilde(_)) {
                for i in 0..d.rank {
                    for n in 1..=2 {
                        for m in 1..=2 {
                            list.push((format!("divided powers i={i} n={n} m={m}"), hw.check_divided_powers(n, m, i)?.failure));
                        }
                    }
                }
            }
            let dims: Map<String, Value> = hw.dims().into_iter().map(|(b, v)| (key(&b), json!(v))).collect();
            let mut json = extra;
            json["dims"] = Value::Object(dims);
            Ok(checks(list, json))
        }
        HwCmd::Casimir => {
            let tp = cfg.family_or(&d, "boldU")?.theta_p(&d)?;
            let ctx = casimir_build(&d, &tp, &lambda, cfg.cutoff)?;
            let mut json = extra;
            json["absolute_exponent"] = json!(ctx.absolute_exponent.to_string());
            Ok(checks(vec![("normalized Casimir is the identity and commutes with E, F".into(), ctx.check()?.failure)], json))
        }
        HwCmd::Gauge { to } => {
            let fam = cfg.family(&d)?;
            let ctx = VermaContext::new(&d, &fam, &lambda)?;
            let mut hw = build_hw(&ctx, cfg.cutoff)?;
            if matches!(hw.presentation, Presentation::Tilde(_)) {
                hw = hw.to_f_form(&lift_tilde(&fam.tilde()?, &d)?)?;
            }
            let target = params::preset(to, &d)?.theta_p(&d)?;
            let moved = gauge_transform(&hw, &target)?;
            let same = moved.dims() == hw.dims();
            let list = vec![
                ("weight dimensions unchanged".to_string(), (!same).then(|| "dimensions differ".to_string())),
                (format!("{to} relations"), moved.check_ef()?.failure),
            ];
            let mut json = extra;
            json["to"] = json!(to);
            Ok(checks(list, json))
        }
    }
}

pub fn qhs(cfg: &RunConfig, cmd: &QhsCmd) -> CliResult<Output> {
    let d = cfg.datum()?;
    match cmd {
        QhsCmd::Straighten { n, expr, qparams } => {
            let rw = Rewriter::new(cfg.qparams(&d, qparams.as_deref())?, *n)?;
            let x = rw.straighten(expr)?;
            Ok(Output { json: json!({ "n": n, "expr": expr, "terms": rw.view(&x) }), table: None, ok: true })
        }
        QhsCmd::Verify { n, qparams } => {
            let rw = Rewriter::new(cfg.qparams(&d, qparams.as_deref())?, *n)?;
            let mut list = vec![("relations close".to_string(), relation_closure(&rw)?.failure)];
            list.push((format!("associativity on {} triples", cfg.fuzz), associativity_fuzz(&rw, cfg.fuzz, cfg.seed, 4)?.failure));
            if *n <= 4 {
                for i in 0..d.rank {
                    list.push((format!("b(i^{n}) for i={i}"), b_checks(&rw, i)?.failure));
                }
            }
            Ok(checks(list, json!({ "datum": d.name, "n": n, "seed": cfg.seed })))
        }
        QhsCmd::Dim { beta, max_degree } => {
            let g = graded_dim(&d, beta, *max_degree)?;
            Ok(Output { json: json!({ "beta": beta, "max_degree": max_degree, "dim": g.to_string() }), table: None, ok: true })
        }
    }
}

pub fn perfect(cfg: &RunConfig, cmd: &PerfectCmd) -> CliResult<Output> {
    let PerfectCmd::Check { basis } = cmd;
    let d = cfg.datum()?;
    let kind = match basis {
        Basis::Words => BasisKind::Words,
        Basis::Divided => BasisKind::DividedWords,
        Basis::Dual => BasisKind::DualDivided,
    };
    let bm = from_verma(&context(cfg, &d)?, cfg.cutoff, kind)?;
    let rep = bm.check_perfect()?;
    let rep = if rep.perfect { bm.check_strong()? } else { rep };
    let ok = rep.perfect && (kind != BasisKind::DualDivided || rep.strong == Some(true));
    let json = json!({ "datum": d.name, "ok": ok, "report": rep });
    Ok(Output { json, table: None, ok })
}

pub fn verify(cfg: &RunConfig, cmd: &VerifyCmd) -> CliResult<Output> {
    let VerifyCmd::All = cmd;
    let preset = cfg.preset.clone().ok_or_else(|| CliError::Config("verify all needs --preset".into()))?;
    cfg.datum()?;
    let reports = preset_suite(&SuiteConfig { preset: preset.clone(), cutoff: cfg.cutoff, fuzz: cfg.fuzz, seed: cfg.seed })?;
    let ok = reports.iter().all(|r| r.ok);
    let json = json!({ "preset": preset, "cutoff": cfg.cutoff, "seed": cfg.seed, "ok": ok, "checks": reports });
    Ok(Output { json, table: None, ok })
}
