use serde_json::Value;
use std::process::ExitCode;
use std::time::{Duration, Instant};
use superqg::suite::{self, report, CheckReport, ModuleCase};

fn m(d: &str, l: &[i64], h: usize) -> ModuleCase {
    ModuleCase::new(d, l, h)
}

/// The preset modules every relation-level criterion runs over.
fn preset_modules() -> Vec<ModuleCase> {
    let mut out = Vec::new();
    for k in 0..=3 {
        out.push(m("A1", &[k], 5));
        out.push(m("A1odd", &[k], 5));
    }
    out.extend([
        m("A1odd", &[4], 5),
        m("A2", &[1, 0], 4),
        m("A2", &[1, 1], 4),
        m("B2", &[1, 0], 4),
        m("B2", &[0, 1], 4),
        m("B2", &[1, 1], 3),
        m("B2odd", &[1, 1], 3),
        m("A1affine", &[1, 1, 0], 3),
    ]);
    out
}

/// Total dimension 8 and multiplicity 2 at `α₁+α₂` for the A2 adjoint.
fn adjoint_shape(detail: &Value) -> Option<String> {
    let adj = detail.as_array()?.iter().find(|c| c["case"]["datum"] == "A2")?;
    let (total, mid) = (adj["total"].as_u64()?, adj["dims"]["1,1"].as_u64()?);
    (total != 8 || mid != 2).then(|| format!("A2 adjoint has total {total}, multiplicity {mid} at (1,1)"))
}

fn timed(budget: Option<Duration>, f: impl FnOnce() -> CheckReport) -> (CheckReport, Duration, Option<Duration>) {
    let t = Instant::now();
    let r = f();
    (r, t.elapsed(), budget)
}

fn main() -> ExitCode {
    let rank_one: Vec<ModuleCase> = (0..=3).flat_map(|k| [m("A1", &[k], 7), m("A1odd", &[k], 7)]).collect();
    let mut irr: Vec<ModuleCase> = (1..=4).map(|n| m("A1odd", &[n], 6)).collect();
    irr.extend([m("A2", &[1, 1], 6), m("B2", &[1, 0], 6)]);
    let mut casimir: Vec<ModuleCase> = (0..=3).flat_map(|k| [m("A1", &[k], 4), m("A1odd", &[k], 4)]).collect();
    casimir.push(m("A2", &[1, 1], 4));
    let gauge = vec![m("A1odd", &[2], 4), m("A1", &[3], 4), m("A2", &[1, 1], 3), m("B2", &[1, 1], 3), m("B2odd", &[1, 1], 3)];
    let perfect: Vec<ModuleCase> = vec![m("A1", &[3], 4), m("A1", &[1], 2), m("A1odd", &[2], 3), m("A1odd", &[3], 4), m("A1odd", &[4], 5)];
    let nil: Vec<ModuleCase> = ["A1", "A1odd"]
        .iter()
        .flat_map(|d| [m(d, &[1], 5), m(d, &[2], 5)])
        .chain([m("A2", &[1, 1], 5), m("B2", &[1, 1], 4), m("B2odd", &[1, 1], 4), m("A1affine", &[1, 1, 0], 4)])
        .collect();

    let secs = |s| Some(Duration::from_secs(s));
    let runs = vec![
        timed(secs(1), || report(1, suite::binomial(8))),
        timed(secs(60), || report(2, suite::uminus_characters(&["A1", "A1odd", "A2", "B2"], 6))),
        timed(None, || report(3, suite::serre_radical(&["A2", "B2"]))),
        timed(None, || {
            let mut r = report(4, suite::irreducible_characters(&irr));
            if let Some(msg) = r.ok.then(|| adjoint_shape(&r.detail)).flatten() {
                r.ok = false;
                r.failure = Some(msg);
            }
            r
        }),
        timed(None, || report(5, suite::supercommutation(&preset_modules()))),
        timed(None, || report(6, suite::divided_powers(&rank_one, 3))),
        timed(None, || report(7, suite::casimir(&casimir))),
        timed(None, || report(8, suite::gauge(&gauge))),
        timed(secs(300), || report(9, suite::quiver_hecke(&["A2", "B2odd"], 10_000, 0x5eed))),
        timed(None, || report(10, suite::strong_perfect(&perfect))),
        timed(None, || report(11, suite::nilpotency(&nil))),
    ];

    let mut failed = 0;
    for (r, took, budget) in runs {
        let slow = budget.is_some_and(|b| took > b);
        let ok = r.ok && !slow;
        failed += usize::from(!ok);
        let mut line = format!("{} criterion {:>2} {} ({:.2}s)", if ok { "PASS" } else { "FAIL" }, r.id, r.name, took.as_secs_f64());
        if let Some(f) = &r.failure {
            line.push_str(&format!(": {f}"));
        }
        if slow {
            line.push_str(&format!(": exceeded {}s budget", budget.unwrap().as_secs()));
        }
        println!("{line}");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
