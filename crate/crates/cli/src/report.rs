//! Text and JSON rendering.

use std::fmt::Write as _;

use coexist::conditions::{ConditionVerdict, InfBranchReport, PairReport};
use coexist::{OracleOutcome, OracleParams};
use serde_json::{json, Value};

fn verdict_json(v: &ConditionVerdict) -> Value {
    json!({
        "condition": v.condition.name(),
        "status": v.status.to_string(),
        "branch": v.branch.map(|b| b.label()),
        "margin": v.margin,
        "witnesses": v.witnesses.iter().map(|w| json!({"label": w.label, "value": w.value})).collect::<Vec<_>>(),
    })
}

fn branch_json(b: &InfBranchReport) -> Value {
    json!({
        "branch": b.branch.label(),
        "infimum_exists": b.infimum_exists,
        "inequality_min": b.inequality_min,
    })
}

pub fn oracle_json(o: &OracleOutcome, params: &OracleParams) -> Value {
    json!({
        "kind": o.kind.name(),
        "residual": o.residual,
        "iterations": o.iterations,
        "restart": o.restart,
        "residual_increases": o.residual_increases,
        "feas_tol": params.feas_tol,
        "infeas_tol": params.infeas_tol,
    })
}

pub fn pair_json(report: &PairReport, params: &OracleParams) -> Value {
    json!({
        "tol": report.tol,
        "verdicts": report.verdicts.iter().map(verdict_json).collect::<Vec<_>>(),
        "inf_branches": report.inf_branches.iter().map(branch_json).collect::<Vec<_>>(),
        "implications": report.implications.iter().map(|i| json!({
            "premise": i.premise.name(),
            "conclusion": i.conclusion.name(),
            "consistent": i.consistent,
        })).collect::<Vec<_>>(),
        "consistent": report.consistent(),
        "oracle": report.oracle.as_ref().map(|o| oracle_json(o, params)),
    })
}

fn value(x: f64) -> String {
    if x.is_nan() {
        "n/a".into()
    } else {
        format!("{x:.3e}")
    }
}

pub fn verdict_text(out: &mut String, v: &ConditionVerdict) {
    let branch = v.branch.map(|b| format!(" via {}", b.label())).unwrap_or_default();
    let _ = writeln!(out, "{:<5} {}{branch}", v.condition.name(), v.status);
    for w in &v.witnesses {
        let _ = writeln!(out, "      {:<22} {}", w.label, value(w.value));
    }
}

pub fn oracle_text(out: &mut String, o: &OracleOutcome) {
    let _ = writeln!(
        out,
        "oracle: {} (residual {:.3e}, {} cycles from start {})",
        o.kind.name(),
        o.residual,
        o.iterations,
        o.restart
    );
}

pub fn pair_text(report: &PairReport) -> String {
    let mut out = String::new();
    for v in &report.verdicts {
        verdict_text(&mut out, v);
    }
    out.push_str("INF branches:\n");
    for b in &report.inf_branches {
        let detail = match (b.infimum_exists, b.inequality_min) {
            (true, Some(m)) => format!("infimum exists, inequality min {}", value(m)),
            _ => "infimum absent".into(),
        };
        let _ = writeln!(out, "      {:<10} {detail}", b.branch.label());
    }
    let implications: Vec<String> = report
        .implications
        .iter()
        .map(|i| {
            let mark = if i.consistent { "ok" } else { "VIOLATED" };
            format!("{}⇒{} {mark}", i.premise.name(), i.conclusion.name())
        })
        .collect();
    let _ = writeln!(out, "implications: {}", implications.join(", "));
    if let Some(o) = &report.oracle {
        oracle_text(&mut out, o);
    }
    out
}
