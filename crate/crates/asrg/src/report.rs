//! JSON report assembly.
//!
//! Every emitted report is a versioned envelope (`asrg-report/1`) with
//! the top-level keys `input`, `stats`, `spectrum`, `e_matrix`,
//! `bounds`, and `flags`. Floats are rounded to 12 significant digits
//! before serialization so that reports are byte-stable across runs;
//! exact rationals are serialized as `{num, den}` strings, never as
//! floats.

use serde_json::{json, Map, Value};

use crate::bounds::{BoundReport, SigmaFloor};
use crate::constructions::{CapGraphAudit, OrthogonalityReport, TowerLevelReport, TowerStepReport};
use crate::graph::AsrgStats;
use crate::spectral::{EMatrixReport, SpectrumReport};
use crate::{Rat, Real};

pub const SCHEMA: &str = "asrg-report/1";

/// Rounds to 12 significant decimal digits, the precision every float
/// in a report is serialized with.
pub fn round_sig(x: Real) -> Real {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("scientific notation roundtrip")
}

pub fn real(x: Real) -> Value {
    if x.is_finite() {
        json!(round_sig(x))
    } else {
        // JSON has no infinities; report them as strings.
        json!(x.to_string())
    }
}

pub fn rational(r: &Rat) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

/// The versioned envelope. Keys are serialized in sorted order, which
/// is deterministic.
pub fn envelope(
    input: Value,
    stats: Value,
    spectrum: Value,
    e_matrix: Value,
    bounds: Value,
    flags: Value,
) -> Value {
    json!({
        "schema": SCHEMA,
        "input": input,
        "stats": stats,
        "spectrum": spectrum,
        "e_matrix": e_matrix,
        "bounds": bounds,
        "flags": flags,
    })
}

pub fn stats_json(s: &AsrgStats) -> Value {
    json!({
        "v": s.v,
        "k": s.k,
        "lambda_mean": rational(&s.lambda_mean),
        "lambda_var": rational(&s.lambda_var),
        "mu_mean": rational(&s.mu_mean),
        "mu_var": rational(&s.mu_var),
        "sigma": real(s.sigma),
        "sigma_sq": rational(&s.sigma_sq()),
        "lambda_pairs": s.lambda_pairs as u64,
        "mu_pairs": s.mu_pairs as u64,
    })
}

pub fn spectrum_json(s: &SpectrumReport) -> Value {
    json!({
        "eigenvalues": s.eigenvalues.iter().map(|&u| real(u)).collect::<Vec<_>>(),
        "k_mult": s.k_mult,
        "connected": s.connected,
        "r": real(s.r),
        "s": real(s.s),
    })
}

pub fn e_matrix_json(e: &EMatrixReport) -> Value {
    json!({
        "lambda_mean": real(e.lambda_mean),
        "mu_mean": real(e.mu_mean),
        "records": e.records.iter().map(|rec| json!({
            "u": real(rec.u),
            "nu": real(rec.nu),
            "form": rec.form,
        })).collect::<Vec<_>>(),
        "trace_lhs": real(e.trace_lhs),
        "trace_rhs_exact": rational(&e.trace_rhs_exact),
        "bound_rhs": rational(&e.bound_rhs),
        "bound_holds": e.bound_holds,
    })
}

pub fn bound_json(b: &BoundReport) -> Value {
    let mut obj = Map::new();
    obj.insert("name".into(), json!(b.name));
    if let Some(mode) = b.mode {
        obj.insert("mode".into(), json!(mode));
    }
    obj.insert(
        "inputs".into(),
        Value::Object(b.inputs.iter().map(|(k, v)| (k.clone(), real(*v))).collect()),
    );
    obj.insert(
        "expressions".into(),
        Value::Object(b.expressions.iter().map(|(k, v)| (k.clone(), real(*v))).collect()),
    );
    obj.insert("satisfied".into(), json!(b.satisfied));
    obj.insert("margin".into(), real(b.margin));
    if !b.notes.is_empty() {
        obj.insert("notes".into(), json!(b.notes));
    }
    Value::Object(obj)
}

pub fn sigma_floor_json(f: &SigmaFloor) -> Value {
    json!({
        "floor": real(f.floor),
        "hypothesis_ratios": Value::Object(
            f.hypothesis_ratios.iter().map(|(k, v)| (k.clone(), real(*v))).collect(),
        ),
    })
}

pub fn scan_json(r: &crate::bounds::ScanReport) -> Value {
    let log_val = |v: &crate::bounds::scan::LogVal| {
        json!({ "sign": v.sign, "log10": real(v.log10) })
    };
    let opt_log_val = |v: &Option<crate::bounds::scan::LogVal>| match v {
        Some(v) => log_val(v),
        None => Value::Null,
    };
    json!({
        "samples": r.samples.iter().map(|&x| real(x)).collect::<Vec<_>>(),
        "rows": r.rows.iter().map(|row| json!({
            "x": real(row.x),
            "v": log_val(&row.v),
            "k": log_val(&row.k),
            "lambda": log_val(&row.lambda),
            "mu": log_val(&row.mu),
            "sigma": opt_log_val(&row.sigma),
            "r": log_val(&row.r),
            "s": log_val(&row.s),
            "f": log_val(&row.f),
            "g": log_val(&row.g),
            "checks": row.checks.iter().map(|c| json!({
                "name": c.name.to_string(),
                "expressions": Value::Object(
                    c.expressions.iter().map(|(k, v)| (k.clone(), opt_log_val(v))).collect(),
                ),
                "satisfied": c.satisfied,
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "verdicts": Value::Object(
            r.verdicts.iter().map(|(c, v)| (c.to_string(), json!(v.to_string()))).collect(),
        ),
    })
}

fn range_json(r: Option<(usize, usize)>) -> Value {
    match r {
        Some((lo, hi)) => json!([lo, hi]),
        None => Value::Null,
    }
}

pub fn orthogonality_json(r: &OrthogonalityReport) -> Value {
    let f = &r.formula;
    json!({
        "vector_dim": f.vector_dim,
        "q": f.q,
        "epsilon": f.epsilon,
        "gamma": f.gamma,
        "m": f.m,
        "formula": {
            "v": f.v,
            "k": f.k,
            "lambda": f.lambda,
            "mu": f.mu,
            "mu_range": f.mu_range.map(|(a, b)| json!([a, b])),
            "mu_srg_regime": f.mu_srg_regime,
        },
        "measured": {
            "v": r.measured_v,
            "k": r.measured_k,
            "lambda_range": range_json(r.lambda_observed),
            "mu_range": range_json(r.mu_observed),
        },
        "classification": r.classification,
        "stats": r.stats.as_ref().map(stats_json),
        "flags": {
            "v_match": r.v_match,
            "k_match": r.k_match,
            "lambda_match": r.lambda_match,
            "mu_match": r.mu_match,
            "mu_in_range": r.mu_in_range,
            "all_match": r.all_match(),
        },
    })
}

pub fn cap_audit_json(a: &CapGraphAudit) -> Value {
    json!({
        "t": a.t,
        "q": a.q,
        "proj_dim": a.proj_dim,
        "formula": { "v": a.formula_v, "k": a.formula_k, "lambda": a.formula_lambda },
        "measured": {
            "v": a.measured_v,
            "k": a.measured_k,
            "lambda_range": range_json(a.lambda_observed),
        },
        "pairs_checked": a.pairs_checked,
        "identity_holds": a.identity_holds,
        "mu_var": rational(&a.mu_var),
        "four_var_h": rational(&a.four_var_h),
        "var_match": a.var_match,
        "stats": stats_json(&a.stats),
        "all_match": a.all_match,
    })
}

pub fn tower_step_json(t: &TowerStepReport) -> Value {
    json!({
        "n": t.n,
        "q": t.q,
        "epsilon": t.epsilon,
        "target_n": t.target_n,
        "target_epsilon": t.target_epsilon,
        "subgraph_order": t.subgraph_order,
        "target_order": t.target_order,
        "order_match": t.order_match,
        "subgraph_degrees": t.subgraph_degrees,
        "target_degrees": t.target_degrees,
        "degree_match": t.degree_match,
        "spectrum_gap": t.spectrum_gap.map(real),
        "cospectral": t.cospectral,
        "target_formula_k": t.target_formula_k,
        "formula_k_match": t.formula_k_match,
        "mismatch": t.mismatch,
    })
}

pub fn tower_level_json(t: &TowerLevelReport) -> Value {
    json!({
        "m": t.m,
        "i": t.i,
        "clique": t.clique,
        "v_i": t.v_i,
        "degree_mean": real(t.degree_mean),
        "degree_min": t.degree_min,
        "degree_max": t.degree_max,
        "regular": t.regular,
        "stats": t.stats.as_ref().map(stats_json),
        "r_i": t.r_i.map(real),
        "s_i": t.s_i.map(real),
        "degree_decay_ratio": real(t.degree_decay_ratio),
        "density": real(t.density),
        "eigenvalue_gap_ratio": t.eigenvalue_gap_ratio.map(real),
        "clique_free_ratio": t.clique_free_ratio.map(real),
        "sigma_floor": real(t.sigma_floor),
        "sigma_ratio": t.sigma_ratio.map(real),
        "lambda_max": t.lambda_max,
        "triangle_free": t.triangle_free,
    })
}

/// Deterministic pretty serialization of a report.
pub fn to_string_pretty(v: &Value) -> String {
    let mut out = serde_json::to_string_pretty(v).expect("report serialization");
    out.push('\n');
    out
}
