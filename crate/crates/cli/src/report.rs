//! The report envelope printed by every command, and JSON forms of exact
//! values. Objects serialize with sorted keys and rationals as `"p/q"`
//! strings, so equal results give byte-identical text.

use serde_json::{json, Value};
use simplex_cover_core::bodies::{CheckValue, ConstantCheck, LemmaReport};
use simplex_cover_core::covering::{
    BoundReport, BoundaryCover, CoverageStatus, CoverageVerdict, DensityReport, IncidenceReport,
};
use simplex_cover_core::numeric::{rat_to_decimal, to_decimal, REPORT_DIGITS};
use simplex_cover_core::{QuadVal, Rat, Vec3};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    pub command: String,
    pub pass: bool,
    pub payload: Value,
}

impl Envelope {
    pub fn new(command: &str, pass: bool, payload: Value) -> Envelope {
        Envelope {
            command: command.to_string(),
            pass,
            payload,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "version": VERSION,
            "pass": self.pass,
            "payload": self.payload,
        })
    }

    pub fn render(&self) -> String {
        to_canonical_string(&self.to_json())
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn rat_json(r: &Rat) -> Value {
    Value::String(r.to_string())
}

pub fn quad_json(q: &QuadVal) -> Value {
    json!({ "a": q.a.to_string(), "b": q.b.to_string() })
}

pub fn vec_json(v: &Vec3) -> Value {
    json!([v.x.to_string(), v.y.to_string(), v.z.to_string()])
}

pub fn decimal(r: &Rat) -> Value {
    Value::String(rat_to_decimal(r, REPORT_DIGITS))
}

pub fn quad_decimal(q: &QuadVal) -> Value {
    Value::String(to_decimal(q, REPORT_DIGITS))
}

fn check_value_json(v: &CheckValue) -> Value {
    match v {
        CheckValue::Exact(r) => rat_json(r),
        CheckValue::Holds(b) => Value::Bool(*b),
    }
}

pub fn constants_payload(checks: &[ConstantCheck]) -> Value {
    let rows: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "expected": check_value_json(&c.expected),
                "computed": check_value_json(&c.computed),
                "pass": c.pass,
            })
        })
        .collect();
    json!({ "checks": rows })
}

pub fn lemma_payload(r: &LemmaReport, seed: u64) -> Value {
    let counterexample = match &r.first_counterexample {
        Some((trial, points)) => json!({
            "trial": trial,
            "points": points.iter().map(vec_json).collect::<Vec<_>>(),
        }),
        None => Value::Null,
    };
    json!({
        "lemma": r.lemma,
        "seed": seed,
        "trials": r.trials,
        "failures": r.failures,
        "first_counterexample": counterexample,
    })
}

pub fn density_payload(d: &DensityReport) -> Value {
    json!({
        "theta": rat_json(&d.theta),
        "theta_decimal": decimal(&d.theta),
        "translates": d.clipped_volumes.len(),
        "clipped_volumes": d.clipped_volumes.iter().map(rat_json).collect::<Vec<_>>(),
        "overlap_total": rat_json(&d.overlap_total),
    })
}

pub fn coverage_payload(v: &CoverageVerdict, max_depth: u32, witness_verified: Option<bool>) -> Value {
    let (status, witness) = match &v.status {
        CoverageStatus::Covered => ("covered", Value::Null),
        CoverageStatus::Uncovered(w) => ("uncovered", vec_json(w)),
        CoverageStatus::Inconclusive(_) => ("inconclusive", Value::Null),
    };
    json!({
        "status": status,
        "witness": witness,
        "witness_verified": witness_verified,
        "max_depth": max_depth,
        "boxes_tested": v.boxes_tested,
    })
}

pub fn incidence_payload(r: &IncidenceReport) -> Value {
    let boundary = match &r.boundary {
        BoundaryCover::Full => json!({ "status": "full" }),
        BoundaryCover::Gap(p) => json!({ "status": "gap", "point": vec_json(p) }),
        BoundaryCover::Inconclusive => json!({ "status": "inconclusive" }),
    };
    json!({
        "center": r.center,
        "m": r.m,
        "neighbors": r.neighbors,
        "vertex_coverers": r.vertex_coverers.iter()
            .map(|c| json!({ "vertex": c.vertex, "translate": c.translate }))
            .collect::<Vec<_>>(),
        "vertex_multi_cover": r.vertex_multi_cover,
        "E": r.edge_counts,
        "F": r.face_counts,
        "t": r.t,
        "S_coeff": rat_json(&r.s_coeff),
        "lambdas_sq": r.lambdas_sq.iter().map(rat_json).collect::<Vec<_>>(),
        "sum_mu_cubed": rat_json(&r.sum_mu_cubed),
        "buckets_disjoint": r.buckets_disjoint,
        "simple_vertex_cover": r.simple_vertex_cover,
        "identity_m": r.identity_m,
        "identity_t": r.identity_t,
        "t_le_2m_plus_4": r.t_le_2m_plus_4,
        "boundary": boundary,
    })
}

pub fn bound_payload(b: &BoundReport) -> Value {
    json!({
        "case1_threshold_m": b.case1_threshold_m,
        "case1_value": rat_json(&b.case1_value),
        "case2_t_max": b.case2_t_max,
        "sum_cubes_lb": rat_json(&b.sum_cubes_lb),
        "case2_value": quad_json(&b.case2_value),
        "final": quad_json(&b.final_value),
        "final_decimal": b.final_decimal,
        "case2_binding": b.case2_binding,
        "exceeds_claim": b.exceeds_claim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use simplex_cover_core::rat;

    #[test]
    fn keys_are_sorted() {
        let e = Envelope::new("x", true, json!({ "zeta": 1, "alpha": quad_json(&QuadVal::sqrt2()) }));
        let s = e.render();
        let pos = |k: &str| s.find(k).unwrap();
        assert!(pos("\"command\"") < pos("\"pass\""));
        assert!(pos("\"pass\"") < pos("\"payload\""));
        assert!(pos("\"payload\"") < pos("\"version\""));
        assert!(pos("\"alpha\"") < pos("\"zeta\""));
        assert!(s.contains("\"a\": \"0/1\""));
    }

    #[test]
    fn exact_forms() {
        assert_eq!(rat_json(&rat(-2, 4)), json!("-1/2"));
        assert_eq!(vec_json(&Vec3::from_ints(1, 1, 0)), json!(["1/1", "1/1", "0/1"]));
        assert_eq!(decimal(&rat(8, 3)), json!("2.66666666666667"));
    }
}
