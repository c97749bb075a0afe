//! JSON fragments for reports. Object keys are sorted, so equal inputs give
//! byte-identical output.

use cmdegen_core::algebra::Ideal;
use cmdegen_core::fitting::FittingViolation;
use cmdegen_core::modrep::{InvariantCheck, InvariantReport};
use cmdegen_core::stable::StableRefutation;
use cmdegen_core::witness::{FamilyReport, Refutation, Witness};
use cmdegen_core::{Field, FiniteAlgebra, Scalar};
use serde_json::{json, Value};

use crate::input::{Coef, FamilyJson, WitnessJson};

pub const GENERIC_FIBER_SAMPLED: &str = "GenericFiberSampled";
pub const FINITE_FIELD_CAVEAT: &str = "FiniteFieldCaveat";

/// `"x*y - 2*x"`-style rendering in the algebra's basis names.
pub fn render_element(a: &FiniteAlgebra, v: &[Scalar]) -> String {
    let mut out = String::new();
    for (c, name) in v.iter().zip(a.basis_names()) {
        if c.is_zero() {
            continue;
        }
        let text = c.to_string();
        let (neg, mag) = match text.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, text),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match (mag.as_str(), name.as_str()) {
            (_, "1") => out.push_str(&mag),
            ("1", _) => out.push_str(name),
            _ => out.push_str(&format!("{mag}*{name}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn vector(v: &[Scalar]) -> Value {
    serde_json::to_value(v.iter().map(Coef::of).collect::<Vec<_>>()).expect("serializable")
}

pub fn element(a: &FiniteAlgebra, v: &[Scalar]) -> Value {
    json!({ "coordinates": vector(v), "text": render_element(a, v) })
}

pub fn ideal(i: &Ideal) -> Value {
    let a = i.algebra();
    json!({
        "dim": i.dim(),
        "basis": i.basis().iter().map(|v| vector(v)).collect::<Vec<_>>(),
        "span": i.basis().iter().map(|v| render_element(a, v)).collect::<Vec<_>>(),
    })
}

pub fn invariant_check(c: &InvariantCheck) -> Value {
    json!({
        "name": c.name,
        "m": c.left,
        "n": c.right,
        "relation": if c.equality { "=" } else { "<=" },
        "pass": c.pass,
    })
}

pub fn invariants(r: &InvariantReport) -> Value {
    Value::Array(r.checks.iter().map(invariant_check).collect())
}

pub fn fitting_violation(a: &FiniteAlgebra, v: &FittingViolation) -> Value {
    json!({ "index": v.index, "escapee": element(a, &v.escapee) })
}

pub fn refutation(a: &FiniteAlgebra, r: &Refutation) -> Value {
    match r {
        Refutation::Invariant(c) => json!({ "kind": "Invariant", "check": invariant_check(c) }),
        Refutation::Fitting(v) => json!({ "kind": "Fitting", "violation": fitting_violation(a, v) }),
    }
}

pub fn stable_refutation(a: &FiniteAlgebra, r: &StableRefutation) -> Value {
    match r {
        StableRefutation::Length { dim_m0, dim_n0, algebra_dim } => json!({
            "kind": "Length",
            "dim_m0": dim_m0,
            "dim_n0": dim_n0,
            "algebra_dim": algebra_dim,
        }),
        StableRefutation::Fitting { index, shift, escapee } => json!({
            "kind": "Fitting",
            "index_n0": index,
            "index_m0": *index as i64 - shift,
            "shift": shift,
            "escapee": element(a, escapee),
        }),
    }
}

pub fn witness(w: &Witness) -> Value {
    serde_json::to_value(WitnessJson::of(w)).expect("serializable")
}

pub fn family(f: &cmdegen_core::witness::Family) -> Value {
    serde_json::to_value(FamilyJson::of(f)).expect("serializable")
}

pub fn family_report(r: &FamilyReport) -> Value {
    json!({
        "special_fiber_isomorphic_to_n": r.special_fiber_ok,
        "generic_points": r.generic_points.iter().map(|(c, ok)| json!({ "t": c.to_string(), "isomorphic_to_m": ok })).collect::<Vec<_>>(),
        "valid": r.valid(),
    })
}

/// Caveat flags for a result over `field`.
pub fn caveats(field: Field, generic_sampled: bool) -> Vec<&'static str> {
    let mut out = Vec::new();
    if generic_sampled {
        out.push(GENERIC_FIBER_SAMPLED);
    }
    if !field.is_infinite() {
        out.push(FINITE_FIELD_CAVEAT);
    }
    out
}

pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
