//! Lattice file format and machine-readable result documents.
//!
//! Lattice files are JSON: `{"name", "rank", "gram", "curves", "k_dot"?}`.
//! A file parses exactly when the lattice invariants hold, and rejection
//! messages name the violated invariant. Result documents render every
//! rational as its canonical string (`p/q`, `q > 0`, reduced; integers
//! without the `/1`), so no number ever passes through floating point.

use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::classify::{DeterminantCheck, K3FormR2, ThirdCurveOutcome};
use crate::engine::{DivisibilityReport, FiberCheck, ScanReport, ZariskiResult};
use crate::lattice::{DivisorQ, HodgeVerdict, LatticeError, Signature, SurfaceLattice};
use crate::rational::{parse_rat, Rat, RationalParseError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("declared rank {declared} does not match gram matrix of size {found}")]
    RankMismatch { declared: usize, found: usize },
    #[error(transparent)]
    Rational(#[from] RationalParseError),
    #[error("invalid integer token `{token}`")]
    BadInteger { token: String },
    #[error("empty list")]
    EmptyList,
}

#[derive(Debug, Deserialize)]
struct RawLatticeFile {
    #[serde(default)]
    name: String,
    rank: usize,
    gram: Vec<Vec<i64>>,
    curves: Vec<String>,
    #[serde(default)]
    k_dot: Option<Vec<i64>>,
}

/// A named, validated lattice as read from disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeFile {
    pub name: String,
    pub lattice: SurfaceLattice,
}

/// Parses and validates a lattice file.
pub fn parse_lattice(text: &str) -> Result<LatticeFile, IoError> {
    let raw: RawLatticeFile = serde_json::from_str(text)?;
    if raw.rank != raw.gram.len() {
        return Err(IoError::RankMismatch { declared: raw.rank, found: raw.gram.len() });
    }
    let lattice = SurfaceLattice::new(raw.gram, raw.curves, raw.k_dot)?;
    Ok(LatticeFile { name: raw.name, lattice })
}

/// Canonical JSON for a lattice (also the on-disk file format).
pub fn lattice_value(name: &str, l: &SurfaceLattice) -> Value {
    let mut v = json!({
        "name": name,
        "rank": l.rank(),
        "gram": l.gram(),
        "curves": l.curve_names(),
    });
    if let Some(k) = l.k_dot() {
        v["k_dot"] = json!(k);
    }
    v
}

pub fn lattice_to_json(name: &str, l: &SurfaceLattice) -> String {
    let mut s = serde_json::to_string_pretty(&lattice_value(name, l)).expect("serializable");
    s.push('\n');
    s
}

/// Comma-separated divisor coefficients: integers or `p/q` tokens.
pub fn parse_divisor(text: &str) -> Result<Vec<Rat>, IoError> {
    let coeffs = text
        .split(',')
        .map(parse_rat)
        .collect::<Result<Vec<_>, _>>()?;
    if coeffs.is_empty() {
        return Err(IoError::EmptyList);
    }
    Ok(coeffs)
}

pub fn parse_integers(text: &str) -> Result<Vec<i64>, IoError> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<i64>().map_err(|_| IoError::BadInteger { token: t.to_owned() })
        })
        .collect()
}

pub fn parse_indices(text: &str) -> Result<Vec<usize>, IoError> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<usize>().map_err(|_| IoError::BadInteger { token: t.to_owned() })
        })
        .collect()
}

fn int_value(v: i128) -> Value {
    match i64::try_from(v) {
        Ok(small) => json!(small),
        Err(_) => json!(v.to_string()),
    }
}

pub fn rat_string(r: Rat) -> String {
    r.to_string()
}

pub fn divisor_strings(d: &DivisorQ) -> Vec<String> {
    d.coeffs().iter().map(|c| c.to_string()).collect()
}

pub fn signature_value(s: Signature) -> Value {
    json!({ "n_pos": s.n_pos, "n_neg": s.n_neg, "n_zero": s.n_zero })
}

pub fn hodge_value(h: &HodgeVerdict) -> Value {
    json!({
        "pass": h.pass,
        "determinant": int_value(h.determinant),
        "signature": signature_value(h.signature),
    })
}

pub fn zariski_result_value(l: &SurfaceLattice, z: &ZariskiResult) -> Value {
    json!({
        "p": divisor_strings(&z.p),
        "n": divisor_strings(&z.n),
        "support": z.support,
        "support_curves": z.support.iter().map(|&i| l.curve_name(i)).collect::<Vec<_>>(),
        "denominator": z.denominator,
        "iterations": z.iterations,
        "realizable": z.realizable,
    })
}

pub fn scan_report_value(r: &ScanReport) -> Value {
    json!({
        "max_denominator": r.max_denominator,
        "witness": divisor_strings(&r.witness),
        "d1": r.d1_verdict,
        "grid_bound": r.grid_bound,
        "b_observed": r.b_observed,
    })
}

pub fn divisibility_value(l: &SurfaceLattice, r: &DivisibilityReport) -> Value {
    json!({
        "checks": r.checks.iter().map(|c| json!({
            "negative_curve": l.curve_name(c.negative_curve),
            "other": l.curve_name(c.other),
            "self_intersection": c.self_intersection,
            "pairing": c.pairing,
            "divides": c.divides,
        })).collect::<Vec<_>>(),
        "all_divide": r.all_divide,
        "shgh_falsified": r.shgh_falsified,
    })
}

pub fn k3_form_value(f: &K3FormR2) -> Value {
    json!({
        "kind": "candidate form",
        "a": f.a,
        "b": f.b,
        "verdicts": {
            "a_in_family": f.verdicts.a_in_family,
            "parity_positivity": f.verdicts.parity_positivity,
            "hodge": f.verdicts.hodge,
            "divisibility": f.verdicts.divisibility,
        },
        "valid": f.valid,
    })
}

pub fn fiber_check_value(f: &FiberCheck) -> Value {
    json!({
        "semidefinite_with_fiber_radical": f.semidefinite,
        "truncated_self_intersection": f.truncated_self_intersection,
        "first_curve_self_intersection": f.first_curve_self_intersection,
        "pass": f.pass,
    })
}

pub fn third_curve_value(l: &SurfaceLattice, outcome: &ThirdCurveOutcome) -> Value {
    match outcome {
        ThirdCurveOutcome::ExistingNegativeCurve { index } => json!({
            "classification": "existing negative curve",
            "curve": l.curve_name(*index),
        }),
        ThirdCurveOutcome::ConsistentNonNegative { self_intersection } => json!({
            "classification": "not negative, consistent",
            "self_intersection": self_intersection,
        }),
        ThirdCurveOutcome::ImpossibleThirdCurve { self_intersection, violated_pairings } => json!({
            "classification": "cannot be an irreducible curve",
            "self_intersection": self_intersection,
            "violated_pairings": violated_pairings.iter().map(|&(i, v)| json!({
                "curve": l.curve_name(i),
                "pairing": v,
            })).collect::<Vec<_>>(),
        }),
        ThirdCurveOutcome::OutsideEffectiveCone => json!({
            "classification": "outside the effective cone, not effective in this model",
        }),
    }
}

pub fn determinant_check_value(c: &DeterminantCheck) -> Value {
    json!({
        "determinant": int_value(c.determinant),
        "expected": int_value(c.expected),
        "matches": c.matches,
    })
}

/// One machine-readable result on standard output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultDocument {
    pub version: String,
    pub operation: String,
    pub input: Value,
    pub result: Value,
}

impl ResultDocument {
    pub fn new(operation: &str, input: Value, result: Value) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").to_owned(),
            operation: operation.to_owned(),
            input,
            result,
        }
    }

    fn to_value(&self) -> Value {
        json!({
            "version": self.version,
            "operation": self.operation,
            "input": self.input,
            "result": self.result,
        })
    }

    /// Canonical JSON rendering; keys are sorted, output is deterministic.
    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("serializable");
        s.push('\n');
        s
    }

    /// Best-effort aligned text; the JSON rendering is the contract.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("operation: {}\n", self.operation));
        out.push_str(&format!("version:   {}\n", self.version));
        walk_table(&mut out, "input", &self.input, 0);
        walk_table(&mut out, "result", &self.result, 0);
        out
    }
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".to_owned()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            let inner: Vec<String> =
                items.iter().map(|i| scalar_text(i).unwrap_or_default()).collect();
            Some(format!("[{}]", inner.join(", ")))
        }
        _ => None,
    }
}

fn walk_table(out: &mut String, key: &str, value: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(text) = scalar_text(value) {
        out.push_str(&format!("{pad}{key}: {text}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                walk_table(out, k, v, depth + 1);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                walk_table(out, &i.to_string(), v, depth + 1);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}
