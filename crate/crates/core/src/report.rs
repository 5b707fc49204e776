//! Report emission: a versioned structured form (JSON, rationals as strings)
//! and a plain-text form for terminals.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::algebra::{Algebra, Generator, Rational};
use crate::catalog::CatalogEntry;
use crate::derivations::Derivation;
use crate::esharp::GroupProfile;
use crate::homology::HomologyReport;
use crate::invariants::{HnilBound, PredictionReport, SamelsonReport};
use crate::io::derivation_to_json;
use crate::sullivan::{RelativeModel, ValidationReport};

pub const SCHEMA_VERSION: u32 = 1;

/// `p/q`, or `p` for integers.
pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

/// Wraps a report body with the schema version and command name.
pub fn envelope(command: &str, source: &str, body: Map<String, Value>) -> Value {
    let mut out = Map::new();
    out.insert("schema_version".into(), json!(SCHEMA_VERSION));
    out.insert("command".into(), json!(command));
    out.insert("source".into(), json!(source));
    out.extend(body);
    Value::Object(out)
}

pub fn to_text(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json value serializes");
    s.push('\n');
    s
}

pub fn validation_json(report: &ValidationReport) -> Value {
    json!({
        "ok": report.is_ok(),
        "checks": report.checks.iter().map(|c| json!({
            "name": c.name,
            "status": c.status.to_string(),
            "detail": c.detail,
        })).collect::<Vec<_>>(),
    })
}

pub fn validation_text(report: &ValidationReport) -> String {
    report.to_string()
}

/// Formats derivations of one complex: fibre generators and the algebra the
/// values live in.
#[derive(Clone, Copy)]
pub struct DerivationFormat<'a> {
    pub fibre: &'a [Generator],
    pub values_in: &'a Algebra,
}

impl<'a> DerivationFormat<'a> {
    pub fn of_model(model: &'a RelativeModel) -> Self {
        DerivationFormat {
            fibre: crate::derivations::fibre_generators(model),
            values_in: model.total(),
        }
    }

    pub fn json(&self, theta: &Derivation) -> Value {
        derivation_to_json(self.fibre, self.values_in, theta)
    }

    pub fn text(&self, theta: &Derivation) -> String {
        let parts: Vec<String> = self
            .fibre
            .iter()
            .zip(theta.values())
            .filter(|(_, p)| !p.is_zero())
            .map(|(g, p)| format!("{} ↦ {}", g.name, self.values_in.format(p)))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(", ")
        }
    }
}

pub fn homology_json(report: &HomologyReport, fmt: DerivationFormat<'_>) -> Map<String, Value> {
    let mut out = Map::new();
    out.insert("complex".into(), json!(report.kind.name()));
    out.insert(
        "window".into(),
        json!({"lo": report.window.lo(), "hi": report.window.hi()}),
    );
    out.insert("complete".into(), json!(report.complete));
    out.insert(
        "degrees".into(),
        Value::Array(
            report
                .degrees
                .iter()
                .map(|d| {
                    json!({
                        "degree": d.degree,
                        "dim": d.dim(),
                        "chain_dim": d.chain_dim,
                        "cycles_dim": d.cycles_dim,
                        "boundaries_dim": d.boundaries_dim,
                        "representatives": d.representatives.iter().map(|r| fmt.json(r)).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        ),
    );
    out.insert(
        "basis".into(),
        Value::Array(
            report
                .basis()
                .into_iter()
                .map(|(degree, index)| json!({"degree": degree, "index": index}))
                .collect(),
        ),
    );
    if let Some(brackets) = &report.brackets {
        out.insert(
            "brackets".into(),
            Value::Array(
                brackets
                    .iter()
                    .map(|c| json!({"i": c.i, "j": c.j, "k": c.k, "coefficient": rational(&c.coefficient)}))
                    .collect(),
            ),
        );
    }
    out
}

pub fn homology_text(report: &HomologyReport, fmt: DerivationFormat<'_>) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "complex: {}  window: {}{}",
        report.kind.name(),
        report.window,
        if report.complete { "  (complete)" } else { "" }
    );
    let _ = writeln!(s, "{:>6} {:>5} {:>8} {:>8} {:>10}", "degree", "dim", "Der^n", "cycles", "boundaries");
    for d in &report.degrees {
        let _ = writeln!(
            s,
            "{:>6} {:>5} {:>8} {:>8} {:>10}",
            d.degree,
            d.dim(),
            d.chain_dim,
            d.cycles_dim,
            d.boundaries_dim
        );
    }
    let basis = report.basis();
    if !basis.is_empty() {
        let _ = writeln!(s, "basis:");
        for (i, (n, k)) in basis.iter().enumerate() {
            let rep = &report.degree(*n).expect("basis degree").representatives[*k];
            let _ = writeln!(s, "  a{i} (degree {n}): {}", fmt.text(rep));
        }
    }
    if let Some(brackets) = &report.brackets {
        if brackets.is_empty() {
            let _ = writeln!(s, "brackets: all zero within the window");
        } else {
            let _ = writeln!(s, "brackets:");
            let mut k = 0;
            while k < brackets.len() {
                let (i, j) = (brackets[k].i, brackets[k].j);
                let mut terms = Vec::new();
                while k < brackets.len() && (brackets[k].i, brackets[k].j) == (i, j) {
                    terms.push(format!("{}·a{}", brackets[k].coefficient, brackets[k].k));
                    k += 1;
                }
                let _ = writeln!(s, "  [a{i}, a{j}] = {}", terms.join(" + "));
            }
        }
    }
    s
}

pub fn prediction_json(p: &PredictionReport) -> Value {
    json!({
        "dims_match": p.dims_match(),
        "brackets_vanish": p.brackets_vanish,
        "degrees": p.checks.iter().map(|c| json!({
            "degree": c.degree, "expected": c.expected, "actual": c.actual,
        })).collect::<Vec<_>>(),
    })
}

/// Optional cross-checks attached to an invariants report.
#[derive(Default)]
pub struct Predictions {
    pub odd_sphere: Option<(u32, PredictionReport)>,
    pub path_space: Option<PredictionReport>,
}

pub fn invariants_json(
    samelson: &SamelsonReport,
    hnil: HnilBound,
    predictions: &Predictions,
    fmt: DerivationFormat<'_>,
) -> Map<String, Value> {
    let mut out = homology_json(&samelson.homology, fmt);
    out.insert(
        "nilpotency_lower_bound".into(),
        json!(samelson.nilpotency_lower_bound),
    );
    out.insert("nilpotency_exact".into(), json!(samelson.exact));
    out.insert(
        "rationally_homotopy_abelian_within_window".into(),
        json!(samelson.rationally_homotopy_abelian_within_window),
    );
    out.insert(
        "hnil_fibre_bound".into(),
        json!({"bound": hnil.bound, "fibre_minimal": hnil.fibre_minimal}),
    );
    if let Some((n, p)) = &predictions.odd_sphere {
        let mut v = prediction_json(p);
        v["sphere_dim"] = json!(n);
        out.insert("odd_sphere_check".into(), v);
    }
    if let Some(p) = &predictions.path_space {
        out.insert("path_space_check".into(), prediction_json(p));
    }
    out
}

pub fn invariants_text(
    samelson: &SamelsonReport,
    hnil: HnilBound,
    predictions: &Predictions,
    fmt: DerivationFormat<'_>,
) -> String {
    let mut s = homology_text(&samelson.homology, fmt);
    let _ = writeln!(
        s,
        "nilpotency within window: {}{}",
        samelson.nilpotency_lower_bound,
        if samelson.exact { " (exact)" } else { " (lower bound)" }
    );
    let _ = writeln!(
        s,
        "rationally homotopy abelian within window: {}",
        samelson.rationally_homotopy_abelian_within_window
    );
    let _ = writeln!(
        s,
        "fibre degree bound: {}{}",
        hnil.bound,
        if hnil.fibre_minimal { "" } else { " (W is not fibre-minimal; bound may overcount)" }
    );
    if let Some((n, p)) = &predictions.odd_sphere {
        let _ = writeln!(
            s,
            "S^{n} fibre check: dims {}, brackets {}",
            if p.dims_match() { "match" } else { "differ" },
            if p.brackets_vanish { "vanish" } else { "nonzero" }
        );
    }
    if let Some(p) = &predictions.path_space {
        let _ = writeln!(
            s,
            "path-space check: dims {}",
            if p.dims_match() { "match" } else { "differ" }
        );
    }
    s
}

fn coordinates(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn group_json(profile: &GroupProfile, fmt: DerivationFormat<'_>) -> Map<String, Value> {
    let mut out = Map::new();
    out.insert("dimension".into(), json!(profile.dimension));
    out.insert(
        "basis".into(),
        Value::Array(profile.basis.iter().map(|b| fmt.json(b)).collect()),
    );
    out.insert(
        "table".into(),
        Value::Array(
            profile
                .table
                .iter()
                .map(|row| Value::Array(row.iter().map(|c| coordinates(c)).collect()))
                .collect(),
        ),
    );
    out.insert(
        "lower_central_series".into(),
        json!(profile.lower_central_series),
    );
    out.insert(
        "flags".into(),
        json!({
            "infinite_order": profile.infinite_order,
            "abelian": profile.abelian,
            "nilpotency_class_lower_bound": profile.nilpotency_class_lower_bound,
        }),
    );
    out
}

pub fn group_text(profile: &GroupProfile, fmt: DerivationFormat<'_>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "H0(Der_#) dimension: {}", profile.dimension);
    for (i, b) in profile.basis.iter().enumerate() {
        let _ = writeln!(s, "  e{i}: {}", fmt.text(b));
    }
    if profile.dimension > 0 {
        let _ = writeln!(s, "products e_i·e_j:");
        for (i, row) in profile.table.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                let coords: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(s, "  e{i}·e{j} = ({})", coords.join(", "));
            }
        }
    }
    let _ = writeln!(s, "lower central series dims: {:?}", profile.lower_central_series);
    let _ = writeln!(s, "infinite order: {}", profile.infinite_order);
    let _ = writeln!(s, "abelian: {}", profile.abelian);
    let _ = writeln!(s, "nilpotency class: {}", profile.nilpotency_class_lower_bound);
    s
}

pub fn catalog_json(entries: &[CatalogEntry]) -> Map<String, Value> {
    let mut out = Map::new();
    out.insert(
        "entries".into(),
        Value::Array(
            entries
                .iter()
                .map(|e| {
                    json!({
                        "key": e.key,
                        "base_generators": e.model.base_len(),
                        "fibre_generators": e.model.fibre_len(),
                        "flags": {
                            "odd_sphere_fibre": e.flags.odd_sphere_fibre,
                            "injective_i_sharp": e.flags.injective_i_sharp,
                            "fibre_minimal_w": e.flags.fibre_minimal_w,
                            "path_space": e.flags.path_space,
                        },
                    })
                })
                .collect(),
        ),
    );
    out
}

pub fn catalog_text(entries: &[CatalogEntry]) -> String {
    let mut s = String::new();
    for e in entries {
        let mut flags = Vec::new();
        if let Some(n) = e.flags.odd_sphere_fibre {
            flags.push(format!("S^{n} fibre"));
        }
        if e.flags.path_space {
            flags.push("path space".into());
        }
        if !e.flags.fibre_minimal_w {
            flags.push("non-minimal fibre".into());
        }
        let _ = writeln!(
            s,
            "{:<26} |V| = {}, |W| = {}{}",
            e.key,
            e.model.base_len(),
            e.model.fibre_len(),
            if flags.is_empty() { String::new() } else { format!("  [{}]", flags.join(", ")) }
        );
    }
    s
}
