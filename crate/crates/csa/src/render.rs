//! `--format plain`: aligned text for people instead of JSON for programs.

use std::fmt::Write;

use csa_core::disorder::DisorderId;
use csa_core::order::AxiomReport;
use csa_core::pipeline::{RankReport, ScaleReport, ValidateReport};
use csa_core::trisection::Trisection;
use csa_core::weighting::{ConsistencyReport, HierarchyWeights, WeightVector};

use crate::error::ApiError;

fn ids(list: &[impl AsRef<str>]) -> String {
    if list.is_empty() {
        return "-".into();
    }
    list.iter().map(AsRef::as_ref).collect::<Vec<_>>().join(", ")
}

pub fn axiom(r: &AxiomReport) -> String {
    let mut out = format!("{:<20}", r.property.name());
    if r.holds {
        out.push_str("holds");
        return out;
    }
    let noun = if r.violations == 1 { "violation" } else { "violations" };
    let _ = write!(out, "fails ({} {noun})", r.violations);
    for t in &r.counterexamples {
        let _ = write!(
            out,
            "\n{:<20}({})",
            "",
            t.iter().map(DisorderId::as_str).collect::<Vec<_>>().join(", ")
        );
    }
    if r.violations > r.counterexamples.len() {
        let _ = write!(out, "\n{:<20}...", "");
    }
    out
}

pub fn validate(r: &ValidateReport) -> String {
    let mut out = format!("class: {}\n", r.class);
    for a in &r.axioms {
        out.push_str(&axiom(a));
        out.push('\n');
    }
    out
}

pub fn rank(r: &RankReport) -> String {
    format!("class: {}\n{}\n", r.class, r.ranking)
}

pub fn order(list: &[DisorderId]) -> String {
    format!(
        "{}\n",
        list.iter().map(DisorderId::as_str).collect::<Vec<_>>().join(" > ")
    )
}

fn weight_table(out: &mut String, w: &WeightVector) {
    let width = w.ids().map(str::len).max().unwrap_or(0).max(8);
    for (id, x) in w.iter() {
        let _ = writeln!(out, "  {id:<width$}  {x:.4}");
    }
}

fn consistency_line(out: &mut String, name: &str, c: &ConsistencyReport) {
    let _ = writeln!(
        out,
        "  {name}: n = {}, λmax = {:.4}, C.I. = {:.5}, C.R. = {:.3}%{}",
        c.order,
        c.lambda_max,
        c.consistency_index,
        c.consistency_ratio * 100.0,
        if c.acceptable { "" } else { " (NOT acceptable)" }
    );
}

pub fn weights(w: &HierarchyWeights) -> String {
    let mut out = String::from("global weights\n");
    weight_table(&mut out, &w.global);
    out.push_str("consistency\n");
    for (name, c) in &w.reports {
        consistency_line(&mut out, name, c);
    }
    out
}

pub fn scale(s: &ScaleReport) -> String {
    let mut out = String::from("level weights\n");
    weight_table(&mut out, &s.level_weights);
    consistency_line(&mut out, "levels", &s.consistency);
    out.push_str("disorders (raw, normalized)\n");
    let width = s.raw.ids().map(str::len).max().unwrap_or(0).max(8);
    for ((id, raw), norm) in s.raw.iter().zip(s.normalized.values()) {
        let _ = writeln!(out, "  {id:<width$}  {raw:.4}  {norm:.4}");
    }
    out
}

pub fn trisection(t: &Trisection) -> String {
    let mut out = format!("method: {}  h = {:.4}  l = {:.4}", t.method, t.h, t.l);
    if let (Some(mu), Some(sigma)) = (t.mu, t.sigma) {
        let _ = write!(out, "  (μ = {mu:.4}, σ = {sigma:.4})");
    }
    let _ = write!(
        out,
        "\nH: {}\nM: {}\nL: {}\n",
        ids(&t.high),
        ids(&t.medium),
        ids(&t.low)
    );
    out
}

pub fn error(e: &ApiError) -> String {
    let mut out = format!("error[{}]: {}\n", e.code, e.message);
    if !e.details.is_null() {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&e.details).unwrap_or_default());
    }
    out
}
