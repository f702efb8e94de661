//! Runs catalog chains through the classifier and tabulates the outcome.

use std::time::Instant;

use serde::Serialize;

use crate::catalog::{build_chain, list_catalog, ExpectedVerdict};
use crate::criterion::{classify_chain, Budget, Verdict, VerdictKind};

#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub chain_id: String,
    pub expected: ExpectedVerdict,
    pub computed: String,
    pub taxonomy: String,
    /// Commutator residual of the certificate, or the constant estimate.
    pub value: Option<f64>,
    pub value_kind: &'static str,
    pub divergent: bool,
    pub origin: Option<String>,
    pub consistent: bool,
    pub wall_time_s: f64,
    pub notes: Vec<String>,
}

/// Whether a computed verdict tag agrees with an expected one.
/// `NO_COUNTEREXAMPLE_FOUND` is accepted for proved and conjectured
/// positive results alike.
pub fn consistent(expected: ExpectedVerdict, computed: &str) -> bool {
    match expected {
        ExpectedVerdict::Fails => computed == "COUNTEREXAMPLE_FOUND",
        ExpectedVerdict::HoldsProved => matches!(
            computed,
            "HOLDS_BY_CLASSIFICATION" | "NO_COUNTEREXAMPLE_FOUND" | "SYMMETRIC_PAIR"
        ),
        ExpectedVerdict::HoldsConjectured => computed == "NO_COUNTEREXAMPLE_FOUND",
        ExpectedVerdict::SymmetricPair => computed == "SYMMETRIC_PAIR",
    }
}

fn row_from(id: &str, expected: ExpectedVerdict, v: &Verdict, secs: f64) -> ReportRow {
    let (value, value_kind, divergent, origin) = match &v.kind {
        VerdictKind::CounterexampleFound(c) => (Some(c.residual), "residual", false, Some(c.origin.to_string())),
        VerdictKind::NoCounterexampleFound { estimate, .. } => (Some(estimate.value), "C", estimate.divergent, None),
        _ => (None, "-", false, None),
    };
    ReportRow {
        chain_id: id.to_string(),
        expected,
        computed: v.tag().to_string(),
        taxonomy: v.taxonomy.to_string(),
        value,
        value_kind,
        divergent,
        origin,
        consistent: consistent(expected, v.tag()),
        wall_time_s: secs,
        notes: v.notes.clone(),
    }
}

/// Classifies every buildable catalog chain. `overrides` replaces the
/// expected tag of the named chains.
pub fn run_suite(budget: Budget, seed: u64, overrides: &[(String, ExpectedVerdict)]) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    for entry in list_catalog().into_iter().filter(|e| !e.reserved) {
        let expected = overrides
            .iter()
            .find(|(id, _)| id == entry.id)
            .map(|(_, e)| *e)
            .unwrap_or(entry.expected);
        let start = Instant::now();
        let result = build_chain(entry.id).and_then(|c| classify_chain(&c, budget, seed));
        let secs = start.elapsed().as_secs_f64();
        rows.push(match result {
            Ok(v) => row_from(entry.id, expected, &v, secs),
            Err(e) => ReportRow {
                chain_id: entry.id.to_string(),
                expected,
                computed: "ERROR".into(),
                taxonomy: "-".into(),
                value: None,
                value_kind: "-",
                divergent: false,
                origin: None,
                consistent: false,
                wall_time_s: secs,
                notes: vec![e.to_string()],
            },
        });
    }
    rows
}

pub fn all_consistent(rows: &[ReportRow]) -> bool {
    rows.iter().all(|r| r.consistent)
}

pub fn to_json(rows: &[ReportRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn to_markdown(rows: &[ReportRow]) -> String {
    let mut s = String::from(
        "| chain | expected | computed | taxonomy | value | origin | ok | time (s) |\n\
         |---|---|---|---|---|---|---|---|\n",
    );
    for r in rows {
        let value = match (r.value, r.divergent) {
            (_, true) => "C divergent".to_string(),
            (Some(v), _) => format!("{} = {v:.3e}", r.value_kind),
            (None, _) => "-".to_string(),
        };
        s.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} | {:.2} |\n",
            r.chain_id,
            r.expected,
            r.computed,
            r.taxonomy,
            value,
            r.origin.as_deref().unwrap_or("-"),
            if r.consistent { "yes" } else { "NO" },
            r.wall_time_s
        ));
    }
    s
}
