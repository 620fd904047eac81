//! Structured verification reports; the single source of pass/fail truth.
//!
//! Reports aggregate per-sample residuals by max-reduction, so any
//! evaluation order produces the same record. Eigenvalues are carried as
//! exact integer fractions, never floats. All JSON goes through
//! `serde_json::Value` whose object keys are sorted, which is what makes
//! emit -> parse -> emit byte-identical.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groups::{GroupFamily, GroupParams, GroupSpec};

pub const SCHEMA_VERSION: u32 = 1;

/// One named residual check inside a report.
#[derive(Debug, Clone)]
pub struct CheckRecord {
    pub name: String,
    pub max_abs: f64,
    pub max_rel: f64,
}

impl CheckRecord {
    pub fn new(name: &str, max_abs: f64, max_rel: f64) -> Self {
        Self {
            name: name.into(),
            max_abs,
            max_rel,
        }
    }

    /// Boolean fact folded into the residual convention: 0 passes, 1 fails.
    pub fn structural(name: &str, ok: bool) -> Self {
        let r = if ok { 0.0 } else { 1.0 };
        Self::new(name, r, r)
    }
}

/// Verification outcome for one test on one group.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub family: GroupFamily,
    pub params: GroupParams,
    pub lam: crate::groups::Rat,
    pub mu: crate::groups::Rat,
    pub test: String,
    pub seed: u64,
    pub samples: u64,
    pub accepted: u64,
    pub rejected: u64,
    pub max_abs: f64,
    pub max_rel: f64,
    pub tol: f64,
    pub pass: bool,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    /// Assemble a report from its checks; pass iff the max scale-free
    /// residual meets the tolerance and at least one sample was accepted.
    #[allow(clippy::too_many_arguments)]
    pub fn from_checks(
        spec: &GroupSpec,
        test: &str,
        seed: u64,
        samples: u64,
        accepted: u64,
        rejected: u64,
        tol: f64,
        checks: Vec<CheckRecord>,
    ) -> Self {
        let max_abs = checks.iter().map(|c| c.max_abs).fold(0.0, f64::max);
        let max_rel = checks.iter().map(|c| c.max_rel).fold(0.0, f64::max);
        Self {
            family: spec.family,
            params: spec.params,
            lam: spec.lam,
            mu: spec.mu,
            test: test.into(),
            seed,
            samples,
            accepted,
            rejected,
            max_abs,
            max_rel,
            tol,
            pass: max_rel <= tol && accepted >= 1,
            checks,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
    Csv,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Usage(format!("unknown format '{other}'"))),
        }
    }
}

fn rat_json(r: crate::groups::Rat) -> Value {
    json!({"num": *r.numer(), "den": *r.denom()})
}

fn params_json(p: GroupParams) -> Value {
    match p {
        GroupParams::N(n) => json!({"n": n}),
        GroupParams::Pq(p, q) => json!({"p": p, "q": q}),
    }
}

/// Group descriptor object: family, parameters and exact eigenvalues.
pub fn group_json(r: &VerificationReport) -> Value {
    let mut gobj = json!({
        "family": r.family.name(),
        "lambda": rat_json(r.lam),
        "mu": rat_json(r.mu),
    });
    if let Value::Object(map) = &mut gobj {
        if let Value::Object(pmap) = params_json(r.params) {
            map.extend(pmap);
        }
    }
    gobj
}

/// Single-test object with residuals and the per-check breakdown.
pub fn test_json(r: &VerificationReport) -> Value {
    json!({
        "name": r.test,
        "seed": r.seed,
        "samples": r.samples,
        "accepted": r.accepted,
        "rejected": r.rejected,
        "max_abs": r.max_abs,
        "max_rel": r.max_rel,
        "tol": r.tol,
        "pass": r.pass,
        "checks": r.checks.iter().map(|c| json!({
            "name": c.name,
            "max_abs": c.max_abs,
            "max_rel": c.max_rel,
        })).collect::<Vec<_>>(),
    })
}

fn group_key(r: &VerificationReport) -> (usize, GroupParams) {
    let order = GroupFamily::ALL
        .iter()
        .position(|f| *f == r.family)
        .unwrap_or(usize::MAX);
    (order, r.params)
}

/// Stable catalog ordering: family catalog order, then parameters.
fn sorted(reports: &[VerificationReport]) -> Vec<&VerificationReport> {
    let mut v: Vec<&VerificationReport> = reports.iter().collect();
    v.sort_by_key(|r| (group_key(r), r.test.clone()));
    v
}

/// Serialize a report set. Errors on an empty set or unknown format.
pub fn emit(reports: &[VerificationReport], format: Format) -> Result<String> {
    if reports.is_empty() {
        return Err(Error::Usage("empty report set".into()));
    }
    match format {
        Format::Json => emit_json(reports),
        Format::Markdown => Ok(emit_markdown(reports)),
        Format::Csv => Ok(emit_csv(reports)),
    }
}

fn emit_json(reports: &[VerificationReport]) -> Result<String> {
    let ordered = sorted(reports);
    let mut groups: Vec<Value> = Vec::new();
    let mut current: Option<((usize, GroupParams), Value, Vec<Value>)> = None;
    for r in ordered {
        let key = group_key(r);
        let test = test_json(r);
        match &mut current {
            Some((k, _, tests)) if *k == key => tests.push(test),
            _ => {
                if let Some((_, g, tests)) = current.take() {
                    groups.push(finish_group(g, tests));
                }
                current = Some((key, group_json(r), vec![test]));
            }
        }
    }
    if let Some((_, g, tests)) = current.take() {
        groups.push(finish_group(g, tests));
    }
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "reports": groups,
    });
    serde_json::to_string_pretty(&doc).map_err(|e| Error::Usage(e.to_string()))
}

fn finish_group(group: Value, tests: Vec<Value>) -> Value {
    json!({"group": group, "tests": tests})
}

fn rat_str(r: crate::groups::Rat) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Markdown table mirroring the eigenfunction tables: group, eigenfunction
/// shape, lambda, mu, conditions, plus the measured residuals.
fn emit_markdown(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    out.push_str("| group | params | eigenfunctions | lambda | mu | conditions | test | max_rel | pass |\n");
    out.push_str("|---|---|---|---|---|---|---|---|---|\n");
    for r in sorted(reports) {
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} | {:.3e} | {} |\n",
            r.family.symbol(),
            r.params,
            r.family.eigenfunction_shape(),
            rat_str(r.lam),
            rat_str(r.mu),
            r.family.eigenfunction_conditions(),
            r.test,
            r.max_rel,
            if r.pass { "\u{2713}" } else { "\u{2717}" },
        ));
    }
    out
}

fn emit_csv(reports: &[VerificationReport]) -> String {
    let mut out =
        String::from("family,params,lambda,mu,test,seed,samples,accepted,rejected,max_abs,max_rel,tol,pass\n");
    for r in sorted(reports) {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{:e},{:e},{:e},{}\n",
            r.family.name(),
            r.params,
            rat_str(r.lam),
            rat_str(r.mu),
            r.test,
            r.seed,
            r.samples,
            r.accepted,
            r.rejected,
            r.max_abs,
            r.max_rel,
            r.tol,
            r.pass,
        ));
    }
    out
}
