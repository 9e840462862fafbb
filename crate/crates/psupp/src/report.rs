//! Sweep reports: JSON with a fixed field order, or an aligned text table.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HolonomyRecord {
    /// `computed` or `skipped`.
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    pub d: Option<i64>,
    pub e: Option<u64>,
    pub hilbert: Option<String>,
    pub holonomic: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportRecord {
    /// `cyclic` (center presentation of the module) or `connection`.
    pub route: String,
    pub generators: Vec<String>,
    pub annihilator: Vec<String>,
    pub reduced: bool,
    pub prime: bool,
    pub dim: i64,
    pub degree: u64,
    pub reduced_degree: Option<u64>,
    pub chart: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvatureRecord {
    pub zero: bool,
    pub nilpotency_index: Option<u32>,
    /// One matrix per direction, rows of formatted entries.
    pub matrices: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub status: String,
    pub dim: i64,
    pub dim_ok: bool,
    pub equidim_ok: Option<bool>,
    pub isotropy: Vec<bool>,
    pub points_tested: usize,
    pub witness: Option<Vec<String>>,
    pub reasons: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub generators: Vec<String>,
    pub degree: u64,
    pub certified_irreducible: bool,
    pub rank: Option<u64>,
    pub rank_points: usize,
    pub degree_ok: Option<bool>,
    pub divisible: Option<bool>,
    pub rank_ok: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsRecord {
    /// `pass`, `fail` or `skipped`.
    pub status: String,
    pub e: Option<u64>,
    pub components: Vec<ComponentRecord>,
    pub mu_total: Option<u64>,
    pub mu_rees: Option<u64>,
    pub sum_rank_degree: Option<u64>,
    pub aggregate_ok: Option<bool>,
    pub rees_degree: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalingRecord {
    /// `equal`, `mismatch` or `skipped`.
    pub status: String,
    pub bernstein_scaled: Option<String>,
    pub rees: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
}

pub const PASS: &str = "pass";
pub const VIOLATION: &str = "violation";
pub const HYPOTHESIS_NOT_MET: &str = "hypothesis_not_met";
pub const INCONCLUSIVE: &str = "inconclusive";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRecord {
    pub p: u64,
    pub field: String,
    pub parameters: BTreeMap<String, String>,
    pub status: String,
    pub support: Option<SupportRecord>,
    pub curvature: Option<CurvatureRecord>,
    pub purity: Option<String>,
    pub lagrangian: Option<VerdictRecord>,
    pub bounds: Option<BoundsRecord>,
    pub hilbert_scaling: Option<ScalingRecord>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub tool: String,
    pub version: String,
    pub name: String,
    pub input_hash: String,
    pub n: usize,
    pub kind: String,
    pub holonomy: HolonomyRecord,
    pub primes: Vec<PrimeRecord>,
    pub status: String,
    /// Wall-clock times; not part of the reproducible section.
    pub timings_ms: BTreeMap<String, u64>,
}

/// `verified`, `violation`, `inconclusive` or `hypothesis_not_met`.
pub fn overall_status(records: &[PrimeRecord]) -> &'static str {
    let has = |s: &str| records.iter().any(|r| r.status == s);
    if has(VIOLATION) {
        VIOLATION
    } else if has(INCONCLUSIVE) {
        INCONCLUSIVE
    } else if has(HYPOTHESIS_NOT_MET) {
        HYPOTHESIS_NOT_MET
    } else {
        "verified"
    }
}

impl SweepReport {
    /// 0 verified (or hypothesis not met), 1 violation, 2 inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self.status.as_str() {
            VIOLATION => 1,
            INCONCLUSIVE => 2,
            _ => 0,
        }
    }

    /// The report without timings: byte-identical across runs with the same input.
    pub fn stable(&self) -> SweepReport {
        SweepReport { timings_ms: BTreeMap::new(), ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} (n = {}, {}): {}", self.name, self.n, self.kind, self.status);
        let h = &self.holonomy;
        match h.status.as_str() {
            "computed" => {
                let _ = writeln!(
                    out,
                    "char 0: d = {}, e = {}, holonomic = {}",
                    h.d.map_or("-".into(), |d| d.to_string()),
                    h.e.map_or("-".into(), |e| e.to_string()),
                    h.holonomic.map_or("-".into(), |b| b.to_string())
                );
            }
            _ => {
                let _ = writeln!(out, "char 0: skipped ({})", h.reason.as_deref().unwrap_or(""));
            }
        }
        let header =
            ["p", "field", "status", "dim", "purity", "verdict", "pts", "deg", "rank", "bounds", "scaling", "support"];
        let mut rows: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
        for r in &self.primes {
            let dash = || "-".to_string();
            let comp = r.bounds.as_ref().and_then(|b| b.components.first());
            rows.push(vec![
                r.p.to_string(),
                r.field.clone(),
                r.status.clone(),
                r.support.as_ref().map_or_else(dash, |s| s.dim.to_string()),
                r.purity.clone().unwrap_or_else(dash),
                r.lagrangian.as_ref().map_or_else(dash, |v| v.status.clone()),
                r.lagrangian.as_ref().map_or_else(dash, |v| v.points_tested.to_string()),
                r.support.as_ref().map_or_else(dash, |s| s.reduced_degree.unwrap_or(s.degree).to_string()),
                comp.and_then(|c| c.rank).map_or_else(dash, |k| k.to_string()),
                r.bounds.as_ref().map_or_else(dash, |b| b.status.clone()),
                r.hilbert_scaling.as_ref().map_or_else(dash, |s| s.status.clone()),
                r.support.as_ref().map_or_else(dash, |s| format!("({})", s.generators.join(", "))),
            ]);
        }
        let widths: Vec<usize> =
            (0..header.len()).map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
        for row in &rows {
            let cells: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
            let _ = writeln!(out, "{}", cells.join("  ").trim_end());
        }
        for r in &self.primes {
            for note in &r.notes {
                let _ = writeln!(out, "p = {}: {note}", r.p);
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

pub fn emit_report(report: &SweepReport, format: Format) -> Vec<u8> {
    let mut s = match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s.into_bytes()
}
