//! Per-size summary tables built from RunRecord JSONL streams.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::enumerate::{reference_bound, RunRecord, EXTREMAL_TOL};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub m: usize,
    pub count: usize,
    pub max_rho: f64,
    /// Reference extremal value for size `m`, if one is known.
    pub bound: Option<f64>,
    /// First record attaining `max_rho`.
    pub extremal_graph6: String,
    pub tight: Option<bool>,
    /// `bound − max_rho`.
    pub gap: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Summary {
    pub rows: Vec<SummaryRow>,
    pub warnings: Vec<String>,
}

impl Summary {
    pub fn skipped(&self) -> usize {
        self.warnings.len()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("m,count,max_rho,bound,extremal_graph6,tight,gap\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{:.12},{},{},{},{}\n",
                r.m,
                r.count,
                r.max_rho,
                r.bound.map(|b| format!("{b:.12}")).unwrap_or_default(),
                r.extremal_graph6,
                r.tight.map(yes_no).unwrap_or_default(),
                r.gap.map(|g| format!("{g:.3e}")).unwrap_or_default(),
            ));
        }
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::from(
            "| m | count | max rho | bound | extremal graph6 | tight | gap |\n|---|---|---|---|---|---|---|\n",
        );
        for r in &self.rows {
            s.push_str(&format!(
                "| {} | {} | {:.12} | {} | `{}` | {} | {} |\n",
                r.m,
                r.count,
                r.max_rho,
                r.bound.map(|b| format!("{b:.12}")).unwrap_or_else(|| "-".into()),
                r.extremal_graph6,
                r.tight.map(yes_no).unwrap_or("-"),
                r.gap.map(|g| format!("{g:.3e}")).unwrap_or_else(|| "-".into()),
            ));
        }
        s
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Summarize JSONL text; `source` labels warnings. Blank lines are ignored,
/// malformed ones are skipped with a warning.
pub fn summarize_text(sources: &[(String, String)]) -> Summary {
    let mut by_m: BTreeMap<usize, (usize, RunRecord)> = BTreeMap::new();
    let mut warnings = Vec::new();
    for (source, text) in sources {
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            match RunRecord::from_json_line(line) {
                Ok(rec) => {
                    let slot = by_m.entry(rec.m).or_insert_with(|| (0, rec.clone()));
                    slot.0 += 1;
                    if rec.rho > slot.1.rho {
                        slot.1 = rec;
                    }
                }
                Err(e) => warnings.push(format!("{source}:{}: skipped malformed record: {e}", i + 1)),
            }
        }
    }
    let rows = by_m
        .into_iter()
        .map(|(m, (count, best))| {
            let bound = reference_bound(m);
            SummaryRow {
                m,
                count,
                max_rho: best.rho,
                bound,
                extremal_graph6: best.graph6,
                tight: bound.map(|b| (b - best.rho).abs() <= EXTREMAL_TOL),
                gap: bound.map(|b| b - best.rho),
            }
        })
        .collect();
    Summary { rows, warnings }
}

pub fn summarize_files(paths: &[impl AsRef<Path>]) -> Result<Summary> {
    let sources = paths
        .iter()
        .map(|p| {
            let p = p.as_ref();
            Ok((p.display().to_string(), fs::read_to_string(p)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize_text(&sources))
}
