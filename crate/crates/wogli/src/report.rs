//! Accuracy and fluency reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use wogli_core::analysis::{
    accuracy, group_specs, majority_vote, pll_aggregate, AnalysisError, GroupFamily, PredictionSet, SdKind,
    TiePolicy,
};
use wogli_core::PairRecord;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "scope", rename_all = "kebab-case")]
pub enum ReportRow {
    /// Accuracy averaged over runs.
    Runs { group: String, n: usize, k: Vec<usize>, per_run: Vec<f64>, accuracy: f64, sd: f64 },
    /// Accuracy of the majority vote over runs.
    Ensemble { group: String, n: usize, k: usize, accuracy: f64 },
    /// Pseudo-log-likelihood per sentence group.
    Pll { group: String, n: usize, mean: f64, sd: f64 },
}

pub struct ReportOptions {
    pub family: GroupFamily,
    pub sd: SdKind,
    pub tie: TiePolicy,
}

pub fn build_report(
    gold: &[PairRecord],
    preds: &PredictionSet,
    scores: Option<&BTreeMap<String, f64>>,
    options: &ReportOptions,
) -> Result<Vec<ReportRow>, AnalysisError> {
    let specs = group_specs(options.family);
    let mut rows = Vec::new();
    for spec in &specs {
        let r = accuracy(gold, preds, spec, options.sd)?;
        rows.push(ReportRow::Runs {
            group: r.group,
            n: r.n,
            k: r.correct,
            per_run: r.per_run,
            accuracy: r.mean,
            sd: r.sd,
        });
    }
    if preds.runs() > 1 {
        let vote = majority_vote(preds, options.tie)?;
        for spec in &specs {
            let r = accuracy(gold, &vote, spec, options.sd)?;
            rows.push(ReportRow::Ensemble { group: r.group, n: r.n, k: r.correct[0], accuracy: r.mean });
        }
    }
    if let Some(scores) = scores {
        for (group, s) in pll_aggregate(scores, gold, options.sd)? {
            rows.push(ReportRow::Pll { group, n: s.n, mean: s.mean, sd: s.sd });
        }
    }
    Ok(rows)
}

pub fn render_json_lines(rows: &[ReportRow]) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&serde_json::to_string(row).expect("report rows serialize"));
        out.push('\n');
    }
    out
}

pub fn render_text(rows: &[ReportRow]) -> String {
    let mut out = String::new();
    for row in rows {
        match row {
            ReportRow::Runs { group, n, k, per_run, accuracy, sd } => {
                let runs: Vec<String> = per_run.iter().map(|a| format!("{a:.4}")).collect();
                let _ = writeln!(
                    out,
                    "runs      {group:<28} n={n:<6} k={k:?} acc={accuracy:.4} sd={sd:.4} per_run=[{}]",
                    runs.join(", ")
                );
            }
            ReportRow::Ensemble { group, n, k, accuracy } => {
                let _ = writeln!(out, "ensemble  {group:<28} n={n:<6} k={k} acc={accuracy:.4}");
            }
            ReportRow::Pll { group, n, mean, sd } => {
                let _ = writeln!(out, "pll       {group:<28} n={n:<6} mean={mean:.3} sd={sd:.3}");
            }
        }
    }
    out
}
