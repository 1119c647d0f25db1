//! Table, CSV, and JSON rendering. Numbers are printed with 12 significant
//! digits everywhere except JSON, which keeps full round-trip precision.

use qglap::comparison::{ConditionReport, DominationReport};
use qglap::spectrum::{Band, EigenvalueList, Truncation};
use qglap::{MetricGraph, StructureReport};
use serde_json::json;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
}

/// %.12g-style formatting: 12 significant digits, fixed point where
/// reasonable, scientific otherwise.
pub fn fmt_sig(x: f64) -> String {
    const SIG: i32 = 12;
    if x == 0.0 {
        return "0".to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-4..SIG).contains(&exp) {
        format!("{:.*e}", (SIG - 1) as usize, x)
    } else {
        let decimals = (SIG - 1 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    }
}

fn truncation_label(t: Truncation) -> String {
    match t {
        Truncation::ByCount(c) => format!("count = {c}"),
        Truncation::ByKmax(k) => format!("kmax = {}", fmt_sig(k)),
    }
}

fn band_json(band: &Band) -> serde_json::Value {
    match band {
        Band::Arc { mu, branch, k } => json!({
            "kind": "ARC",
            "mu": mu,
            "branch": match branch {
                qglap::spectrum::ArcBranch::Plus => "+",
                qglap::spectrum::ArcBranch::Minus => "-",
            },
            "k": k,
        }),
        other => json!(other.to_string()),
    }
}

pub fn spectrum(list: &EigenvalueList, method: &str, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut out = String::from("index,sqrt_lambda,lambda,multiplicity,band\n");
            for (i, e) in list.entries.iter().enumerate() {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    i,
                    fmt_sig(e.sqrt_lambda),
                    fmt_sig(e.lambda),
                    e.multiplicity,
                    e.band
                ));
            }
            out
        }
        OutputFormat::Json => {
            let entries: Vec<serde_json::Value> = list
                .entries
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    json!({
                        "index": i,
                        "sqrt_lambda": e.sqrt_lambda,
                        "lambda": e.lambda,
                        "multiplicity": e.multiplicity,
                        "band": band_json(&e.band),
                    })
                })
                .collect();
            let value = json!({
                "conditions": list.conditions.to_string(),
                "method": method,
                "truncation": truncation_label(list.truncation),
                "entries": entries,
            });
            serde_json::to_string_pretty(&value).expect("spectrum serializes") + "\n"
        }
        OutputFormat::Table => {
            let mut out = format!(
                "# conditions: {}   method: {}   truncation: {}\n",
                list.conditions,
                method,
                truncation_label(list.truncation)
            );
            out.push_str(&format!(
                "{:<6} {:<18} {:<18} {:<13} band\n",
                "index", "sqrt_lambda", "lambda", "multiplicity"
            ));
            for (i, e) in list.entries.iter().enumerate() {
                out.push_str(&format!(
                    "{:<6} {:<18} {:<18} {:<13} {}\n",
                    i,
                    fmt_sig(e.sqrt_lambda),
                    fmt_sig(e.lambda),
                    e.multiplicity,
                    e.band
                ));
            }
            out
        }
    }
}

pub fn structure(g: &MetricGraph, report: &StructureReport, format: OutputFormat) -> String {
    let equilateral = report
        .equilateral_length
        .map(fmt_sig)
        .unwrap_or_else(|| "-".to_string());
    match format {
        OutputFormat::Csv => format!(
            "vertices,edges,is_bipartite,equilateral_length,cycle_rank,total_length\n{},{},{},{},{},{}\n",
            g.vertex_count(),
            g.edge_count(),
            report.is_bipartite,
            if report.equilateral_length.is_some() { equilateral.clone() } else { String::new() },
            report.cycle_rank,
            fmt_sig(report.total_length)
        ),
        OutputFormat::Json => {
            let value = json!({
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "is_bipartite": report.is_bipartite,
                "equilateral_length": report.equilateral_length,
                "cycle_rank": report.cycle_rank,
                "total_length": report.total_length,
            });
            serde_json::to_string_pretty(&value).expect("structure serializes") + "\n"
        }
        OutputFormat::Table => format!(
            "vertices            {}\nedges               {}\nis_bipartite        {}\nequilateral_length  {}\ncycle_rank          {}\ntotal_length        {}\n",
            g.vertex_count(),
            g.edge_count(),
            report.is_bipartite,
            equilateral,
            report.cycle_rank,
            fmt_sig(report.total_length)
        ),
    }
}

pub fn conditions(report: &ConditionReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => format!(
            "cond_4_11,cond_4_2,shift,violations\n{},{},{},{}\n",
            report.cond_4_11,
            report.cond_4_2,
            report.shift,
            report.witnesses.len()
        ),
        OutputFormat::Json => {
            let witnesses: Vec<serde_json::Value> = report
                .witnesses
                .iter()
                .map(|w| {
                    json!({
                        "family": match w.family {
                            qglap::comparison::ConditionFamily::UpperFamily => "4.11",
                            qglap::comparison::ConditionFamily::LowerFamily => "4.2",
                        },
                        "j": w.j,
                        "mu_j": w.mu_j,
                        "bound": w.bound,
                    })
                })
                .collect();
            let value = json!({
                "cond_4_11": report.cond_4_11,
                "cond_4_2": report.cond_4_2,
                "shift": report.shift,
                "witnesses": witnesses,
            });
            serde_json::to_string_pretty(&value).expect("conditions serialize") + "\n"
        }
        OutputFormat::Table => {
            let mut out = format!(
                "cond_4_11  {}\ncond_4_2   {}\nshift      {}\n",
                report.cond_4_11, report.cond_4_2, report.shift
            );
            for w in &report.witnesses {
                let (family, relation) = match w.family {
                    qglap::comparison::ConditionFamily::UpperFamily => ("4.11", "exceeds"),
                    qglap::comparison::ConditionFamily::LowerFamily => ("4.2", "falls below"),
                };
                out.push_str(&format!(
                    "violated ({family}): mu_{} = {} {relation} bound {}\n",
                    w.j,
                    fmt_sig(w.mu_j),
                    fmt_sig(w.bound)
                ));
            }
            out
        }
    }
}

pub fn comparison(
    conditions: &ConditionReport,
    domination: &DominationReport,
    format: OutputFormat,
) -> String {
    match format {
        OutputFormat::Csv => {
            let (vk, vst, vast) = domination
                .first_violation
                .map(|v| (v.k.to_string(), fmt_sig(v.lambda_st), fmt_sig(v.lambda_ast)))
                .unwrap_or_default();
            format!(
                "cond_4_11,cond_4_2,shift,holds,checked_count,first_violation_k,first_violation_lambda_st,first_violation_lambda_ast\n{},{},{},{},{},{},{},{}\n",
                conditions.cond_4_11,
                conditions.cond_4_2,
                conditions.shift,
                domination.holds,
                domination.checked_count,
                vk,
                vst,
                vast
            )
        }
        OutputFormat::Json => {
            let first_violation = domination.first_violation.map(|v| {
                json!({
                    "k": v.k,
                    "lambda_st": v.lambda_st,
                    "lambda_ast": v.lambda_ast,
                })
            });
            let value = json!({
                "cond_4_11": conditions.cond_4_11,
                "cond_4_2": conditions.cond_4_2,
                "shift": conditions.shift,
                "holds": domination.holds,
                "first_violation": first_violation,
                "checked_count": domination.checked_count,
                "tolerance": domination.tolerance,
            });
            serde_json::to_string_pretty(&value).expect("comparison serializes") + "\n"
        }
        OutputFormat::Table => {
            let mut out = format!(
                "cond_4_11      {}\ncond_4_2       {}\nshift          {}\nchecked_count  {}\nholds          {}\n",
                conditions.cond_4_11,
                conditions.cond_4_2,
                conditions.shift,
                domination.checked_count,
                domination.holds
            );
            match domination.first_violation {
                Some(v) => out.push_str(&format!(
                    "first_violation  k = {}: lambda_st = {} < lambda_ast = {}\n",
                    v.k,
                    fmt_sig(v.lambda_st),
                    fmt_sig(v.lambda_ast)
                )),
                None => out.push_str("first_violation  none\n"),
            }
            out
        }
    }
}
