//! The individual commands. Each produces the full artifact text in memory;
//! nothing is written here.

use anyhow::{Context, Result};
use serde_json::{json, Value};
use spectra_core::arrangement::{
    arrangement_spectrum, build_arrangement, integrality_scan, lift_eigenvalues, scan_csv,
    verify_quotient_identity, ScanRow,
};
use spectra_core::cayley::build_cayley;
use spectra_core::characters::{character_table_capped, normal_cayley_spectrum};
use spectra_core::exact::format_polynomial;
use spectra_core::genset::{GeneratingSet, GensetSpec};
use spectra_core::spectral::{ExactOutcome, IntegralityReport, Verdict};
use spectra_core::{Budget, Spectrum};

use crate::job::{ArrangementMode, CayleyMode, Command, Format, JobDescriptor};
use crate::{verify, Artifact};

pub fn execute(job: &JobDescriptor) -> Result<Artifact> {
    let budget = job.budget();
    match &job.command {
        Command::Cayley { n, genset, mode } => run_cayley(*n, genset, *mode, &budget),
        Command::Arrangement { n, k, r, mode } => run_arrangement(*n, *k, *r, *mode, job.format, &budget),
        Command::Charset { n } => run_charset(*n, job.format.unwrap_or(Format::Csv), &budget),
        Command::Verify { max_n } => Ok(verify::run_verify(*max_n, job.seed, &budget)),
        Command::Scan { max_n } => run_scan(*max_n, job.format.unwrap_or(Format::Csv), &budget),
    }
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn ok(content: String) -> Artifact {
    Artifact { content, exit_code: 0 }
}

/// Spectrum by characters for normal sets, otherwise by exact linear
/// algebra (numeric when non-integral or above the exact budget).
pub fn cayley_spectrum(s: &GeneratingSet, budget: &Budget) -> Result<(Spectrum, &'static str)> {
    if s.is_normal() && s.is_inverse_closed() && !s.contains_identity() {
        return Ok((normal_cayley_spectrum(s)?, "characters"));
    }
    let g = build_cayley(s, budget)?;
    if g.vertex_count() <= budget.exact_vertices {
        if let ExactOutcome::Spectrum(sp) = g.spectrum_exact(budget)? {
            return Ok((sp, "exact"));
        }
    }
    Ok((g.spectrum_numeric(budget)?, "numeric"))
}

fn integrality_json(n: usize, label: &str, report: &IntegralityReport, method: &str) -> Value {
    let mut value = json!({
        "n": n,
        "genset": label,
        "verdict": report.verdict.to_string(),
        "exact": report.exact,
        "method": method,
    });
    let map = value.as_object_mut().expect("object");
    if let Some(d) = report.max_deviation {
        map.insert("max_deviation".into(), json!(format!("{d:.3e}")));
    }
    if let Some(s) = &report.spectrum {
        map.insert("spectrum".into(), s.to_json(n, label)["spectrum"].clone());
    }
    if let Some(c) = &report.certificate {
        map.insert(
            "certificate".into(),
            json!({
                "vertex": c.vertex,
                "minimal_polynomial": format_polynomial(&c.minimal_polynomial),
                "integer_roots": c.integer_roots,
                "irrational_factor": format_polynomial(&c.residual),
            }),
        );
    }
    if let Some(note) = &report.note {
        map.insert("note".into(), json!(note));
    }
    value
}

pub fn run_cayley(n: usize, spec: &GensetSpec, mode: CayleyMode, budget: &Budget) -> Result<Artifact> {
    let s = spec.build_capped(n, budget.group_degree)?;
    let label = spec.to_string();
    match mode {
        CayleyMode::Export => {
            let g = build_cayley(&s, budget)?;
            Ok(ok(g.edge_list()))
        }
        CayleyMode::Spectrum => {
            let (spectrum, method) = cayley_spectrum(&s, budget)?;
            let mut value = spectrum.to_json(n, &label);
            value["method"] = json!(method);
            Ok(ok(pretty(&value)))
        }
        CayleyMode::Integrality => {
            let (report, method) = if s.is_normal() && s.is_inverse_closed() && !s.contains_identity() {
                let spectrum = normal_cayley_spectrum(&s)?;
                let report = IntegralityReport {
                    verdict: Verdict::Integral,
                    exact: true,
                    max_deviation: Some(0.0),
                    spectrum: Some(spectrum),
                    certificate: None,
                    note: None,
                };
                (report, "characters")
            } else {
                let g = build_cayley(&s, budget)?;
                let report = g.verify_integrality(budget);
                let method = if report.exact { "exact" } else { "numeric" };
                (report, method)
            };
            let exit_code = match report.verdict {
                Verdict::Undecided => 2,
                _ => 0,
            };
            Ok(Artifact {
                content: pretty(&integrality_json(n, &label, &report, method)),
                exit_code,
            })
        }
    }
}

pub fn run_arrangement(
    n: usize,
    k: usize,
    r: usize,
    mode: ArrangementMode,
    format: Option<Format>,
    budget: &Budget,
) -> Result<Artifact> {
    let context = || format!("arrangement n = {n}, k = {k}, r = {r}");
    match mode {
        ArrangementMode::Export => Ok(ok(build_arrangement(n, k, r, budget).with_context(context)?.edge_list())),
        ArrangementMode::Spectrum => {
            let a = build_arrangement(n, k, r, budget).with_context(context)?;
            let s = arrangement_spectrum(&a, budget).with_context(context)?;
            let value = json!({
                "n": n,
                "k": k,
                "r": r,
                "exact": s.is_exact(),
                "observational": r >= 2,
                "spectrum": s.to_json(n, "")["spectrum"].clone(),
            });
            Ok(ok(pretty(&value)))
        }
        ArrangementMode::QuotientCheck => {
            let id = verify_quotient_identity(n, k, r, budget).with_context(context)?;
            let exit_code = if id.holds { 0 } else { 1 };
            let content = match format {
                Some(Format::Json) => pretty(&json!({
                    "n": n,
                    "k": k,
                    "r": r,
                    "factor": id.factor,
                    "holds": id.holds,
                    "counterexample": id.counterexample.map(|(i, j, q, a)| json!({"row": i, "col": j, "q": q, "a": a})),
                })),
                _ => format!("{id}\n"),
            };
            Ok(Artifact { content, exit_code })
        }
        ArrangementMode::Lift => {
            let report = lift_eigenvalues(n, k, r, budget).with_context(context)?;
            let entries: Vec<Value> = report
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "eigenvalue": format_value(e.eigenvalue, report.exact),
                        "multiplicity": e.multiplicity,
                        "lifted": format_value(e.lifted, report.exact),
                        "host_multiplicity": e.host_multiplicity,
                    })
                })
                .collect();
            let value = json!({
                "n": n,
                "k": k,
                "r": r,
                "factor": report.factor,
                "exact": report.exact,
                "contained": report.contained,
                "partial": report.partial,
                "lift": entries,
            });
            let exit_code = if report.partial.is_some() {
                2
            } else if report.contained {
                0
            } else {
                1
            };
            Ok(Artifact {
                content: pretty(&value),
                exit_code,
            })
        }
    }
}

fn format_value(x: f64, exact: bool) -> Value {
    if exact {
        json!(x.round() as i64)
    } else {
        json!(format!("{x:.12}"))
    }
}

pub fn run_charset(n: usize, format: Format, budget: &Budget) -> Result<Artifact> {
    let table = character_table_capped(n, budget.character_degree)?;
    table.check_orthogonality()?;
    Ok(ok(match format {
        Format::Json => pretty(&json!({
            "n": n,
            "partitions": table.partitions().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "classes": table.classes().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "values": table.values(),
        })),
        _ => table.to_csv(),
    }))
}

fn scan_json(rows: &[ScanRow]) -> Value {
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "k": r.k,
                "r": r.r,
                "vertices": r.vertices,
                "degree": r.degree,
                "integral": r.verdict.map(|v| v.to_string()),
                "exact": r.exact,
                "observational": r.observational(),
            })
        })
        .collect();
    json!({ "cells": rows })
}

pub fn run_scan(max_n: usize, format: Format, budget: &Budget) -> Result<Artifact> {
    let rows = integrality_scan(max_n, budget);
    Ok(ok(match format {
        Format::Json => pretty(&scan_json(&rows)),
        _ => scan_csv(&rows),
    }))
}
