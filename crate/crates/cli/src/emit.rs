//! Report rendering: JSON, per-kind CSV and Markdown.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

use crate::config::Format;
use crate::records::*;

/// Pretty JSON with a trailing newline.
pub fn to_json(report: &RunReport) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json(text: &str) -> Result<RunReport> {
    serde_json::from_str(text).context("not a report file")
}

fn opt(n: Option<Num>) -> String {
    n.map(|n| n.to_string()).unwrap_or_default()
}

fn finite(n: Num) -> String {
    if n.0.is_finite() {
        n.to_string()
    } else {
        String::new()
    }
}

/// `(kind, header, rows)`.
pub type Table = (&'static str, Vec<&'static str>, Vec<Vec<String>>);

/// One table per record kind.
pub fn tables(report: &RunReport) -> Vec<Table> {
    let identities = report
        .identities
        .iter()
        .map(|r| {
            vec![
                r.identity.clone(),
                r.function.clone(),
                finite(r.a),
                finite(r.b),
                finite(r.lhs),
                finite(r.rhs),
                opt(r.residual),
                finite(r.quadrature_error),
                r.evaluations.to_string(),
                r.status.tag().into(),
            ]
        })
        .collect();
    let bounds = report
        .bounds
        .iter()
        .map(|r| {
            let h = &r.hypothesis;
            let w = h.counterexample.as_ref();
            vec![
                r.theorem.clone(),
                r.function.clone(),
                finite(r.a),
                finite(r.b),
                opt(r.exponent),
                opt(r.lhs),
                finite(r.rhs),
                opt(r.margin),
                opt(r.ratio),
                h.verdict.clone(),
                h.derivative_order.to_string(),
                finite(h.power),
                finite(h.max_violation),
                opt(w.map(|w| w.x)),
                opt(w.map(|w| w.y)),
                opt(w.map(|w| w.lambda)),
                r.status.tag().into(),
            ]
        })
        .collect();
    let applications = report
        .applications
        .iter()
        .map(|r| {
            vec![
                r.theorem.clone(),
                r.variant.clone(),
                finite(r.a),
                finite(r.b),
                finite(r.alpha),
                opt(r.exponent),
                finite(r.lhs),
                finite(r.rhs),
                r.note.clone(),
                r.status.tag().into(),
            ]
        })
        .collect();
    let searches = report
        .searches
        .iter()
        .map(|r| {
            vec![
                r.kind.clone(),
                r.theorem.clone(),
                r.function.clone(),
                finite(r.a),
                finite(r.b),
                opt(r.exponent),
                finite(r.range[0]),
                finite(r.range[1]),
                r.params.iter().map(Num::to_string).collect::<Vec<_>>().join(" "),
                opt(r.objective),
                r.iterations.to_string(),
                r.converged.to_string(),
                r.fallback.to_string(),
                r.status.tag().into(),
            ]
        })
        .collect();
    let s = report.summary;
    let summary = vec![vec![
        report.command.clone(),
        s.total.to_string(),
        s.pass.to_string(),
        s.fail.to_string(),
        s.refuted_hypothesis.to_string(),
        s.non_converged.to_string(),
        s.exit_code().to_string(),
    ]];
    vec![
        (
            "identities",
            vec![
                "identity",
                "function",
                "a",
                "b",
                "lhs",
                "rhs",
                "residual",
                "quadrature_error",
                "evaluations",
                "status",
            ],
            identities,
        ),
        (
            "bounds",
            vec![
                "theorem",
                "function",
                "a",
                "b",
                "exponent",
                "lhs",
                "rhs",
                "margin",
                "ratio",
                "hypothesis",
                "derivative_order",
                "power",
                "max_violation",
                "witness_x",
                "witness_y",
                "witness_lambda",
                "status",
            ],
            bounds,
        ),
        (
            "applications",
            vec![
                "theorem", "variant", "a", "b", "alpha", "exponent", "lhs", "rhs", "note", "status",
            ],
            applications,
        ),
        (
            "searches",
            vec![
                "kind",
                "theorem",
                "function",
                "a",
                "b",
                "exponent",
                "range_lo",
                "range_hi",
                "params",
                "objective",
                "iterations",
                "converged",
                "fallback",
                "status",
            ],
            searches,
        ),
        (
            "summary",
            vec![
                "command",
                "total",
                "pass",
                "fail",
                "refuted_hypothesis",
                "non_converged",
                "exit_code",
            ],
            summary,
        ),
    ]
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Path of the CSV file holding `kind` when the report goes to `out`.
pub fn csv_path(out: &Path, kind: &str) -> PathBuf {
    let stem = out
        .file_stem()
        .map_or_else(|| "report".into(), |s| s.to_string_lossy().into_owned());
    out.with_file_name(format!("{stem}.{kind}.csv"))
}

/// CSV files keyed by kind. Empty kinds are omitted; the summary is always
/// present.
pub fn to_csv(report: &RunReport) -> Result<Vec<(&'static str, String)>> {
    tables(report)
        .into_iter()
        .filter(|(kind, _, rows)| *kind == "summary" || !rows.is_empty())
        .map(|(kind, header, rows)| Ok((kind, csv_text(&header, &rows)?)))
        .collect()
}

fn md_row(cells: &[String]) -> String {
    let escaped: Vec<String> = cells.iter().map(|c| c.replace('|', "\\|")).collect();
    format!("| {} |\n", escaped.join(" | "))
}

pub fn to_markdown(report: &RunReport) -> String {
    let mut s = format!("# hhv report: {}\n\n", report.command);
    s += &format!("{} {}, timestamp {}\n\n", report.tool, report.version, report.timestamp);
    for (kind, header, rows) in tables(report).into_iter().rev() {
        if kind != "summary" && rows.is_empty() {
            continue;
        }
        s += &format!("## {kind}\n\n");
        let header: Vec<String> = header.iter().map(|h| h.to_string()).collect();
        s += &md_row(&header);
        s += &md_row(&vec!["---".to_string(); header.len()]);
        for r in &rows {
            s += &md_row(r);
        }
        s.push('\n');
    }
    s
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// Writes `report` in `format` to `out`, or to stdout when `out` is `None`.
pub fn emit(report: &RunReport, format: Format, out: Option<&Path>) -> Result<()> {
    match (format, out) {
        (Format::Json, Some(p)) => write_file(p, &to_json(report)?),
        (Format::Markdown, Some(p)) => write_file(p, &to_markdown(report)),
        (Format::Csv, Some(p)) => {
            for (kind, text) in to_csv(report)? {
                write_file(&csv_path(p, kind), &text)?;
            }
            Ok(())
        }
        (format, None) => {
            let text = match format {
                Format::Json => to_json(report)?,
                Format::Markdown => to_markdown(report),
                Format::Csv => to_csv(report)?
                    .into_iter()
                    .map(|(kind, text)| format!("# {kind}\n{text}"))
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).context("cannot write to stdout")?;
            stdout.flush().context("cannot write to stdout")
        }
    }
}
