//! Output rendering. JSON output is one record per line with field order
//! fixed by the struct definitions, so identical runs emit identical bytes.
//! Markdown and CSV are flattened table views of the same records.

use anyhow::Context;
use clap::ValueEnum;
use serde::Serialize;
use std::fmt::Write as _;
use std::path::PathBuf;

use crate::record::*;
use gelfand_core::dn_model::DnReport;
use gelfand_core::hypothesis::{NodeAnalysis, VerdictRow};

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
    Csv,
}

pub trait TableRow {
    fn headers() -> &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

fn joined(v: &[i64]) -> String {
    v.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn verdict_cells(row: &VerdictRow) -> Vec<String> {
    vec![
        row.root_type.label(),
        row.k.to_string(),
        row.h.to_string(),
        row.subgroup.label().to_string(),
        opt(&row.multiplicity_free),
        opt(&row.scheme_rank),
        opt(&row.symmetric),
        row.predicted.to_string(),
        opt(&row.agreement),
        row.skipped.clone().unwrap_or_default(),
    ]
}

const VERDICT_HEADERS: &[&str] = &[
    "type",
    "k",
    "h",
    "subgroup",
    "multiplicity_free",
    "scheme_rank",
    "symmetric",
    "predicted",
    "agreement",
    "skipped",
];

impl TableRow for RootsRecord {
    fn headers() -> &'static [&'static str] {
        &["type", "rank", "coefficients", "reference", "matches"]
    }
    fn cells(&self) -> Vec<String> {
        vec![
            self.type_label.clone(),
            self.rank.to_string(),
            joined(&self.coefficients),
            joined(&self.reference),
            self.matches.to_string(),
        ]
    }
}

impl TableRow for VerifyRecord {
    fn headers() -> &'static [&'static str] {
        VERDICT_HEADERS
    }
    fn cells(&self) -> Vec<String> {
        verdict_cells(&self.row)
    }
}

impl TableRow for ClassifyRecord {
    fn headers() -> &'static [&'static str] {
        VERDICT_HEADERS
    }
    fn cells(&self) -> Vec<String> {
        verdict_cells(&self.row)
    }
}

impl TableRow for SelfCheckRecord {
    fn headers() -> &'static [&'static str] {
        &[
            "type",
            "k",
            "h",
            "quotient_order",
            "consistent",
            "norm_matches_double_cosets",
        ]
    }
    fn cells(&self) -> Vec<String> {
        vec![
            self.type_label.clone(),
            self.k.to_string(),
            self.h.to_string(),
            self.quotient_order.to_string(),
            self.consistent.to_string(),
            self.norm_matches_double_cosets.to_string(),
        ]
    }
}

impl TableRow for HypothesisRecord {
    fn headers() -> &'static [&'static str] {
        &[
            "type",
            "k",
            "coefficient",
            "qp_index",
            "shift2",
            "shift3",
            "q_commutative",
            "p_commutative",
            "path",
            "predicted_p",
            "predicted_q",
            "predicted_h",
            "pointwise_only",
        ]
    }
    fn cells(&self) -> Vec<String> {
        let a: &NodeAnalysis = &self.analysis;
        vec![
            self.type_label.clone(),
            a.k.to_string(),
            a.marked_coefficient.to_string(),
            a.qp_index.to_string(),
            a.shift_bounded_by_two.to_string(),
            a.shift_bounded_by_three.to_string(),
            a.q_commutative.to_string(),
            a.p_commutative.to_string(),
            format!("{:?}", a.path),
            a.predicted_p.to_string(),
            a.predicted_q.to_string(),
            a.predicted_h.to_string(),
            a.pointwise_only.to_string(),
        ]
    }
}

impl TableRow for DnRecord {
    fn headers() -> &'static [&'static str] {
        &[
            "n",
            "k",
            "group_order",
            "parabolic_order",
            "normalizer_order",
            "degree",
            "scheme_rank",
            "q_gelfand",
            "q_predicted",
            "p_gelfand",
            "p_predicted",
            "agrees",
            "pattern_ok",
            "sum_ok",
            "vq_ok",
            "witness",
            "witness_value",
        ]
    }
    fn cells(&self) -> Vec<String> {
        let r: &DnReport = &self.report;
        vec![
            r.n.to_string(),
            r.k.to_string(),
            r.group_order.to_string(),
            r.parabolic_order.to_string(),
            r.normalizer_order.to_string(),
            r.degree.to_string(),
            r.scheme_rank.to_string(),
            r.q_gelfand.to_string(),
            r.q_predicted.to_string(),
            r.p_gelfand.to_string(),
            r.p_predicted.to_string(),
            r.agrees.to_string(),
            r.pairing_pattern_ok.to_string(),
            r.sum_matches_coset_character.to_string(),
            r.vq_self_pairings_one.to_string(),
            r.witness
                .map(|(i, j)| format!("({i},{j})"))
                .unwrap_or_default(),
            opt(&r.witness_value),
        ]
    }
}

fn markdown_table<T: TableRow>(rows: &[T]) -> String {
    let mut out = String::new();
    let headers = T::headers();
    let _ = writeln!(out, "| {} |", headers.join(" | "));
    let _ = writeln!(
        out,
        "|{}",
        headers.iter().map(|_| " --- |").collect::<String>()
    );
    for r in rows {
        let _ = writeln!(out, "| {} |", r.cells().join(" | "));
    }
    out
}

fn csv_table<T: TableRow>(rows: &[T]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(T::headers())?;
    for r in rows {
        w.write_record(r.cells())?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Collects the JSON-lines form of everything pushed through it and, when a
/// records path was given, writes the whole run's lines there at the end.
pub struct Sink {
    format: Format,
    records: Option<PathBuf>,
    lines: Vec<String>,
}

impl Sink {
    pub fn new(format: Format, records: Option<PathBuf>) -> Sink {
        Sink {
            format,
            records,
            lines: Vec::new(),
        }
    }

    pub fn push_table<T: TableRow + Serialize>(
        &mut self,
        title: &str,
        rows: &[T],
    ) -> anyhow::Result<()> {
        for r in rows {
            self.lines
                .push(serde_json::to_string(r).context("record serialization")?);
        }
        match self.format {
            Format::Json => {
                let n = rows.len();
                for line in &self.lines[self.lines.len() - n..] {
                    println!("{line}");
                }
            }
            Format::Markdown => {
                println!("## {title}");
                println!();
                print!("{}", markdown_table(rows));
                println!();
            }
            Format::Csv => {
                print!("{}", csv_table(rows)?);
            }
        }
        Ok(())
    }

    pub fn finish(self) -> anyhow::Result<()> {
        if let Some(path) = &self.records {
            let mut body = self.lines.join("\n");
            if !body.is_empty() {
                body.push('\n');
            }
            std::fs::write(path, body)
                .with_context(|| format!("writing records to {}", path.display()))?;
        }
        Ok(())
    }
}
