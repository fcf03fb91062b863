//! Reports. The text rendering is produced from the same serialized value as
//! the machine (JSON) rendering, so both always carry identical data.

use std::collections::BTreeMap;

use gradfrob::algebra::GradedAlgebra;
use gradfrob::decide::{Decision, Faithfulness, TheoremAReport, Verdict, Witness};
use gradfrob::exactmath::{format_rational, PitConfig};
use gradfrob::group::GroupModel;
use serde::Serialize;
use serde_json::Value;

use crate::file::algebra_hash;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgebraInfo {
    pub sha256: String,
    pub dim: usize,
    pub group: String,
}

impl AlgebraInfo {
    pub fn of(a: &GradedAlgebra) -> Self {
        AlgebraInfo { sha256: algebra_hash(a), dim: a.dim(), group: a.group().to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PitInfo {
    pub strategy: String,
    pub seed: u64,
    pub trials: u32,
    pub sample_bound: u64,
}

impl From<&PitConfig> for PitInfo {
    fn from(c: &PitConfig) -> Self {
        PitInfo { strategy: c.strategy.to_string(), seed: c.seed, trials: c.trials, sample_bound: c.sample_bound }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaEntry {
    pub index: usize,
    pub name: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockDet {
    pub g: String,
    pub det: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateInfo {
    pub alpha: Vec<AlphaEntry>,
    pub block_dets: Vec<BlockDet>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessInfo {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cols: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<usize>,
    pub detail: String,
}

impl WitnessInfo {
    pub fn of(w: &Witness, group: &GroupModel) -> Self {
        let mut info = WitnessInfo {
            kind: w.kind().to_string(),
            g: None,
            rows: None,
            cols: None,
            rank: None,
            expected: None,
            detail: w.describe(group),
        };
        match w {
            Witness::DimensionMismatch { g, rows, cols } => {
                info.g = Some(group.format_element(g));
                info.rows = Some(*rows);
                info.cols = Some(*cols);
            }
            Witness::RankDeficiency { g, rank, expected } => {
                info.g = Some(group.format_element(g));
                info.rank = Some(*rank);
                info.expected = Some(*expected);
            }
            Witness::IdenticallyZeroDet { g } => info.g = Some(group.format_element(g)),
            Witness::ZeroSigmaComponent | Witness::NoSymmetricSolution => {}
        }
        info
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockRow {
    pub g: String,
    pub rows: usize,
    pub cols: usize,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankRow {
    pub g: String,
    pub rank: usize,
    pub expected: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub sigma: String,
    pub verdict: String,
    pub alpha: Option<String>,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionsInfo {
    pub full_invertible: bool,
    pub rank_condition: bool,
    pub block_condition: bool,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KoszulInfo {
    pub n: usize,
    pub q: String,
    pub dual_q: String,
    pub involution: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pit: Option<PitInfo>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessInfo>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub blocks: Vec<BlockRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub ranks: Vec<RankRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub scan: Vec<ScanRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conditions: Option<ConditionsInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub koszul: Option<KoszulInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Wall-clock milliseconds; only present when asked for.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

impl Report {
    pub fn new(command: &str, verdict: &str) -> Self {
        Report {
            command: command.to_string(),
            algebra: None,
            sigma: None,
            pit: None,
            verdict: verdict.to_string(),
            certificate: None,
            witness: None,
            blocks: Vec::new(),
            ranks: Vec::new(),
            violations: Vec::new(),
            scan: Vec::new(),
            conditions: None,
            koszul: None,
            note: None,
            timings_ms: None,
        }
    }

    /// Basis names of `a` label the certificate indices.
    pub fn from_decision(command: &str, a: &GradedAlgebra, d: &Decision) -> Self {
        let mut r = Report::new(command, if d.is_yes() { "yes" } else { "no" });
        r.algebra = Some(AlgebraInfo::of(a));
        match &d.verdict {
            Verdict::Yes(c) => {
                let block_group = block_group(a, d);
                r.certificate = Some(CertificateInfo {
                    alpha: c
                        .variables
                        .iter()
                        .zip(&c.alpha)
                        .map(|(&index, v)| AlphaEntry {
                            index,
                            name: a.names().get(index).cloned().unwrap_or_else(|| format!("u{index}")),
                            value: format_rational(v),
                        })
                        .collect(),
                    block_dets: c
                        .block_dets
                        .iter()
                        .map(|(g, det)| BlockDet { g: block_group.format_element(g), det: format_rational(det) })
                        .collect(),
                });
            }
            Verdict::No(w) => r.witness = Some(WitnessInfo::of(w, block_group(a, d))),
        }
        r.blocks = d
            .blocks
            .iter()
            .map(|b| BlockRow {
                g: block_group(a, d).format_element(&b.g),
                rows: b.rows,
                cols: b.cols,
                status: b.status.as_str().to_string(),
            })
            .collect();
        r
    }

    pub fn from_faithfulness(a: &GradedAlgebra, f: &Faithfulness) -> Self {
        let group = a.group();
        let mut r = Report::new("check-faithful", if f.is_faithful() { "yes" } else { "no" });
        r.algebra = Some(AlgebraInfo::of(a));
        r.witness = f.witness.as_ref().map(|w| WitnessInfo::of(w, group));
        r.ranks = f
            .ranks
            .iter()
            .map(|(g, rank, expected)| RankRow { g: group.format_element(g), rank: *rank, expected: *expected })
            .collect();
        r
    }

    pub fn conditions(t: &TheoremAReport) -> ConditionsInfo {
        ConditionsInfo {
            full_invertible: t.full_invertible,
            rank_condition: t.rank_condition,
            block_condition: t.block_condition,
            consistent: t.consistent(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        match format {
            Format::Machine => {
                let mut s = serde_json::to_string_pretty(&value).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => render_text(&value),
        }
    }
}

static TRIVIAL: std::sync::OnceLock<GroupModel> = std::sync::OnceLock::new();

/// Decisions about ungraded data carry degrees in the trivial group.
fn block_group<'a>(a: &'a GradedAlgebra, d: &Decision) -> &'a GroupModel {
    let ours = d.blocks.iter().all(|b| a.group().contains(&b.g));
    if ours {
        a.group()
    } else {
        TRIVIAL.get_or_init(GroupModel::trivial)
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => if *b { "yes" } else { "no" }.into(),
        Value::Number(n) => n.to_string(),
        other => other.to_string(),
    }
}

fn render_text(v: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = v {
        for (k, val) in map {
            render_field(&mut out, k, val, 0);
        }
    }
    out
}

fn render_field(out: &mut String, key: &str, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, val) in map {
                render_field(out, k, val, indent + 2);
            }
        }
        Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
            out.push_str(&format!("{pad}{key}:\n"));
            render_table(out, items, indent + 2);
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for x in items {
                out.push_str(&format!("{pad}  - {}\n", scalar(x)));
            }
        }
        other => out.push_str(&format!("{pad}{key}: {}\n", scalar(other))),
    }
}

fn render_table(out: &mut String, items: &[Value], indent: usize) {
    let mut headers: Vec<String> = Vec::new();
    for item in items {
        for k in item.as_object().expect("objects").keys() {
            if !headers.contains(k) {
                headers.push(k.clone());
            }
        }
    }
    let rows: Vec<Vec<String>> = items
        .iter()
        .map(|item| headers.iter().map(|h| item.get(h).map_or_else(|| "-".into(), scalar)).collect())
        .collect();
    let widths: Vec<usize> = headers
        .iter()
        .enumerate()
        .map(|(c, h)| rows.iter().map(|r| r[c].len()).chain([h.len()]).max().unwrap_or(0))
        .collect();
    let pad = " ".repeat(indent);
    let line = |cells: &[String]| {
        let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("{pad}{}\n", parts.join("  ").trim_end())
    };
    out.push_str(&line(&headers));
    for r in &rows {
        out.push_str(&line(r));
    }
}
