//! Report assembly and serialization.
//!
//! Reports are emitted by a purpose-built JSON writer rather than a generic
//! serializer so that (a) every float is printed with 17 significant digits,
//! which round-trips `f64` exactly, and (b) key order and layout are fixed,
//! so golden files are byte-stable. Reading reports back goes through
//! `serde_json`, which accepts the scientific-notation numbers the writer
//! produces.

use crate::classify::{ClassVerdict, GridSpec, RIndex};
use crate::falsify::{CounterexampleRecord, FalsifySummary};
use crate::path::SegMode;
use crate::theorems::{InputEcho, Status, Verdict};
use serde_json::Value;
use std::fmt::Write as _;

/// 17 significant digits: the smallest count that reconstructs every finite
/// `f64` bit-exactly.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        // Reports should never contain non-finite numbers; keep the file
        // valid JSON if one slips through.
        "null".to_string()
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out
}

/// Minimal JSON document model with deterministic field order.
#[derive(Debug, Clone)]
pub enum Json {
    Null,
    Bool(bool),
    Num(f64),
    Int(i64),
    UInt(u64),
    Str(String),
    Arr(Vec<Json>),
    Obj(Vec<(&'static str, Json)>),
}

impl Json {
    pub fn opt_num(v: Option<f64>) -> Json {
        v.map(Json::Num).unwrap_or(Json::Null)
    }

    pub fn opt_str(v: Option<&str>) -> Json {
        v.map(|s| Json::Str(s.to_string())).unwrap_or(Json::Null)
    }

    fn write(&self, out: &mut String, indent: usize) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => {
                let _ = write!(out, "{b}");
            }
            Json::Num(v) => out.push_str(&fmt_f64(*v)),
            Json::Int(v) => {
                let _ = write!(out, "{v}");
            }
            Json::UInt(v) => {
                let _ = write!(out, "{v}");
            }
            Json::Str(s) => {
                let _ = write!(out, "\"{}\"", escape(s));
            }
            Json::Arr(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push_str("[\n");
                for (i, item) in items.iter().enumerate() {
                    pad(out, indent + 1);
                    item.write(out, indent + 1);
                    if i + 1 < items.len() {
                        out.push(',');
                    }
                    out.push('\n');
                }
                pad(out, indent);
                out.push(']');
            }
            Json::Obj(fields) => {
                if fields.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push_str("{\n");
                for (i, (key, value)) in fields.iter().enumerate() {
                    pad(out, indent + 1);
                    let _ = write!(out, "\"{key}\": ");
                    value.write(out, indent + 1);
                    if i + 1 < fields.len() {
                        out.push(',');
                    }
                    out.push('\n');
                }
                pad(out, indent);
                out.push('}');
            }
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out.push('\n');
        out
    }
}

fn pad(out: &mut String, indent: usize) {
    for _ in 0..indent {
        out.push_str("  ");
    }
}

/// Classification results carried in the report summary.
#[derive(Debug, Clone)]
pub struct ClassificationSummary {
    pub verdicts: Vec<ClassVerdict>,
    pub index: Option<RIndex>,
    pub resolution: f64,
}

#[derive(Debug, Clone, Default)]
pub struct Summary {
    pub holds: usize,
    pub violated: usize,
    pub inconclusive: usize,
    pub exit_code: i32,
    pub chain_terms: Option<[f64; 6]>,
    pub classification: Option<ClassificationSummary>,
    pub falsify: Option<FalsifySummary>,
}

impl Summary {
    pub fn count(&mut self, verdicts: &[Verdict]) {
        for v in verdicts {
            match v.status {
                Status::Holds => self.holds += 1,
                Status::Violated => self.violated += 1,
                Status::Inconclusive => self.inconclusive += 1,
            }
        }
    }
}

/// The stable top-level report: tool_version, command_echo, verdicts,
/// counterexamples, summary.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub tool_version: String,
    pub command_echo: String,
    pub verdicts: Vec<Verdict>,
    pub counterexamples: Vec<CounterexampleRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command_echo: String) -> Self {
        Report {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command_echo,
            ..Report::default()
        }
    }
}

fn echo_json(e: &InputEcho) -> Json {
    Json::Obj(vec![
        ("func", Json::opt_str(e.func.as_deref())),
        ("func_label", Json::opt_str(e.func_label.as_deref())),
        ("func2", Json::opt_str(e.func2.as_deref())),
        ("func2_label", Json::opt_str(e.func2_label.as_deref())),
        ("a", Json::opt_num(e.a)),
        ("b", Json::opt_num(e.b)),
        ("phi", Json::opt_num(e.phi)),
        ("mode", Json::opt_str(e.mode.map(SegMode::as_str))),
        ("d", Json::opt_num(e.d)),
        ("r", Json::opt_num(e.r)),
        ("s", Json::opt_num(e.s)),
        ("variant", Json::opt_str(e.variant.as_deref())),
        ("atol", Json::Num(e.atol)),
        ("rtol", Json::Num(e.rtol)),
        ("quad_tol", Json::Num(e.quad_tol)),
        ("max_panels", Json::Int(e.max_panels as i64)),
        (
            "grid",
            e.grid
                .map(|g| {
                    Json::Arr(vec![
                        Json::Int(g.u as i64),
                        Json::Int(g.v as i64),
                        Json::Int(g.t as i64),
                    ])
                })
                .unwrap_or(Json::Null),
        ),
        ("resolution", Json::opt_num(e.resolution)),
        ("seed", e.seed.map(Json::UInt).unwrap_or(Json::Null)),
        ("budget", e.budget.map(Json::UInt).unwrap_or(Json::Null)),
    ])
}

fn verdict_json(v: &Verdict) -> Json {
    Json::Obj(vec![
        ("check_id", Json::Str(v.check_id.clone())),
        ("status", Json::Str(v.status.as_str().to_string())),
        ("lhs", Json::Num(v.lhs)),
        ("rhs", Json::Num(v.rhs)),
        ("margin", Json::Num(v.margin)),
        ("tolerance", Json::Num(v.tolerance)),
        ("regime", Json::Str(v.regime.clone())),
        ("inputs", echo_json(&v.inputs)),
    ])
}

fn counterexample_json(r: &CounterexampleRecord) -> Json {
    Json::Obj(vec![
        ("check_id", Json::Str(r.check_id.clone())),
        ("lhs", Json::Num(r.lhs)),
        ("rhs", Json::Num(r.rhs)),
        ("margin", Json::Num(r.margin)),
        ("seed", Json::UInt(r.seed)),
        ("trial_index", Json::UInt(r.trial_index)),
        ("inputs", echo_json(&r.inputs)),
    ])
}

fn index_json(idx: &RIndex) -> Json {
    match idx {
        RIndex::AtOrBelowScanFloor => Json::Obj(vec![
            ("kind", Json::Str("at-or-below-scan-floor".into())),
            ("token", Json::Str(idx.token())),
        ]),
        RIndex::AboveScanCeiling => Json::Obj(vec![
            ("kind", Json::Str("above-scan-ceiling".into())),
            ("token", Json::Str(idx.token())),
        ]),
        RIndex::Value(r) => Json::Obj(vec![
            ("kind", Json::Str("value".into())),
            ("r", Json::Num(*r)),
            ("token", Json::Str(idx.token())),
        ]),
    }
}

fn classification_json(c: &ClassificationSummary) -> Json {
    let verdicts = c
        .verdicts
        .iter()
        .map(|v| {
            Json::Obj(vec![
                ("r", Json::Str(v.r.to_string())),
                ("holds_on_grid", Json::Bool(v.holds_on_grid)),
                ("worst_margin", Json::Num(v.worst_margin)),
                ("witness_u", Json::Num(v.witness.u)),
                ("witness_v", Json::Num(v.witness.v)),
                ("witness_t", Json::Num(v.witness.t)),
                ("witness_lhs", Json::Num(v.witness.lhs)),
                ("witness_rhs", Json::Num(v.witness.rhs)),
                ("tolerance", Json::Num(v.tolerance)),
                ("qualifier", Json::Str(v.qualifier.to_string())),
                (
                    "grid",
                    Json::Arr(vec![
                        Json::Int(v.grid.u as i64),
                        Json::Int(v.grid.v as i64),
                        Json::Int(v.grid.t as i64),
                    ]),
                ),
            ])
        })
        .collect();
    Json::Obj(vec![
        ("verdicts", Json::Arr(verdicts)),
        (
            "r_index",
            c.index.as_ref().map(index_json).unwrap_or(Json::Null),
        ),
        ("resolution", Json::Num(c.resolution)),
    ])
}

fn summary_json(s: &Summary) -> Json {
    Json::Obj(vec![
        ("holds", Json::Int(s.holds as i64)),
        ("violated", Json::Int(s.violated as i64)),
        ("inconclusive", Json::Int(s.inconclusive as i64)),
        (
            "chain_terms",
            s.chain_terms
                .map(|t| Json::Arr(t.iter().map(|x| Json::Num(*x)).collect()))
                .unwrap_or(Json::Null),
        ),
        (
            "classification",
            s.classification
                .as_ref()
                .map(classification_json)
                .unwrap_or(Json::Null),
        ),
        (
            "falsify",
            s.falsify
                .map(|f| {
                    Json::Obj(vec![
                        ("trials", Json::UInt(f.trials)),
                        ("violations", Json::UInt(f.violations)),
                        ("skipped", Json::UInt(f.skipped)),
                        ("emitted", Json::Int(f.emitted as i64)),
                    ])
                })
                .unwrap_or(Json::Null),
        ),
        ("exit_code", Json::Int(s.exit_code as i64)),
    ])
}

impl Report {
    pub fn to_json(&self) -> String {
        Json::Obj(vec![
            ("tool_version", Json::Str(self.tool_version.clone())),
            ("command_echo", Json::Str(self.command_echo.clone())),
            (
                "verdicts",
                Json::Arr(self.verdicts.iter().map(verdict_json).collect()),
            ),
            (
                "counterexamples",
                Json::Arr(
                    self.counterexamples
                        .iter()
                        .map(counterexample_json)
                        .collect(),
                ),
            ),
            ("summary", summary_json(&self.summary)),
        ])
        .render()
    }

    /// One verdict per row; the header and field order are fixed. Falsifier
    /// runs emit counterexample rows with their own fixed header instead.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        let opt = |o: &Option<f64>| o.map(fmt_f64).unwrap_or_default();
        if !self.verdicts.is_empty() || self.counterexamples.is_empty() {
            w.write_record([
                "check_id",
                "status",
                "lhs",
                "rhs",
                "margin",
                "tolerance",
                "regime",
                "func",
                "func2",
                "a",
                "b",
                "phi",
                "mode",
                "r",
                "s",
                "variant",
            ])
            .expect("csv header");
            for v in &self.verdicts {
                let e = &v.inputs;
                w.write_record([
                    v.check_id.as_str(),
                    v.status.as_str(),
                    &fmt_f64(v.lhs),
                    &fmt_f64(v.rhs),
                    &fmt_f64(v.margin),
                    &fmt_f64(v.tolerance),
                    v.regime.as_str(),
                    e.func.as_deref().unwrap_or(""),
                    e.func2.as_deref().unwrap_or(""),
                    &opt(&e.a),
                    &opt(&e.b),
                    &opt(&e.phi),
                    e.mode.map(SegMode::as_str).unwrap_or(""),
                    &opt(&e.r),
                    &opt(&e.s),
                    e.variant.as_deref().unwrap_or(""),
                ])
                .expect("csv row");
            }
        } else {
            w.write_record([
                "check_id",
                "margin",
                "lhs",
                "rhs",
                "seed",
                "trial_index",
                "func",
                "func2",
                "a",
                "b",
                "phi",
                "mode",
                "r",
                "s",
            ])
            .expect("csv header");
            for r in &self.counterexamples {
                let e = &r.inputs;
                w.write_record([
                    r.check_id.as_str(),
                    &fmt_f64(r.margin),
                    &fmt_f64(r.lhs),
                    &fmt_f64(r.rhs),
                    &r.seed.to_string(),
                    &r.trial_index.to_string(),
                    e.func.as_deref().unwrap_or(""),
                    e.func2.as_deref().unwrap_or(""),
                    &opt(&e.a),
                    &opt(&e.b),
                    &opt(&e.phi),
                    e.mode.map(SegMode::as_str).unwrap_or(""),
                    &opt(&e.r),
                    &opt(&e.s),
                ])
                .expect("csv row");
            }
        }
        String::from_utf8(w.into_inner().expect("csv flush")).expect("csv utf8")
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReportParseError {
    #[error("report is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("report is missing field `{0}`")]
    Missing(&'static str),
}

/// Verdict fields as read back from a serialized report.
#[derive(Debug, Clone)]
pub struct ParsedVerdict {
    pub check_id: String,
    pub status: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub inputs: InputEcho,
}

/// Counterexample fields as read back from a serialized report.
#[derive(Debug, Clone)]
pub struct ParsedReport {
    pub tool_version: String,
    pub command_echo: String,
    pub verdicts: Vec<ParsedVerdict>,
    pub counterexamples: Vec<CounterexampleRecord>,
}

fn echo_from_value(v: &Value) -> InputEcho {
    let s = |k: &str| v.get(k).and_then(Value::as_str).map(str::to_string);
    let n = |k: &str| v.get(k).and_then(Value::as_f64);
    InputEcho {
        func: s("func"),
        func_label: s("func_label"),
        func2: s("func2"),
        func2_label: s("func2_label"),
        a: n("a"),
        b: n("b"),
        phi: n("phi"),
        mode: v
            .get("mode")
            .and_then(Value::as_str)
            .and_then(SegMode::parse),
        d: n("d"),
        r: n("r"),
        s: n("s"),
        variant: s("variant"),
        atol: n("atol").unwrap_or(0.0),
        rtol: n("rtol").unwrap_or(0.0),
        quad_tol: n("quad_tol").unwrap_or(crate::quad::DEFAULT_TOL),
        max_panels: v
            .get("max_panels")
            .and_then(Value::as_u64)
            .unwrap_or(crate::quad::DEFAULT_MAX_PANELS as u64) as usize,
        grid: v.get("grid").and_then(Value::as_array).and_then(|arr| {
            let g: Vec<usize> = arr
                .iter()
                .filter_map(Value::as_u64)
                .map(|x| x as usize)
                .collect();
            (g.len() == 3).then(|| GridSpec {
                u: g[0],
                v: g[1],
                t: g[2],
            })
        }),
        resolution: n("resolution"),
        seed: v.get("seed").and_then(Value::as_u64),
        budget: v.get("budget").and_then(Value::as_u64),
    }
}

impl ParsedReport {
    pub fn from_json(text: &str) -> Result<Self, ReportParseError> {
        let root: Value = serde_json::from_str(text)?;
        let verdicts = root
            .get("verdicts")
            .and_then(Value::as_array)
            .ok_or(ReportParseError::Missing("verdicts"))?
            .iter()
            .map(|v| ParsedVerdict {
                check_id: v
                    .get("check_id")
                    .and_then(Value::as_str)
                    .unwrap_or_default()
                    .to_string(),
                status: v
                    .get("status")
                    .and_then(Value::as_str)
                    .unwrap_or_default()
                    .to_string(),
                lhs: v.get("lhs").and_then(Value::as_f64).unwrap_or(f64::NAN),
                rhs: v.get("rhs").and_then(Value::as_f64).unwrap_or(f64::NAN),
                margin: v.get("margin").and_then(Value::as_f64).unwrap_or(f64::NAN),
                inputs: v.get("inputs").map(echo_from_value).unwrap_or_default(),
            })
            .collect();
        let counterexamples = root
            .get("counterexamples")
            .and_then(Value::as_array)
            .ok_or(ReportParseError::Missing("counterexamples"))?
            .iter()
            .map(|v| CounterexampleRecord {
                check_id: v
                    .get("check_id")
                    .and_then(Value::as_str)
                    .unwrap_or_default()
                    .to_string(),
                inputs: v.get("inputs").map(echo_from_value).unwrap_or_default(),
                lhs: v.get("lhs").and_then(Value::as_f64).unwrap_or(f64::NAN),
                rhs: v.get("rhs").and_then(Value::as_f64).unwrap_or(f64::NAN),
                margin: v.get("margin").and_then(Value::as_f64).unwrap_or(f64::NAN),
                seed: v.get("seed").and_then(Value::as_u64).unwrap_or(0),
                trial_index: v.get("trial_index").and_then(Value::as_u64).unwrap_or(0),
            })
            .collect();
        Ok(ParsedReport {
            tool_version: root
                .get("tool_version")
                .and_then(Value::as_str)
                .unwrap_or_default()
                .to_string(),
            command_echo: root
                .get("command_echo")
                .and_then(Value::as_str)
                .unwrap_or_default()
                .to_string(),
            verdicts,
            counterexamples,
        })
    }
}
