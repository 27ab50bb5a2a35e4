//! The machine-readable result document and its two encodings.
//!
//! One JSON document (or CSV table) per invocation, built for diffing:
//! field order is fixed at declaration order, floats are always printed in
//! scientific notation with 17 significant digits (which round-trips every
//! f64 exactly), and integers are never widened to floats. The CSV writer
//! walks the same tree with the same float formatter, so the numeric
//! payloads of both encodings agree byte for byte.

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::Value;
use std::io;

pub const SCHEMA_VERSION: &str = "latqd/1";

/// Everything a run can report. Exactly one of the payload stanzas
/// (`coefficients`, `degree`, `search`, `verify`, `bench`) is present per
/// command; absent fields are omitted from the output entirely.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub schema_version: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rule: Option<RuleStanza>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub engine: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub coefficients: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degree: Option<DegreeStanza>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub search: Option<SearchStanza>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verify: Option<VerifyStanza>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bench: Option<BenchStanza>,
    /// Wall-clock cost; only on commands whose output may vary run to run
    /// anyway. Deterministic reports (search, verify) omit it so that
    /// equal inputs give byte-equal documents.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing: Option<TimingStanza>,
}

impl ResultDocument {
    pub fn base() -> Self {
        ResultDocument {
            schema_version: SCHEMA_VERSION.to_owned(),
            rule: None,
            d: None,
            engine: None,
            coefficients: None,
            residual: None,
            tolerance: None,
            degree: None,
            search: None,
            verify: None,
            bench: None,
            timing: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleStanza {
    pub n: u64,
    pub s: usize,
    pub g: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeStanza {
    pub rho: u64,
    pub exact: bool,
    pub dmax: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<WitnessStanza>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessStanza {
    pub k: Vec<i64>,
    pub norm: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchStanza {
    pub n: u64,
    pub s: usize,
    pub strategy: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub best: BestStanza,
    pub runner_ups: Vec<RunnerUpStanza>,
    pub visited: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestStanza {
    pub g: Vec<u64>,
    pub rho: u64,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<WitnessStanza>,
    pub minimal_dual_count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunnerUpStanza {
    pub g: Vec<u64>,
    pub rho: u64,
    pub minimal_dual_count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyStanza {
    pub cases: u64,
    pub seed: u64,
    pub max_n: u64,
    pub max_s: usize,
    pub max_d: u32,
    pub classes: Vec<ClassStanza>,
    /// "pass" or "fail".
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub failing: Option<FailingStanza>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassStanza {
    pub name: String,
    pub cases: u64,
    pub status: String,
}

/// The minimal failing instance, shrunk for reproduction by hand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailingStanza {
    pub class: String,
    pub n: u64,
    pub g: Vec<u64>,
    pub d: u32,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchStanza {
    pub sweep: String,
    pub engine: String,
    pub repeats: u32,
    /// The two parameters held fixed while the third is swept.
    pub fixed: FixedStanza,
    pub machine: MachineStanza,
    pub rows: Vec<BenchRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixedStanza {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MachineStanza {
    pub os: String,
    pub arch: String,
    pub threads: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub param: u64,
    pub median_ns: u64,
    /// Ratio to the previous row's median; absent on the first row.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingStanza {
    pub wall_ns: u64,
    pub engine: String,
}

/// The one float-to-text conversion in the program. `{:.16e}` prints 17
/// significant digits, enough that parsing the string recovers the exact
/// bit pattern, and the `e` notation is valid JSON.
pub fn fmt_float(value: f64) -> String {
    debug_assert!(value.is_finite(), "documents never carry non-finite floats");
    format!("{value:.16e}")
}

/// Pretty printer that defers structure to [`PrettyFormatter`] and routes
/// every float through [`fmt_float`].
struct SciPretty<'a> {
    inner: PrettyFormatter<'a>,
}

impl<'a> Formatter for SciPretty<'a> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt_float(value).as_bytes())
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_array(writer)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object(writer)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.inner.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object_value(writer)
    }
}

/// Renders the document as pretty JSON with a trailing newline.
pub fn to_json(doc: &ResultDocument) -> String {
    let mut buf = Vec::new();
    let formatter = SciPretty {
        inner: PrettyFormatter::with_indent(b"  "),
    };
    let mut serializer = serde_json::Serializer::with_formatter(&mut buf, formatter);
    doc.serialize(&mut serializer)
        .expect("result documents always serialize");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serializer emits UTF-8")
}

pub fn from_json(text: &str) -> serde_json::Result<ResultDocument> {
    serde_json::from_str(text)
}

/// Renders the document as CSV.
///
/// Bench documents become the plotting table `param,median_ns,ratio`; every
/// other document flattens to `field,value` rows where the field is the
/// dotted JSON path (`rule.g.0`, `degree.rho`, …). Either way the numbers
/// are produced by the same formatter as the JSON encoding.
pub fn to_csv(doc: &ResultDocument) -> String {
    if let Some(bench) = &doc.bench {
        let mut out = String::from("param,median_ns,ratio\n");
        for row in &bench.rows {
            let ratio = row.ratio.map(fmt_float).unwrap_or_default();
            out.push_str(&format!("{},{},{}\n", row.param, row.median_ns, ratio));
        }
        return out;
    }
    let value = serde_json::to_value(doc).expect("result documents always serialize");
    let mut rows = Vec::new();
    flatten("", &value, &mut rows);
    let mut out = String::from("field,value\n");
    for (field, value) in rows {
        out.push_str(&format!("{},{}\n", csv_escape(&field), csv_escape(&value)));
    }
    out
}

fn flatten(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
    let path = |suffix: &str| {
        if prefix.is_empty() {
            suffix.to_owned()
        } else {
            format!("{prefix}.{suffix}")
        }
    };
    match value {
        Value::Object(map) => {
            for (key, child) in map {
                flatten(&path(key), child, rows);
            }
        }
        Value::Array(items) => {
            for (index, child) in items.iter().enumerate() {
                flatten(&path(&index.to_string()), child, rows);
            }
        }
        Value::Null => {}
        Value::Bool(b) => rows.push((prefix.to_owned(), b.to_string())),
        Value::Number(n) => {
            let text = if n.is_f64() {
                fmt_float(n.as_f64().expect("checked variant"))
            } else {
                n.to_string()
            };
            rows.push((prefix.to_owned(), text));
        }
        Value::String(s) => rows.push((prefix.to_owned(), s.clone())),
    }
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_owned()
    }
}
