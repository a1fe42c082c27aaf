//! Front end of the `mixdeg` binary: family documents, reports and the
//! command dispatcher.

use std::fmt::Write as _;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mixed_degree::classify::{
    common_unimodular_simplex, decompose_md0, enumerate_families, validate_certificate, DedupMode, EnumerationConfig,
};
use mixed_degree::ehrhart::ehrhart_polynomial;
use mixed_degree::lattice::{integer_from_json, integer_to_json, IntVector};
use mixed_degree::minkowski::{cayley, PolytopeFamily};
use mixed_degree::mixed::{genus_table, mixed_invariants, mixed_volume};
use mixed_degree::polytope::LatticePolytope;
use mixed_degree::verify::{run_suite, Suite, VerifyOptions, DEFAULT_SEED};
use mixed_degree::Error;
use serde::Serialize;
use serde_json::{json, Map, Value};

/// A parsed family document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyDocument {
    pub family: PolytopeFamily,
    pub labels: Option<Vec<String>>,
}

impl Serialize for FamilyDocument {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        document_value(&self.family, self.labels.as_deref()).serialize(s)
    }
}

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

fn parse_vertex(v: &Value, polytope: usize, vertex: usize) -> Result<IntVector, Error> {
    let coords = v
        .as_array()
        .ok_or_else(|| schema(format!("polytope {polytope}, vertex {vertex}: expected an array of integers")))?;
    coords
        .iter()
        .map(|c| match c {
            Value::Number(n) => integer_from_json(n)
                .ok_or_else(|| schema(format!("polytope {polytope}, vertex {vertex}: {n} is not an integer"))),
            other => Err(schema(format!("polytope {polytope}, vertex {vertex}: {other} is not an integer"))),
        })
        .collect()
}

/// Parses `{"ambient_dim": n, "polytopes": [[[ints]]], "labels": [..]}`.
/// Polytopes and vertices are numbered from 1 in diagnostics.
pub fn parse_family(text: &str) -> Result<FamilyDocument, Error> {
    let doc: Value = serde_json::from_str(text).map_err(|e| schema(format!("not valid JSON: {e}")))?;
    let obj = doc.as_object().ok_or_else(|| schema("top level must be an object"))?;
    if let Some(key) = obj.keys().find(|k| !matches!(k.as_str(), "ambient_dim" | "polytopes" | "labels")) {
        return Err(schema(format!("unknown field {key:?}")));
    }
    let n = obj
        .get("ambient_dim")
        .ok_or_else(|| schema("missing field \"ambient_dim\""))?
        .as_u64()
        .ok_or_else(|| schema("\"ambient_dim\" must be a non-negative integer"))? as usize;
    let polys = obj
        .get("polytopes")
        .ok_or_else(|| schema("missing field \"polytopes\""))?
        .as_array()
        .ok_or_else(|| schema("\"polytopes\" must be an array"))?;
    if polys.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let mut members = Vec::with_capacity(polys.len());
    for (i, poly) in polys.iter().enumerate() {
        let verts =
            poly.as_array().ok_or_else(|| schema(format!("polytope {}: expected an array of vertices", i + 1)))?;
        if verts.is_empty() {
            return Err(Error::EmptyPolytope(i + 1));
        }
        let points: Vec<IntVector> =
            verts.iter().enumerate().map(|(j, v)| parse_vertex(v, i + 1, j + 1)).collect::<Result<_, _>>()?;
        let width = points[0].dim();
        if let Some(j) = points.iter().position(|p| p.dim() != width) {
            return Err(Error::RaggedVertex {
                polytope: i + 1,
                vertex: j + 1,
                expected: width,
                found: points[j].dim(),
            });
        }
        if width != n {
            return Err(Error::DimensionMismatch { expected: n, found: width });
        }
        members.push(LatticePolytope::from_points(&points)?);
    }
    let labels = match obj.get("labels") {
        None => None,
        Some(Value::Array(ls)) => {
            let ls: Vec<String> = ls
                .iter()
                .map(|l| l.as_str().map(str::to_owned).ok_or_else(|| schema("labels must be strings")))
                .collect::<Result<_, _>>()?;
            if ls.len() != members.len() {
                return Err(schema(format!("{} labels for {} polytopes", ls.len(), members.len())));
            }
            Some(ls)
        }
        Some(_) => return Err(schema("\"labels\" must be an array of strings")),
    };
    Ok(FamilyDocument { family: PolytopeFamily::new(members)?, labels })
}

fn document_value(family: &PolytopeFamily, labels: Option<&[String]>) -> Value {
    let mut obj = Map::new();
    obj.insert("ambient_dim".into(), family.ambient_dim().into());
    obj.insert("polytopes".into(), serde_json::to_value(family.members()).expect("polytopes serialize"));
    if let Some(ls) = labels {
        obj.insert("labels".into(), json!(ls));
    }
    Value::Object(obj)
}

/// Canonical text of a document: hulled vertex lists, pretty-printed.
pub fn serialize_family(doc: &FamilyDocument) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize") + "\n"
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Parser, Debug)]
#[command(
    name = "mixdeg",
    version,
    about = "Mixed volume, mixed codegree and mixed degree of lattice polytope families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct FamilyInput {
    /// Family document, or `-` for standard input.
    file: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mixed codegree, mixed degree, flags and genus table.
    Invariants(FamilyInput),
    /// Mixed volume of n polytopes in R^n.
    Mv(FamilyInput),
    /// Ehrhart data of every member.
    Ehrhart(FamilyInput),
    /// Cayley polytope of the family with its Ehrhart data.
    Cayley(FamilyInput),
    /// Certificate of mixed degree zero, or its absence.
    Classify(FamilyInput),
    /// Run a verification suite.
    Verify {
        /// Suite name; may also be given with --suite.
        #[arg(value_parser = parse_suite)]
        suite: Option<Suite>,
        #[arg(long = "suite", value_parser = parse_suite)]
        suite_flag: Option<Suite>,
        #[arg(long = "box", default_value_t = 2)]
        box_bound: u64,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 3)]
        members: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Dump the families with vertices in [0,B]^n.
    Enumerate {
        #[arg(long = "box", default_value_t = 1)]
        box_bound: u64,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 1)]
        members: usize,
        /// Keep only proper families.
        #[arg(long)]
        proper: bool,
        /// Also identify families related by a common unimodular map.
        #[arg(long)]
        unimodular: bool,
        #[command(flatten)]
        output: Output,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("unknown suite {s:?}; expected one of {}", names.join(", "))
    })
}

/// Output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: 0, stdout, stderr: String::new() }
    }

    fn error(code: i32, stderr: String) -> Self {
        Self { code, stdout: String::new(), stderr }
    }
}

enum Failure {
    /// Exit 1.
    Check(String),
    /// Exit 2.
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CrossCheck(_) => Failure::Check(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome::error(2, text) } else { Outcome::ok(text) };
        }
    };
    match dispatch(cli.command, stdin) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(Failure::Check(msg)) => Outcome::error(1, format!("error: {msg}\n")),
        Err(Failure::Input(msg)) => Outcome::error(2, format!("error: {msg}\n")),
    }
}

fn read_input(file: &str, stdin: &mut dyn Read) -> Result<FamilyDocument, Failure> {
    let mut text = String::new();
    if file == "-" {
        stdin.read_to_string(&mut text).map_err(|e| Failure::Input(format!("reading standard input: {e}")))?;
    } else {
        text = std::fs::read_to_string(file).map_err(|e| Failure::Input(format!("reading {file}: {e}")))?;
    }
    Ok(parse_family(&text)?)
}

fn family_report(doc: &FamilyDocument, fields: Vec<(&str, Value)>) -> Value {
    let mut obj = Map::new();
    obj.insert("family".into(), serde_json::to_value(doc).expect("documents serialize"));
    for (k, v) in fields {
        obj.insert(k.into(), v);
    }
    Value::Object(obj)
}

fn to_value(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn dispatch(cmd: Command, stdin: &mut dyn Read) -> Result<(i32, String), Failure> {
    let (code, report, format) = match cmd {
        Command::Invariants(input) => {
            let doc = read_input(&input.file, stdin)?;
            let inv = mixed_invariants(&doc.family)?;
            let genus = genus_table(&doc.family)?;
            (
                0,
                family_report(&doc, vec![("invariants", to_value(&inv)), ("genus", to_value(&genus))]),
                input.output.format,
            )
        }
        Command::Mv(input) => {
            let doc = read_input(&input.file, stdin)?;
            let mv = mixed_volume(&doc.family)?;
            (0, family_report(&doc, vec![("mv", Value::Number(integer_to_json(&mv)))]), input.output.format)
        }
        Command::Ehrhart(input) => {
            let doc = read_input(&input.file, stdin)?;
            let data = doc.family.members().iter().map(ehrhart_polynomial).collect::<Result<Vec<_>, _>>()?;
            (0, family_report(&doc, vec![("ehrhart", to_value(&data))]), input.output.format)
        }
        Command::Cayley(input) => {
            let doc = read_input(&input.file, stdin)?;
            let c = cayley(&doc.family);
            let data = ehrhart_polynomial(&c)?;
            let fields =
                vec![("cayley", to_value(&c)), ("dimension", c.dimension().into()), ("ehrhart", to_value(&data))];
            (0, family_report(&doc, fields), input.output.format)
        }
        Command::Classify(input) => {
            let doc = read_input(&input.file, stdin)?;
            let f = &doc.family;
            let inv = mixed_invariants(f)?;
            let mut fields = vec![("md", inv.md.into()), ("proper", inv.proper.into())];
            if f.len() == f.ambient_dim() && inv.proper {
                let cert = decompose_md0(f)?;
                if let Some(c) = &cert {
                    if !validate_certificate(f, c) {
                        return Err(Failure::Check("the decomposition certificate failed re-validation".into()));
                    }
                }
                fields.push(("certificate", to_value(&cert)));
            } else if inv.dim_total == f.ambient_dim() {
                let found = common_unimodular_simplex(f)?
                    .map(|(simplex, translations)| json!({ "simplex": simplex, "translations": translations }));
                fields.push(("common_simplex", found.unwrap_or(Value::Null)));
            } else {
                return Err(Failure::Input(
                    "classification needs a proper family with m = n or a full-dimensional total sum".into(),
                ));
            }
            (0, family_report(&doc, fields), input.output.format)
        }
        Command::Verify { suite, suite_flag, box_bound, dim, members, seed, output } => {
            let suite = match (suite, suite_flag) {
                (Some(a), Some(b)) if a != b => return Err(Failure::Input(format!("conflicting suites {a} and {b}"))),
                (Some(s), _) | (None, Some(s)) => s,
                (None, None) => return Err(Failure::Input("verify needs a suite name".into())),
            };
            let opts = VerifyOptions { box_bound, max_members: members, dim, seed };
            let report = run_suite(suite, &opts)?;
            (if report.passed { 0 } else { 1 }, to_value(&report), output.format)
        }
        Command::Enumerate { box_bound, dim, members, proper, unimodular, output } => {
            let cfg = EnumerationConfig {
                ambient_dim: dim,
                family_size: members,
                box_bound,
                proper_only: proper,
                dedup: if unimodular { DedupMode::Unimodular } else { DedupMode::TranslationPermutation },
            };
            let families = enumerate_families(&cfg)?;
            let docs: Vec<Value> = families.iter().map(|f| document_value(f, None)).collect();
            (0, json!({ "config": cfg, "count": docs.len(), "families": docs }), output.format)
        }
    };
    Ok((code, render(&report, format)))
}

/// JSON is pretty-printed; tables list one `path  value` line per leaf.
pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("values serialize") + "\n",
        Format::Table => {
            let mut rows = Vec::new();
            flatten("", report, &mut rows);
            let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            let mut out = String::new();
            for (k, v) in rows {
                writeln!(out, "{k:<width$}  {v}").expect("writing to a string");
            }
            out
        }
    }
}

/// Arrays of scalars stay on one line.
fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let scalar = |v: &Value| !matches!(v, Value::Array(_) | Value::Object(_));
    match v {
        Value::Object(obj) => {
            for (k, child) in obj {
                let path = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&path, child, rows);
            }
        }
        Value::Array(items) if !items.iter().all(scalar) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), child, rows);
            }
        }
        other => rows.push((prefix.to_owned(), other.to_string())),
    }
}
