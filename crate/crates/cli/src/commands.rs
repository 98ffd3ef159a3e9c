use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use pmetric::{
    are_pseudoisometric, boundary, brute_force_pseudoisometry, check_cec_minimality, closure, completion_glue, find_isometry,
    glue_zero_point, in_cec, interior, is_closed, is_metric, is_open, is_superspace, metric_reflection,
    Embedding, Error, PointMap, Report, Space, Subset,
};
use pmetric::morphisms::BRUTE_FORCE_CAP;
use serde_json::{json, Value};

use crate::document::{to_canonical, DocumentError, SpaceDocument};
use crate::fuzz::{self, FuzzConfig, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "pmetric", version, about = "Finite pseudometric spaces with exact rational distances")]
pub struct Cli {
    /// Output style.
    #[arg(long, value_enum, global = true, default_value_t = Format::Plain)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TopologyOp {
    Closure,
    Interior,
    Boundary,
    IsOpen,
    IsClosed,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the pseudometric axioms and list every violation.
    Validate { file: PathBuf },
    /// Print the metric reflection and the projection onto it.
    Reflect { file: PathBuf },
    /// Closure, interior, boundary or open/closed test of a set of points.
    Topology {
        file: PathBuf,
        /// Comma-separated point labels (may be empty).
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        set: Vec<String>,
        #[arg(long, value_enum, default_value_t = TopologyOp::Closure)]
        op: TopologyOp,
    },
    /// Search for an isometry between two metric spaces.
    Isometric { file1: PathBuf, file2: PathBuf },
    /// Search for a pseudoisometry from the first space to the second.
    Pseudoisometric {
        file1: PathBuf,
        file2: PathBuf,
        /// Enumerate every map instead of comparing metric reflections.
        #[arg(long)]
        brute_force: bool,
        /// Largest number of maps the enumeration may visit.
        #[arg(long, default_value_t = BRUTE_FORCE_CAP)]
        cap: u128,
    },
    /// Check whether an embedding is a superspace in the CEC class.
    Cec {
        subfile: PathBuf,
        superfile: PathBuf,
        /// Pairs `sub=super` of point labels.
        #[arg(long, value_delimiter = ',')]
        embedding: Vec<String>,
    },
    /// Add a point at distance zero from `center`.
    GlueZero {
        file: PathBuf,
        #[arg(long)]
        center: String,
        #[arg(long)]
        label: String,
    },
    /// Glue a metric superspace of the reflection back onto the space.
    CompleteGlue {
        yfile: PathBuf,
        ystarfile: PathBuf,
        /// Pairs `class=point` sending reflection points (named by their
        /// representative's label) into the superspace.
        #[arg(long, value_delimiter = ',')]
        embedding: Vec<String>,
    },
    /// Run the seeded property suites.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

/// Exit code plus captured output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn out(code: i32, stdout: String) -> Outcome {
        Outcome { code, stdout, stderr: String::new() }
    }

    fn fail(code: i32, msg: impl std::fmt::Display) -> Outcome {
        Outcome { code, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

enum Failure {
    Document(DocumentError),
    Library(Error),
    Io(String),
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        Failure::Document(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl Failure {
    fn into_outcome(self) -> Outcome {
        match self {
            Failure::Document(e) => Outcome::fail(EXIT_INVALID, e),
            Failure::Library(e @ Error::Resource(_)) => Outcome::fail(EXIT_RESOURCE, e),
            Failure::Library(e) => Outcome::fail(EXIT_INVALID, e),
            Failure::Io(e) => Outcome::fail(EXIT_INVALID, e),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Res<(String, String)> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{name}: {e}")))?;
    Ok((text, name))
}

fn load_document(path: &Path) -> Res<(SpaceDocument, String)> {
    let (text, name) = read(path)?;
    Ok((SpaceDocument::parse(&text, &name)?, name))
}

fn load(path: &Path) -> Res<Space> {
    let (doc, name) = load_document(path)?;
    Ok(doc.into_space(&name)?)
}

fn report_json(report: &Report) -> Value {
    json!({
        "ok": report.ok(),
        "violations": report.violations().iter().map(|v| json!({
            "property": v.property,
            "witness": v.witness,
            "values": v.values.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn structured(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

fn map_json(m: &PointMap) -> Value {
    Value::Object(m.pairs().map(|(a, b)| (a.to_owned(), Value::String(b.to_owned()))).collect())
}

fn map_plain(m: &PointMap) -> String {
    m.pairs().map(|(a, b)| format!("{a} -> {b}\n")).collect()
}

fn set_plain(s: &Subset, space: &Space) -> String {
    format!("{{{}}}\n", s.labels(space).join(", "))
}

fn label_pairs(raw: &[String]) -> Res<Vec<(String, String)>> {
    raw.iter()
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.split_once('=')
                .map(|(a, b)| (a.trim().to_owned(), b.trim().to_owned()))
                .ok_or_else(|| Failure::Library(Error::Input(format!("embedding pair {p:?} is not `a=b`"))))
        })
        .collect()
}

fn bool_outcome(format: Format, key: &str, value: bool, extra: Value) -> Outcome {
    let code = if value { EXIT_OK } else { EXIT_FALSE };
    match format {
        Format::Plain => Outcome::out(code, format!("{value}\n")),
        Format::Structured => {
            let mut v = json!({ key: value });
            if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
                m.extend(e);
            }
            Outcome::out(code, structured(v))
        }
    }
}

fn witness_outcome(format: Format, found: Option<PointMap>) -> Outcome {
    match (format, found) {
        (Format::Plain, Some(m)) => Outcome::out(EXIT_OK, map_plain(&m)),
        (Format::Plain, None) => Outcome::out(EXIT_FALSE, "none\n".into()),
        (Format::Structured, Some(m)) => Outcome::out(EXIT_OK, structured(json!({ "witness": map_json(&m) }))),
        (Format::Structured, None) => Outcome::out(EXIT_FALSE, structured(json!({ "witness": null }))),
    }
}

fn validate(format: Format, file: &Path) -> Res<Outcome> {
    let (doc, name) = load_document(file)?;
    let report = doc.validate(&name)?;
    let code = if report.ok() { EXIT_OK } else { EXIT_FALSE };
    Ok(match format {
        Format::Plain => {
            let mut s = report.to_string();
            if !s.ends_with('\n') {
                s.push('\n');
            }
            Outcome::out(code, s)
        }
        Format::Structured => Outcome::out(code, structured(report_json(&report))),
    })
}

fn reflect(format: Format, file: &Path) -> Res<Outcome> {
    let space = load(file)?;
    let r = metric_reflection(&space)?;
    Ok(match format {
        Format::Plain => Outcome::out(
            EXIT_OK,
            format!("{}\nprojection:\n{}", to_canonical(&r.quotient), map_plain(&r.projection)),
        ),
        Format::Structured => {
            let quotient: Value = serde_json::from_str(&to_canonical(&r.quotient)).expect("canonical json");
            Outcome::out(EXIT_OK, structured(json!({ "quotient": quotient, "projection": map_json(&r.projection) })))
        }
    })
}

fn topology(format: Format, file: &Path, set: &[String], op: TopologyOp) -> Res<Outcome> {
    let space = load(file)?;
    let labels: Vec<&str> = set.iter().map(|s| s.trim()).filter(|s| !s.is_empty()).collect();
    let a = space.subset_by_labels(&labels)?;
    let result = match op {
        TopologyOp::Closure => closure(&space, &a),
        TopologyOp::Interior => interior(&space, &a),
        TopologyOp::Boundary => boundary(&space, &a),
        TopologyOp::IsOpen => return Ok(bool_outcome(format, "open", is_open(&space, &a), json!({}))),
        TopologyOp::IsClosed => return Ok(bool_outcome(format, "closed", is_closed(&space, &a), json!({}))),
    };
    Ok(match format {
        Format::Plain => Outcome::out(EXIT_OK, set_plain(&result, &space)),
        Format::Structured => Outcome::out(EXIT_OK, structured(json!({ "set": result.labels(&space) }))),
    })
}

fn isometric(format: Format, f1: &Path, f2: &Path) -> Res<Outcome> {
    let (a, b) = (load(f1)?, load(f2)?);
    for (s, p) in [(&a, f1), (&b, f2)] {
        if !is_metric(s) {
            return Err(Failure::Library(Error::Precondition(format!("{} is not a metric space", p.display()))));
        }
    }
    let (found, _) = find_isometry(&a, &b)?;
    Ok(witness_outcome(format, found))
}

fn pseudoisometric(format: Format, f1: &Path, f2: &Path, brute_force: bool, cap: u128) -> Res<Outcome> {
    let (x, y) = (load(f1)?, load(f2)?);
    let found = if brute_force { brute_force_pseudoisometry(&x, &y, cap)? } else { are_pseudoisometric(&x, &y)? };
    Ok(witness_outcome(format, found))
}

fn cec(format: Format, sub: &Path, sup: &Path, pairs: &[String]) -> Res<Outcome> {
    let (y, x) = (load(sub)?, load(sup)?);
    let map = PointMap::from_labels(y.clone(), x, &label_pairs(pairs)?)?;
    let e = Embedding::new(map);
    if !is_superspace(&e) {
        return Err(Failure::Library(Error::Precondition("embedding is not injective and distance-preserving".into())));
    }
    let member = in_cec(&e)?;
    let closed = is_closed(e.sup(), &e.image());
    let minimal = check_cec_minimality(&y, &e)?;
    Ok(match format {
        Format::Plain => Outcome::out(
            if member { EXIT_OK } else { EXIT_FALSE },
            format!("cec: {member}\nclosed: {closed}\nminimality: {minimal}\n"),
        ),
        Format::Structured => bool_outcome(format, "cec", member, json!({ "closed": closed, "minimality": minimal })),
    })
}

fn glue_zero(file: &Path, center: &str, label: &str) -> Res<Outcome> {
    let x = load(file)?;
    let c = x.index_of(center).ok_or_else(|| Failure::Library(Error::Input(format!("unknown point {center:?}"))))?;
    let e = glue_zero_point(&x, c, label)?;
    Ok(Outcome::out(EXIT_OK, to_canonical(e.sup())))
}

fn complete_glue(y: &Path, ystar: &Path, pairs: &[String]) -> Res<Outcome> {
    let (y, ystar) = (load(y)?, load(ystar)?);
    let q = metric_reflection(&y)?.quotient;
    let map = PointMap::from_labels(q, ystar.clone(), &label_pairs(pairs)?)?;
    let e = completion_glue(&y, &ystar, &map)?;
    Ok(Outcome::out(EXIT_OK, to_canonical(e.sup())))
}

fn run_fuzz(format: Format, cfg: FuzzConfig) -> Outcome {
    let summary = fuzz::run(&cfg);
    let code = if summary.passed() { EXIT_OK } else { EXIT_FALSE };
    match format {
        Format::Plain => Outcome::out(code, summary.to_string()),
        Format::Structured => {
            Outcome::out(code, structured(serde_json::to_value(&summary).expect("summary serializes")))
        }
    }
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Outcome {
    let f = cli.format;
    let res = match &cli.command {
        Command::Validate { file } => validate(f, file),
        Command::Reflect { file } => reflect(f, file),
        Command::Topology { file, set, op } => topology(f, file, set, *op),
        Command::Isometric { file1, file2 } => isometric(f, file1, file2),
        Command::Pseudoisometric { file1, file2, brute_force, cap } => {
            pseudoisometric(f, file1, file2, *brute_force, *cap)
        }
        Command::Cec { subfile, superfile, embedding } => cec(f, subfile, superfile, embedding),
        Command::GlueZero { file, center, label } => glue_zero(file, center, label),
        Command::CompleteGlue { yfile, ystarfile, embedding } => complete_glue(yfile, ystarfile, embedding),
        Command::Fuzz { seed, count, max_n, suite } => {
            Ok(run_fuzz(f, FuzzConfig { seed: *seed, count: *count, max_n: *max_n, suite: *suite }))
        }
    };
    res.unwrap_or_else(Failure::into_outcome)
}
