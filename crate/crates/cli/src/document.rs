//! The space document: a JSON object with a `points` array of distinct
//! labels and a square `d` array of distance literals (`"p"` or `"p/q"`).
//!
//! Canonical output is fully determined by the space: fields in the order
//! `points`, `d`; fractions reduced; two-space indentation; one matrix row
//! per line; a trailing newline.

use std::fmt::Write as _;

use pmetric::{validate_pseudometric, Dist, Report, Space};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DocumentError {
    #[error("{source_name}:{line}:{column}: {message}")]
    Syntax { source_name: String, line: usize, column: usize, message: String },
    #[error("{source_name}: {path}: {message}")]
    Content { source_name: String, path: String, message: String },
    #[error("{source_name}: {message}")]
    Space { source_name: String, message: String },
}

impl DocumentError {
    fn space(source_name: &str, e: impl std::fmt::Display) -> Self {
        DocumentError::Space { source_name: source_name.into(), message: e.to_string() }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    points: Vec<String>,
    d: Vec<Vec<String>>,
}

/// A parsed document whose matrix has not yet been checked against the
/// pseudometric axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceDocument {
    pub points: Vec<String>,
    pub d: Vec<Vec<Dist>>,
}

impl SpaceDocument {
    /// Parses document text. `source_name` prefixes diagnostics.
    pub fn parse(text: &str, source_name: &str) -> Result<SpaceDocument, DocumentError> {
        let raw: Raw = serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
            source_name: source_name.into(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let content = |path: String, message: String| DocumentError::Content {
            source_name: source_name.into(),
            path,
            message,
        };
        if raw.d.len() != raw.points.len() {
            return Err(content(
                "d".into(),
                format!("{} rows for {} points", raw.d.len(), raw.points.len()),
            ));
        }
        let mut d = Vec::with_capacity(raw.d.len());
        for (i, row) in raw.d.iter().enumerate() {
            if row.len() != raw.points.len() {
                return Err(content(
                    format!("d[{i}]"),
                    format!("{} entries for {} points", row.len(), raw.points.len()),
                ));
            }
            let parsed = row
                .iter()
                .enumerate()
                .map(|(j, lit)| lit.parse::<Dist>().map_err(|e| content(format!("d[{i}][{j}]"), e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            d.push(parsed);
        }
        Ok(SpaceDocument { points: raw.points, d })
    }

    pub fn from_space(space: &Space) -> SpaceDocument {
        SpaceDocument { points: space.labels().to_vec(), d: space.rows() }
    }

    /// Axiom report; shape problems (duplicate labels) are errors.
    pub fn validate(&self, source_name: &str) -> Result<Report, DocumentError> {
        validate_pseudometric(&self.points, &self.d).map_err(|e| DocumentError::space(source_name, e))
    }

    pub fn into_space(self, source_name: &str) -> Result<Space, DocumentError> {
        Space::new(self.points, self.d).map_err(|e| DocumentError::space(source_name, e))
    }

    /// Canonical text.
    pub fn to_canonical(&self) -> String {
        let quote = |s: &str| serde_json::to_string(s).expect("strings serialize");
        let mut out = String::from("{\n  \"points\": [");
        out.push_str(&self.points.iter().map(|p| quote(p)).collect::<Vec<_>>().join(", "));
        out.push_str("],\n  \"d\": [");
        for (i, row) in self.d.iter().enumerate() {
            out.push_str(if i == 0 { "\n    [" } else { ",\n    [" });
            let cells: Vec<String> = row.iter().map(|x| quote(&x.to_string())).collect();
            out.push_str(&cells.join(", "));
            out.push(']');
        }
        if !self.d.is_empty() {
            out.push_str("\n  ");
        }
        out.push_str("]\n}\n");
        out
    }
}

/// Canonical text of a space.
pub fn to_canonical(space: &Space) -> String {
    SpaceDocument::from_space(space).to_canonical()
}

/// Parses and validates a document into a space.
pub fn parse_space(text: &str, source_name: &str) -> Result<Space, DocumentError> {
    SpaceDocument::parse(text, source_name)?.into_space(source_name)
}

/// Canonical text of several named documents, as one JSON object.
pub fn bundle(entries: &[(&str, &Space)]) -> String {
    let mut out = String::from("{\n");
    for (k, (name, space)) in entries.iter().enumerate() {
        let doc = to_canonical(space);
        let indented: String = doc.trim_end().lines().collect::<Vec<_>>().join("\n  ");
        let _ = write!(out, "  {}: {}", serde_json::to_string(name).unwrap(), indented);
        out.push_str(if k + 1 < entries.len() { ",\n" } else { "\n" });
    }
    out.push_str("}\n");
    out
}
