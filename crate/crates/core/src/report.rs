use std::fmt;

use crate::dist::Dist;

/// One failed axiom or property, with the point indices that witness it and
/// the distances involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub property: String,
    pub witness: Vec<usize>,
    pub values: Vec<Dist>,
}

/// Outcome of a validation or property check. `ok()` holds exactly when no
/// violation was recorded.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn push(&mut self, property: impl Into<String>, witness: Vec<usize>, values: Vec<Dist>) {
        self.violations.push(Violation { property: property.into(), witness, values });
    }

    pub fn extend(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }

    /// Violations of one named property.
    pub fn of<'a>(&'a self, property: &'a str) -> impl Iterator<Item = &'a Violation> + 'a {
        self.violations.iter().filter(move |v| v.property == property)
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}", self.property, self.witness)?;
        if !self.values.is_empty() {
            let vals: Vec<String> = self.values.iter().map(Dist::to_string).collect();
            write!(f, " values [{}]", vals.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "ok");
        }
        writeln!(f, "{} violation(s)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}
