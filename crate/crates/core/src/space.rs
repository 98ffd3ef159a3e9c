//! The pseudometric space data model and axiom validation.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::dist::Dist;
use crate::error::{input, Error, Result};
use crate::report::Report;

pub const ZERO_DIAGONAL: &str = "zero-diagonal";
pub const SYMMETRY: &str = "symmetry";
pub const TRIANGLE: &str = "triangle";

#[derive(PartialEq, Eq)]
struct Inner {
    labels: Vec<String>,
    // row-major n x n
    matrix: Vec<Dist>,
}

/// A finite pseudometric space: distinct point labels and a validated
/// distance matrix. Immutable and cheap to clone.
#[derive(Clone)]
pub struct Space {
    inner: Arc<Inner>,
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}

impl Eq for Space {}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for i in 0..self.len() {
            m.entry(&self.label(i), &self.row(i).collect::<Vec<_>>());
        }
        m.finish()
    }
}

fn check_shape<L: AsRef<str>>(labels: &[L], rows: &[Vec<Dist>]) -> Result<()> {
    if rows.len() != labels.len() {
        return input(format!("{} labels but {} matrix rows", labels.len(), rows.len()));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != labels.len() {
            return input(format!("row {i} has {} entries, expected {}", row.len(), labels.len()));
        }
    }
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_ref()) {
            return input(format!("duplicate label {:?}", l.as_ref()));
        }
    }
    Ok(())
}

/// Checks every pseudometric axiom on a raw matrix and reports all
/// violations.
///
/// Shape problems (non-square matrix, label count mismatch, duplicate
/// labels) are input errors rather than violations. Negative entries cannot
/// be represented by [`Dist`]; they are rejected when literals are parsed.
/// Triangle witnesses are ordered paths `[i, k, j]` with
/// `d(i, j) > d(i, k) + d(k, j)`, over all ordered triples.
pub fn validate_pseudometric<L: AsRef<str>>(labels: &[L], rows: &[Vec<Dist>]) -> Result<Report> {
    check_shape(labels, rows)?;
    let n = labels.len();
    let mut report = Report::new();
    for (i, row) in rows.iter().enumerate() {
        if !row[i].is_zero() {
            report.push(ZERO_DIAGONAL, vec![i], vec![row[i].clone()]);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if rows[i][j] != rows[j][i] {
                report.push(SYMMETRY, vec![i, j], vec![rows[i][j].clone(), rows[j][i].clone()]);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let via = &rows[i][k] + &rows[k][j];
                if rows[i][j] > via {
                    report.push(
                        TRIANGLE,
                        vec![i, k, j],
                        vec![rows[i][j].clone(), rows[i][k].clone(), rows[k][j].clone()],
                    );
                }
            }
        }
    }
    Ok(report)
}

impl Space {
    /// Validates and builds a space. Any axiom violation is an input error
    /// carrying the first violation.
    pub fn new<L: Into<String>>(labels: Vec<L>, rows: Vec<Vec<Dist>>) -> Result<Space> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let report = validate_pseudometric(&labels, &rows)?;
        if let Some(v) = report.violations().first() {
            return Err(Error::Input(format!("not a pseudometric: {v}")));
        }
        Ok(Self::from_parts(labels, rows.into_iter().flatten().collect()))
    }

    /// Builds a space from a distance function on indices, labelling points
    /// `p0, p1, ...`.
    pub fn from_fn(n: usize, mut d: impl FnMut(usize, usize) -> Dist) -> Result<Space> {
        let rows = (0..n).map(|i| (0..n).map(|j| d(i, j)).collect()).collect();
        Space::new(default_labels(n), rows)
    }

    /// Integer distances, mostly for tests and examples.
    pub fn from_integers<L: Into<String>>(labels: Vec<L>, rows: &[&[u64]]) -> Result<Space> {
        let rows = rows.iter().map(|r| r.iter().map(|&x| Dist::from_integer(x)).collect()).collect();
        Space::new(labels, rows)
    }

    pub(crate) fn from_parts(labels: Vec<String>, matrix: Vec<Dist>) -> Space {
        debug_assert_eq!(labels.len() * labels.len(), matrix.len());
        Space { inner: Arc::new(Inner { labels, matrix }) }
    }

    pub fn len(&self) -> usize {
        self.inner.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.inner.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.inner.labels.iter().position(|l| l == label)
    }

    /// Distance between points `i` and `j`.
    pub fn d(&self, i: usize, j: usize) -> &Dist {
        &self.inner.matrix[i * self.len() + j]
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = &Dist> + '_ {
        let n = self.len();
        self.inner.matrix[i * n..(i + 1) * n].iter()
    }

    pub fn rows(&self) -> Vec<Vec<Dist>> {
        (0..self.len()).map(|i| self.row(i).cloned().collect()).collect()
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    /// Largest distance in the space (zero for spaces with < 2 points).
    pub fn diameter(&self) -> Dist {
        self.inner.matrix.iter().max().cloned().unwrap_or_default()
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    /// Subset from point labels.
    pub fn subset_by_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset> {
        let mut members = BTreeSet::new();
        for l in labels {
            match self.index_of(l.as_ref()) {
                Some(i) => {
                    members.insert(i);
                }
                None => return input(format!("unknown point {:?}", l.as_ref())),
            }
        }
        Ok(Subset { universe: self.len(), members })
    }

    pub(crate) fn check_point(&self, i: usize) -> Result<()> {
        if i >= self.len() {
            return input(format!("point index {i} out of range for {} points", self.len()));
        }
        Ok(())
    }
}

pub fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// True iff distinct points are always at positive distance.
pub fn is_metric(space: &Space) -> bool {
    space
        .points()
        .all(|i| space.points().all(|j| i == j || space.d(i, j).is_positive()))
}

/// A set of point indices of a space with `universe` points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    universe: usize,
    members: BTreeSet<usize>,
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.members).finish()
    }
}

impl Subset {
    pub fn new(universe: usize, members: impl IntoIterator<Item = usize>) -> Result<Subset> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&i| i >= universe) {
            return input(format!("point index {bad} out of range for {universe} points"));
        }
        Ok(Subset { universe, members })
    }

    pub fn empty(universe: usize) -> Subset {
        Subset { universe, members: BTreeSet::new() }
    }

    pub fn full(universe: usize) -> Subset {
        Subset { universe, members: (0..universe).collect() }
    }

    /// Subset whose members are the set bits of `mask`. Requires `universe <= 64`.
    pub fn from_mask(universe: usize, mask: u64) -> Subset {
        assert!(universe <= 64);
        Subset { universe, members: (0..universe).filter(|&i| mask >> i & 1 == 1).collect() }
    }

    /// All `2^universe` subsets, in mask order.
    pub fn all(universe: usize) -> impl Iterator<Item = Subset> {
        assert!(universe < 64);
        (0..1u64 << universe).map(move |m| Subset::from_mask(universe, m))
    }

    pub(crate) fn from_set(universe: usize, members: BTreeSet<usize>) -> Subset {
        Subset { universe, members }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn complement(&self) -> Subset {
        Subset {
            universe: self.universe,
            members: (0..self.universe).filter(|i| !self.members.contains(i)).collect(),
        }
    }

    pub fn union(&self, other: &Subset) -> Subset {
        Subset { universe: self.universe, members: &self.members | &other.members }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        Subset { universe: self.universe, members: &self.members & &other.members }
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        Subset { universe: self.universe, members: &self.members - &other.members }
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn labels<'a>(&'a self, space: &'a Space) -> Vec<&'a str> {
        self.iter().map(|i| space.label(i)).collect()
    }

    pub(crate) fn check_in(&self, space: &Space) -> Result<()> {
        if self.universe != space.len() {
            return input(format!(
                "subset of a {}-point space used with a {}-point space",
                self.universe,
                space.len()
            ));
        }
        Ok(())
    }
}
