//! The metric reflection: the quotient by the zero-distance relation with
//! its projection and section maps.

use crate::error::{input, Result};
use crate::morphisms::PointMap;
use crate::report::Report;
use crate::space::Space;
use crate::zero::{zero_classes, Partition};

pub const REPRESENTATIVE_INDEPENDENCE: &str = "representative-independence";

/// A space's metric reflection.
///
/// Quotient point `k` is the `k`-th zero-class (ordered by least member) and
/// carries the label of that least member.
#[derive(Debug, Clone)]
pub struct Reflection {
    pub source: Space,
    pub quotient: Space,
    pub classes: Partition,
    /// Each point to its class.
    pub projection: PointMap,
    /// Each class to its least-index member.
    pub section: PointMap,
}

/// Collapses every zero-class to one point, with quotient distance taken
/// between least-index representatives.
pub fn metric_reflection(space: &Space) -> Result<Reflection> {
    if space.is_empty() {
        return input("the metric reflection needs a nonempty space");
    }
    let classes = zero_classes(space);
    let reps: Vec<usize> = classes.representatives().collect();
    let labels = reps.iter().map(|&r| space.label(r).to_owned()).collect();
    let matrix = reps
        .iter()
        .flat_map(|&a| reps.iter().map(move |&b| space.d(a, b).clone()))
        .collect();
    let quotient = Space::from_parts(labels, matrix);
    let projection =
        PointMap::new(space.clone(), quotient.clone(), space.points().map(|i| classes.block_of(i)).collect())?;
    let section = PointMap::new(quotient.clone(), space.clone(), reps)?;
    let refl = Reflection { source: space.clone(), quotient, classes, projection, section };
    debug_assert!(refl.projection_preserves_distances());
    Ok(refl)
}

impl Reflection {
    /// Quotient distance between the classes of `x` and `y` equals `d(x, y)`
    /// for every pair, not only representatives.
    pub fn projection_preserves_distances(&self) -> bool {
        let p = self.projection.images();
        self.source
            .points()
            .all(|x| self.source.points().all(|y| self.quotient.d(p[x], p[y]) == self.source.d(x, y)))
    }
}

/// Checks that the distance between two classes does not depend on the
/// chosen members: `d(x, y) = d(x', y')` whenever `d(x, x') = 0` and
/// `d(y, y') = 0`.
///
/// Works on raw matrices too (anything with a zero diagonal and symmetry),
/// since the point is to show the property breaks without the triangle
/// inequality. Classes are taken as the zero-rows of the first member of each
/// pair. Witnesses are `[x, x', y, y']` quadruples, reported once per
/// unordered choice `x <= x'`.
pub fn check_well_defined(rows: &[Vec<crate::Dist>]) -> Report {
    let n = rows.len();
    let mut report = Report::new();
    for x in 0..n {
        for xp in x..n {
            if !rows[x][xp].is_zero() {
                continue;
            }
            for y in 0..n {
                for yp in 0..n {
                    if rows[y][yp].is_zero() && rows[x][y] != rows[xp][yp] {
                        report.push(
                            REPRESENTATIVE_INDEPENDENCE,
                            vec![x, xp, y, yp],
                            vec![rows[x][y].clone(), rows[xp][yp].clone()],
                        );
                    }
                }
            }
        }
    }
    report
}

/// The projection onto the reflection, viewed as a map between two
/// pseudometric spaces.
pub fn projection_as_pseudoisometry(space: &Space) -> Result<PointMap> {
    Ok(metric_reflection(space)?.projection)
}
