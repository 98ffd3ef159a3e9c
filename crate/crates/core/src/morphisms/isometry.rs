//! Backtracking isometry search between finite metric spaces.
//!
//! Points are colored by iterated distance signatures computed jointly over
//! both spaces, so equal colors are necessary for a point to be mapped onto
//! another. The search assigns domain points in order of increasing color
//! class size and only tries targets of the same color, checking distances
//! to every point assigned so far.

use std::collections::BTreeMap;

use super::PointMap;
use crate::dist::Dist;
use crate::error::{precondition, Result};
use crate::space::{is_metric, Space};

/// Counters from one isometry search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IsoSearchStats {
    /// Partial assignments extended by one point.
    pub nodes: u64,
    /// Candidate targets skipped because their color differs.
    pub signature_prunes: u64,
    /// Exact distance comparisons made while extending assignments.
    pub distance_checks: u64,
    /// Refinement rounds until the coloring was stable.
    pub refinement_rounds: u32,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Signature {
    Initial(Vec<Dist>),
    Refined(usize, Vec<(Dist, usize)>),
}

/// Shared coloring of two spaces; colors are dense ids assigned in sorted
/// signature order so they are comparable across the spaces.
fn refine(a: &Space, b: &Space, stats: &mut IsoSearchStats) -> (Vec<usize>, Vec<usize>) {
    fn initial(s: &Space) -> Vec<Signature> {
        s.points()
            .map(|i| {
                let mut row: Vec<Dist> = s.row(i).cloned().collect();
                row.sort();
                Signature::Initial(row)
            })
            .collect()
    }
    fn step(s: &Space, colors: &[usize]) -> Vec<Signature> {
        s.points()
            .map(|i| {
                let mut row: Vec<(Dist, usize)> = s.points().map(|j| (s.d(i, j).clone(), colors[j])).collect();
                row.sort();
                Signature::Refined(colors[i], row)
            })
            .collect()
    }
    fn intern(sa: Vec<Signature>, sb: Vec<Signature>) -> (Vec<usize>, Vec<usize>, usize) {
        let mut table: BTreeMap<&Signature, usize> = sa.iter().chain(&sb).map(|s| (s, 0)).collect();
        for (k, v) in table.values_mut().enumerate() {
            *v = k;
        }
        let ca = sa.iter().map(|s| table[s]).collect();
        let cb = sb.iter().map(|s| table[s]).collect();
        (ca, cb, table.len())
    }

    let (mut ca, mut cb, mut count) = intern(initial(a), initial(b));
    loop {
        stats.refinement_rounds += 1;
        let (na, nb, next) = intern(step(a, &ca), step(b, &cb));
        // refinement only splits classes, so an unchanged count means a fixpoint
        if next == count {
            return (ca, cb);
        }
        (ca, cb, count) = (na, nb, next);
    }
}

struct Search<'a> {
    a: &'a Space,
    b: &'a Space,
    color_a: Vec<usize>,
    color_b: Vec<usize>,
    order: Vec<usize>,
    assign: Vec<usize>,
    used: Vec<bool>,
    stats: IsoSearchStats,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        for t in self.b.points() {
            if self.used[t] {
                continue;
            }
            if self.color_b[t] != self.color_a[x] {
                self.stats.signature_prunes += 1;
                continue;
            }
            self.stats.nodes += 1;
            let mut consistent = true;
            for &prev in &self.order[..depth] {
                self.stats.distance_checks += 1;
                if self.a.d(x, prev) != self.b.d(t, self.assign[prev]) {
                    consistent = false;
                    break;
                }
            }
            if !consistent {
                continue;
            }
            self.assign[x] = t;
            self.used[t] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[t] = false;
        }
        false
    }
}

/// Finds a distance-preserving bijection between two metric spaces, or
/// reports that none exists. The search is exhaustive; among isometries it
/// returns the first one in the fixed candidate order (least target index).
pub fn find_isometry(a: &Space, b: &Space) -> Result<(Option<PointMap>, IsoSearchStats)> {
    if !is_metric(a) || !is_metric(b) {
        return precondition("isometry search needs metric spaces");
    }
    let mut stats = IsoSearchStats::default();
    if a.len() != b.len() {
        return Ok((None, stats));
    }
    let (color_a, color_b) = refine(a, b, &mut stats);
    let mut hist_a = vec![0usize; a.len() + b.len()];
    let mut hist_b = hist_a.clone();
    for &c in &color_a {
        hist_a[c] += 1;
    }
    for &c in &color_b {
        hist_b[c] += 1;
    }
    if hist_a != hist_b {
        return Ok((None, stats));
    }
    let mut order: Vec<usize> = a.points().collect();
    order.sort_by_key(|&x| (hist_a[color_a[x]], x));
    let mut search = Search {
        a,
        b,
        color_a,
        color_b,
        order,
        assign: vec![usize::MAX; a.len()],
        used: vec![false; b.len()],
        stats,
    };
    let found = search.extend(0);
    let stats = search.stats;
    if !found {
        return Ok((None, stats));
    }
    Ok((Some(PointMap::new(a.clone(), b.clone(), search.assign)?), stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphisms::is_isometry;

    fn space(labels: &[&str], rows: &[&[u64]]) -> Space {
        Space::from_integers(labels.to_vec(), rows).unwrap()
    }

    #[test]
    fn permuted_copy_is_found() {
        let a = space(&["x", "y", "z"], &[&[0, 1, 2], &[1, 0, 2], &[2, 2, 0]]);
        let b = space(&["r", "s", "t"], &[&[0, 2, 2], &[2, 0, 1], &[2, 1, 0]]);
        let (m, stats) = find_isometry(&a, &b).unwrap();
        let m = m.unwrap();
        assert!(is_isometry(&m));
        assert_eq!(m.images()[2], 0);
        assert!(stats.nodes >= 3);
    }

    #[test]
    fn different_distances_are_not_isometric() {
        let a = space(&["u", "v"], &[&[0, 1], &[1, 0]]);
        let b = space(&["u", "v"], &[&[0, 2], &[2, 0]]);
        assert!(find_isometry(&a, &b).unwrap().0.is_none());
    }

    #[test]
    fn same_signatures_but_not_isometric() {
        // a 6-cycle and two triangles with unit edges, distance 2 otherwise:
        // every point sees two 1s and three 2s in both spaces
        let cyc = Space::from_fn(6, |i, j| {
            let k = (i + 6 - j) % 6;
            match k {
                0 => Dist::zero(),
                1 | 5 => Dist::one(),
                _ => Dist::from(2),
            }
        })
        .unwrap();
        let tri = Space::from_fn(6, |i, j| {
            if i == j {
                Dist::zero()
            } else if i / 3 == j / 3 {
                Dist::one()
            } else {
                Dist::from(2)
            }
        })
        .unwrap();
        let (m, stats) = find_isometry(&cyc, &tri).unwrap();
        assert!(m.is_none());
        assert!(stats.nodes > 0);
        assert!(find_isometry(&cyc, &cyc).unwrap().0.is_some());
    }

    #[test]
    fn non_metric_input_is_rejected() {
        let z = space(&["u", "v"], &[&[0, 0], &[0, 0]]);
        assert!(find_isometry(&z, &z).is_err());
    }

    #[test]
    fn size_mismatch() {
        let a = space(&["u"], &[&[0]]);
        let b = space(&["u", "v"], &[&[0, 1], &[1, 0]]);
        assert!(find_isometry(&a, &b).unwrap().0.is_none());
    }
}
