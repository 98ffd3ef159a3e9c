//! The open-ball topology of a finite pseudometric space.
//!
//! In a finite space every ball of radius at most the least positive
//! distance from its center is exactly the center's zero-class, so open sets,
//! closed sets and saturated sets coincide. Several predicates below compute
//! both the general definition and the saturation shortcut and assert that
//! they agree.
//!
//! Sequences are modelled as eventually periodic: a finite prefix followed by
//! a cycle repeated forever. That is enough to exhibit every convergence
//! behaviour of a finite space. Since every finite pseudometric space is
//! complete, the completeness criteria here always return true; they are
//! consistency checks rather than tests that can discriminate.

use std::collections::BTreeSet;

use crate::dist::Dist;
use crate::error::{input, Result};
use crate::space::{Space, Subset};
use crate::zero::{class_of, saturate};

/// `{x : d(c, x) < r}`; requires `r > 0`.
pub fn open_ball(space: &Space, center: usize, radius: &Dist) -> Result<Subset> {
    space.check_point(center)?;
    if !radius.is_positive() {
        return input("ball radius must be positive");
    }
    Ok(ball(space, center, radius))
}

fn ball(space: &Space, c: usize, r: &Dist) -> Subset {
    let members: Vec<usize> = space.points().filter(|&x| space.d(c, x) < r).collect();
    Subset::new(space.len(), members).expect("points are in range")
}

/// Radii worth trying at a center: every positive distance from it plus one
/// radius past the largest. Any other ball around `c` equals one of these.
fn candidate_radii(space: &Space, c: usize, beyond: &Dist) -> Vec<Dist> {
    let mut radii: BTreeSet<Dist> = space.row(c).filter(|d| d.is_positive()).cloned().collect();
    radii.insert(beyond.clone());
    radii.into_iter().collect()
}

/// Union-of-balls test: every member lies in some ball contained in the set.
pub fn is_open_by_balls(space: &Space, set: &Subset) -> bool {
    let beyond = space.diameter() + Dist::one();
    let radii: Vec<Vec<Dist>> = space.points().map(|c| candidate_radii(space, c, &beyond)).collect();
    set.iter().all(|a| {
        space.points().any(|c| {
            radii[c].iter().any(|r| space.d(c, a) < r && ball(space, c, r).is_subset(set))
        })
    })
}

/// Whether `set` is a union of open balls; cross-checked against saturation.
pub fn is_open(space: &Space, set: &Subset) -> bool {
    set.check_in(space).expect("subset of this space");
    let by_balls = is_open_by_balls(space, set);
    let saturated = saturate(space, set) == *set;
    assert_eq!(by_balls, saturated, "open-set criteria disagree on {set:?}");
    by_balls
}

/// Complement is open; cross-checked against saturation.
pub fn is_closed(space: &Space, set: &Subset) -> bool {
    set.check_in(space).expect("subset of this space");
    let by_complement = is_open_by_balls(space, &set.complement());
    let saturated = saturate(space, set) == *set;
    assert_eq!(by_complement, saturated, "closed-set criteria disagree on {set:?}");
    by_complement
}

/// `{x : min over a in A of d(x, a) = 0}`, the closure in a finite space.
pub fn closure(space: &Space, set: &Subset) -> Subset {
    set.check_in(space).expect("subset of this space");
    let members: Vec<usize> = space
        .points()
        .filter(|&x| set.iter().map(|a| space.d(x, a)).min().is_some_and(Dist::is_zero))
        .collect();
    Subset::new(space.len(), members).expect("points are in range")
}

/// Complement of the closure of the complement.
pub fn interior(space: &Space, set: &Subset) -> Subset {
    closure(space, &set.complement()).complement()
}

/// `closure(A) ∩ closure(X \ A)`, asserted equal to `closure(A) \ interior(A)`.
pub fn boundary(space: &Space, set: &Subset) -> Subset {
    let cl = closure(space, set);
    let fr = cl.intersection(&closure(space, &set.complement()));
    assert_eq!(fr, cl.difference(&interior(space, set)), "boundary formulas disagree on {set:?}");
    fr
}

/// An eventually periodic sequence of points: `prefix` then `cycle` repeated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpSequence {
    prefix: Vec<usize>,
    cycle: Vec<usize>,
}

impl EpSequence {
    pub fn new(space: &Space, prefix: Vec<usize>, cycle: Vec<usize>) -> Result<EpSequence> {
        if cycle.is_empty() {
            return input("sequence cycle must be nonempty");
        }
        for &i in prefix.iter().chain(&cycle) {
            space.check_point(i)?;
        }
        Ok(EpSequence { prefix, cycle })
    }

    pub fn constant(space: &Space, a: usize) -> Result<EpSequence> {
        EpSequence::new(space, vec![], vec![a])
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    /// The `k`-th term.
    pub fn term(&self, k: usize) -> usize {
        match self.prefix.get(k) {
            Some(&x) => x,
            None => self.cycle[(k - self.prefix.len()) % self.cycle.len()],
        }
    }

    pub fn lies_in(&self, set: &Subset) -> bool {
        self.prefix.iter().chain(&self.cycle).all(|&i| set.contains(i))
    }
}

/// Cauchy iff all cycle points are pairwise at distance zero: the tail
/// visits every cycle point infinitely often, so any positive distance
/// among them refutes the condition for a smaller radius.
pub fn is_cauchy(space: &Space, seq: &EpSequence) -> bool {
    let c = seq.cycle();
    c.iter().all(|&x| c.iter().all(|&y| space.d(x, y).is_zero()))
}

/// Points the sequence converges to: the zero-class of the cycle when
/// Cauchy, otherwise none.
pub fn limit_points(space: &Space, seq: &EpSequence) -> Subset {
    if is_cauchy(space, seq) {
        class_of(space, seq.cycle()[0])
    } else {
        Subset::empty(space.len())
    }
}

/// Boundary criterion for completeness of `A` in a complete ambient space:
/// every boundary point has a zero-distance partner in `A`.
pub fn complete_via_boundary(space: &Space, set: &Subset) -> bool {
    boundary(space, set)
        .iter()
        .all(|x| set.iter().any(|a| space.d(x, a).is_zero()))
}

/// Closedness of a nonempty `A` via completeness plus `A = ∪ [a]_0`.
pub fn closed_via_completeness(space: &Space, set: &Subset) -> Result<bool> {
    set.check_in(space)?;
    if set.is_empty() {
        return input("the completeness criterion for closedness needs a nonempty set");
    }
    Ok(complete_via_boundary(space, set) && saturate(space, set) == *set)
}
