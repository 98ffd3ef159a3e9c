//! Superspaces: embeddings, the CEC condition, the zero-point gluing that
//! makes a nonempty space non-closed, and the gluing of a metric superspace
//! of the reflection back onto the original space.

mod generate;

use std::collections::HashSet;

pub use generate::{random_space, random_superspace, GenParams};

use crate::dist::Dist;
use crate::error::{input, precondition, Result};
use crate::morphisms::{is_distance_preserving, PointMap};
use crate::reflection::metric_reflection;
use crate::space::{is_metric, Space, Subset};
use crate::topology::is_closed;

/// Suffix appended to labels that would collide with existing points.
pub const FRESH_SUFFIX: &str = "~*";

/// `sub` sitting inside `sup` through `inclusion`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    inclusion: PointMap,
}

impl Embedding {
    pub fn new(inclusion: PointMap) -> Embedding {
        Embedding { inclusion }
    }

    pub fn identity(space: &Space) -> Embedding {
        Embedding { inclusion: PointMap::identity(space) }
    }

    pub fn sub(&self) -> &Space {
        self.inclusion.domain()
    }

    pub fn sup(&self) -> &Space {
        self.inclusion.codomain()
    }

    pub fn inclusion(&self) -> &PointMap {
        &self.inclusion
    }

    /// Image of `sub` as a subset of `sup`.
    pub fn image(&self) -> Subset {
        self.inclusion.image(&self.sub().full())
    }
}

/// Injective and distance-preserving inclusion.
pub fn is_superspace(e: &Embedding) -> bool {
    e.inclusion.is_injective() && is_distance_preserving(&e.inclusion)
}

/// Every point outside the image is at positive distance from every image
/// point.
pub fn in_cec(e: &Embedding) -> Result<bool> {
    if !is_superspace(e) {
        return precondition("not a superspace embedding");
    }
    let image = e.image();
    let sup = e.sup();
    Ok(image
        .complement()
        .iter()
        .all(|x| image.iter().all(|y| sup.d(x, y).is_positive())))
}

/// `base`, or `base` with [`FRESH_SUFFIX`] and a counter, whichever is not
/// already taken.
pub fn fresh_label(base: &str, taken: &HashSet<String>) -> String {
    if !taken.contains(base) {
        return base.to_owned();
    }
    (1..)
        .map(|k| if k == 1 { format!("{base}{FRESH_SUFFIX}") } else { format!("{base}{FRESH_SUFFIX}{k}") })
        .find(|l| !taken.contains(l))
        .expect("unbounded counter")
}

/// Adds one point `label` at distance zero from `center` and otherwise at
/// the same distances as `center`. The original space is not closed in the
/// result and the embedding is not in CEC.
pub fn glue_zero_point(x: &Space, center: usize, label: &str) -> Result<Embedding> {
    if x.is_empty() {
        return input("gluing a zero point needs a nonempty space");
    }
    x.check_point(center)?;
    if x.index_of(label).is_some() {
        return input(format!("label {label:?} already names a point"));
    }
    let n = x.len();
    let mut labels = x.labels().to_vec();
    labels.push(label.to_owned());
    let dist = |i: usize, j: usize| -> Dist {
        match (i == n, j == n) {
            (true, true) => Dist::zero(),
            (true, false) => x.d(center, j).clone(),
            (false, true) => x.d(center, i).clone(),
            (false, false) => x.d(i, j).clone(),
        }
    };
    let matrix = (0..=n).flat_map(|i| (0..=n).map(move |j| (i, j))).map(|(i, j)| dist(i, j)).collect();
    let sup = Space::from_parts(labels, matrix);
    Ok(Embedding::new(PointMap::new(x.clone(), sup, x.points().collect())?))
}

/// Glues a metric superspace `ystar` of the reflection of `y` onto `y`.
///
/// The result keeps the points of `y` (same indices, same labels) and adds
/// every point of `ystar` outside the image of the reflection, relabelled
/// with [`fresh_label`] on collision. Distances are read off `ystar` after
/// sending each original point to its class:
///
/// | x1 | x2 | d(x1, x2) |
/// |----|----|-----------|
/// | in Y | in Y | ρ*(π(x1), π(x2)) |
/// | in Y | new | ρ*(π(x1), x2) |
/// | new | in Y | ρ*(x1, π(x2)) |
/// | new | new | ρ*(x1, x2) |
///
/// `refl_embedding` maps the quotient of `metric_reflection(y)` into `ystar`.
pub fn completion_glue(y: &Space, ystar: &Space, refl_embedding: &PointMap) -> Result<Embedding> {
    if !is_metric(ystar) {
        return precondition("the glued superspace must be metric");
    }
    let refl = metric_reflection(y)?;
    if *refl_embedding.domain() != refl.quotient {
        return precondition("embedding domain is not the metric reflection of the space");
    }
    if *refl_embedding.codomain() != *ystar {
        return precondition("embedding codomain is not the glued superspace");
    }
    if !refl_embedding.is_injective() || !is_distance_preserving(refl_embedding) {
        return precondition("reflection embedding is not distance-preserving and injective");
    }

    enum Point {
        Original(usize),
        Added(usize),
    }
    let in_image = refl_embedding.image(&refl.quotient.full());
    let mut points: Vec<Point> = y.points().map(Point::Original).collect();
    points.extend(in_image.complement().iter().map(Point::Added));

    let mut taken: HashSet<String> = y.labels().iter().cloned().collect();
    let mut labels = y.labels().to_vec();
    for p in &points[y.len()..] {
        if let Point::Added(s) = p {
            let l = fresh_label(ystar.label(*s), &taken);
            taken.insert(l.clone());
            labels.push(l);
        }
    }

    // π composed with the embedding into ystar
    let to_star = |i: usize| refl_embedding.apply(refl.projection.apply(i));
    let dist = |p: &Point, q: &Point| -> Dist {
        match (p, q) {
            (Point::Original(a), Point::Original(b)) => ystar.d(to_star(*a), to_star(*b)).clone(),
            (Point::Original(a), Point::Added(s)) => ystar.d(to_star(*a), *s).clone(),
            (Point::Added(s), Point::Original(b)) => ystar.d(*s, to_star(*b)).clone(),
            (Point::Added(s), Point::Added(t)) => ystar.d(*s, *t).clone(),
        }
    };
    let matrix = points.iter().flat_map(|p| points.iter().map(move |q| (p, q))).map(|(p, q)| dist(p, q)).collect();
    let x = Space::from_parts(labels, matrix);
    Ok(Embedding::new(PointMap::new(y.clone(), x, y.points().collect())?))
}

/// Evaluates "Y closed in the superspace implies the embedding is in CEC"
/// on one instance.
pub fn check_cec_minimality(y: &Space, e: &Embedding) -> Result<bool> {
    if e.sub() != y {
        return input("embedding does not start at the given space");
    }
    if !is_superspace(e) {
        return precondition("not a superspace embedding");
    }
    Ok(!is_closed(e.sup(), &e.image()) || in_cec(e)?)
}
