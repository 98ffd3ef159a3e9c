//! Maps between spaces: pseudoisometry checks, composition, the isometry
//! induced on metric reflections, and isometry search.

mod isometry;

use std::fmt;

pub use isometry::{find_isometry, IsoSearchStats};

use crate::error::{input, precondition, Error, Result};
use crate::reflection::{metric_reflection, Reflection};
use crate::report::Report;
use crate::space::{Space, Subset};

pub const DISTANCE_PRESERVING: &str = "distance-preserving";
pub const MEETS_EVERY_CLASS: &str = "meets-every-zero-class";

/// Default cap on `|Y|^|X|` for [`brute_force_pseudoisometry`].
pub const BRUTE_FORCE_CAP: u128 = 1_000_000;

/// A total map from the points of `domain` to the points of `codomain`.
#[derive(Clone, PartialEq, Eq)]
pub struct PointMap {
    domain: Space,
    codomain: Space,
    images: Vec<usize>,
}

impl fmt::Debug for PointMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.pairs())
            .finish()
    }
}

impl PointMap {
    pub fn new(domain: Space, codomain: Space, images: Vec<usize>) -> Result<PointMap> {
        if images.len() != domain.len() {
            return input(format!(
                "map has {} images for a {}-point domain",
                images.len(),
                domain.len()
            ));
        }
        if let Some(&bad) = images.iter().find(|&&j| j >= codomain.len()) {
            return input(format!("image index {bad} out of range for {} points", codomain.len()));
        }
        Ok(PointMap { domain, codomain, images })
    }

    pub fn identity(space: &Space) -> PointMap {
        PointMap { domain: space.clone(), codomain: space.clone(), images: space.points().collect() }
    }

    /// Map given as `(domain label, codomain label)` pairs covering the domain.
    pub fn from_labels<S: AsRef<str>>(domain: Space, codomain: Space, pairs: &[(S, S)]) -> Result<PointMap> {
        let mut images = vec![None; domain.len()];
        for (a, b) in pairs {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = domain.index_of(a).ok_or_else(|| Error::Input(format!("unknown domain point {a:?}")))?;
            let j = codomain.index_of(b).ok_or_else(|| Error::Input(format!("unknown codomain point {b:?}")))?;
            if images[i].replace(j).is_some_and(|old| old != j) {
                return input(format!("point {a:?} mapped twice"));
            }
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, j)| j.ok_or_else(|| Error::Input(format!("point {:?} has no image", domain.label(i)))))
            .collect::<Result<Vec<_>>>()?;
        PointMap::new(domain, codomain, images)
    }

    pub fn domain(&self) -> &Space {
        &self.domain
    }

    pub fn codomain(&self) -> &Space {
        &self.codomain
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `(label, image label)` pairs in domain order.
    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.images.iter().enumerate().map(|(i, &j)| (self.domain.label(i), self.codomain.label(j)))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.len()];
        self.images.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.codomain.len()];
        for &j in &self.images {
            seen[j] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.len() == self.codomain.len() && self.is_injective()
    }

    pub fn image(&self, set: &Subset) -> Subset {
        Subset::new(self.codomain.len(), set.iter().map(|i| self.images[i])).expect("images are in range")
    }

    pub fn preimage(&self, set: &Subset) -> Subset {
        Subset::new(self.domain.len(), self.domain.points().filter(|&i| set.contains(self.images[i])))
            .expect("domain points are in range")
    }

    fn distance_violations(&self, report: &mut Report, stop_at_first: bool) {
        let (d, rho) = (&self.domain, &self.codomain);
        for x in d.points() {
            for y in x + 1..d.len() {
                let mapped = rho.d(self.images[x], self.images[y]);
                if mapped != d.d(x, y) {
                    report.push(DISTANCE_PRESERVING, vec![x, y], vec![d.d(x, y).clone(), mapped.clone()]);
                    if stop_at_first {
                        return;
                    }
                }
            }
        }
    }
}

/// Whether `rho(m(x), m(y)) = d(x, y)` for all pairs.
pub fn is_distance_preserving(m: &PointMap) -> bool {
    let mut r = Report::new();
    m.distance_violations(&mut r, true);
    r.ok()
}

/// First pair `(x, y)` whose distance the map changes.
pub fn distance_witness(m: &PointMap) -> Option<(usize, usize)> {
    let mut r = Report::new();
    m.distance_violations(&mut r, true);
    r.violations().first().map(|v| (v.witness[0], v.witness[1]))
}

/// Checks both pseudoisometry conditions: the map preserves distances, and
/// every codomain point is at distance zero from some image point.
///
/// Distance witnesses are domain pairs `[x, y]` with values
/// `[d(x, y), rho(m(x), m(y))]`; class witnesses are the unreached codomain
/// point `[u]`.
pub fn is_pseudoisometry(m: &PointMap) -> Report {
    let mut report = Report::new();
    m.distance_violations(&mut report, false);
    let rho = &m.codomain;
    for u in rho.points() {
        if !m.images.iter().any(|&v| rho.d(v, u).is_zero()) {
            report.push(MEETS_EVERY_CLASS, vec![u], vec![]);
        }
    }
    report
}

/// Distance-preserving bijection.
pub fn is_isometry(m: &PointMap) -> bool {
    m.is_bijective() && is_distance_preserving(m)
}

/// `g` after `f`.
pub fn compose(f: &PointMap, g: &PointMap) -> Result<PointMap> {
    if f.codomain != g.domain {
        return input("codomain of the first map is not the domain of the second");
    }
    let images = f.images.iter().map(|&j| g.images[j]).collect();
    PointMap::new(f.domain.clone(), g.codomain.clone(), images)
}

/// The map `F` between metric reflections with `F(pi_X(x)) = pi_Y(phi(x))`.
///
/// Points at distance zero have images at distance zero, so `F` does not
/// depend on the chosen class member; this is asserted over every point.
pub fn induced_reflection_map(phi: &PointMap) -> Result<PointMap> {
    let report = is_pseudoisometry(phi);
    if !report.ok() {
        return precondition(format!("not a pseudoisometry: {}", report.violations()[0]));
    }
    if phi.domain.is_empty() || phi.codomain.is_empty() {
        return precondition("reflections need nonempty spaces");
    }
    let rx = metric_reflection(&phi.domain)?;
    let ry = metric_reflection(&phi.codomain)?;
    let images: Vec<usize> = rx
        .section
        .images()
        .iter()
        .map(|&rep| ry.projection.apply(phi.apply(rep)))
        .collect();
    let f = PointMap::new(rx.quotient.clone(), ry.quotient.clone(), images)?;
    assert!(commutes(phi, &f, &rx, &ry), "induced map is not well defined on classes");
    Ok(f)
}

/// Whether `f . pi_X = pi_Y . phi` holds pointwise.
pub fn commutes(phi: &PointMap, f: &PointMap, rx: &Reflection, ry: &Reflection) -> bool {
    phi.domain
        .points()
        .all(|x| f.apply(rx.projection.apply(x)) == ry.projection.apply(phi.apply(x)))
}

/// Searches for a pseudoisometry `x -> y` by comparing metric reflections.
///
/// When the reflections are isometric via `F`, the witness is
/// `section_Y . F . projection_X`.
pub fn are_pseudoisometric(x: &Space, y: &Space) -> Result<Option<PointMap>> {
    if x.is_empty() || y.is_empty() {
        return input("pseudoisometry search needs nonempty spaces");
    }
    let rx = metric_reflection(x)?;
    let ry = metric_reflection(y)?;
    let (found, _) = find_isometry(&rx.quotient, &ry.quotient)?;
    let Some(f) = found else { return Ok(None) };
    let witness = compose(&compose(&rx.projection, &f)?, &ry.section)?;
    debug_assert!(is_pseudoisometry(&witness).ok());
    Ok(Some(witness))
}

/// Enumerates every map `x -> y` in lexicographic image order and returns the
/// first pseudoisometry. Fails when `|Y|^|X|` exceeds `cap`.
pub fn brute_force_pseudoisometry(x: &Space, y: &Space, cap: u128) -> Result<Option<PointMap>> {
    let (n, m) = (x.len(), y.len());
    let total = u32::try_from(n)
        .ok()
        .and_then(|e| (m as u128).checked_pow(e))
        .filter(|&t| t <= cap)
        .ok_or_else(|| Error::Resource(format!("{m}^{n} maps exceed the cap of {cap}")))?;
    if total == 0 {
        return Ok(None);
    }
    let mut images = vec![0usize; n];
    loop {
        let candidate = PointMap::new(x.clone(), y.clone(), images.clone())?;
        if is_pseudoisometry(&candidate).ok() {
            return Ok(Some(candidate));
        }
        // odometer, last position fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            images[pos] += 1;
            if images[pos] < m {
                break;
            }
            images[pos] = 0;
        }
    }
}
