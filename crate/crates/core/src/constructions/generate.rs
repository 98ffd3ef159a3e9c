//! Seeded instance generators.
//!
//! Randomness comes from ChaCha8 seeded with `seed_from_u64`, which produces
//! the same stream on every platform. Distances are drawn on a grid of
//! `GRID` steps up to `max_entry`.

use std::collections::HashSet;

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{fresh_label, Embedding};
use crate::dist::Dist;
use crate::error::{input, Result};
use crate::morphisms::PointMap;
use crate::space::{default_labels, Space};

const GRID: u64 = 12;

/// Parameters shared by the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenParams {
    pub seed: u64,
    /// Points to generate (or to add, for superspaces).
    pub n: usize,
    /// Share of points that are zero-distance clones, in `[0, 1]`.
    pub zero_merge_prob: Dist,
    /// Upper bound on drawn distances; must be positive.
    pub max_entry: Dist,
}

impl GenParams {
    pub fn new(seed: u64, n: usize) -> GenParams {
        GenParams { seed, n, zero_merge_prob: Dist::ratio(1, 4).unwrap(), max_entry: Dist::from(4) }
    }

    pub fn with_zero_merge(mut self, p: Dist) -> GenParams {
        self.zero_merge_prob = p;
        self
    }

    pub fn with_max_entry(mut self, m: Dist) -> GenParams {
        self.max_entry = m;
        self
    }

    fn check(&self) -> Result<()> {
        if self.zero_merge_prob > Dist::one() {
            return input("zero_merge_prob must lie in [0, 1]");
        }
        if !self.max_entry.is_positive() {
            return input("max_entry must be positive");
        }
        Ok(())
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// A distance in `(0, max_entry]`.
    fn draw(&self, rng: &mut ChaCha8Rng) -> Dist {
        self.max_entry.mul_ratio(rng.random_range(1..=GRID), GRID)
    }

    fn merge(&self, rng: &mut ChaCha8Rng) -> bool {
        let num = self.zero_merge_prob.numer().to_u64().unwrap_or(u64::MAX);
        let den = self.zero_merge_prob.denom().to_u64().unwrap_or(u64::MAX);
        rng.random_range(0..den) < num
    }
}

/// Replaces each entry by the shortest path length through the matrix.
fn shortest_path_repair(m: &mut [Vec<Dist>]) {
    let n = m.len();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = &m[i][k] + &m[k][j];
                if via < m[i][j] {
                    m[i][j] = via;
                }
            }
        }
    }
}

/// A random pseudometric space on `p.n` points labelled `p0..`.
///
/// `⌈n (1 - zero_merge_prob)⌉` base points get a random symmetric matrix in
/// `(0, max_entry]`, repaired by shortest paths; the remaining points are
/// zero-distance clones of random earlier points. Point order is shuffled at
/// the end.
pub fn random_space(p: &GenParams) -> Result<Space> {
    p.check()?;
    if p.n == 0 {
        return input("random spaces need at least one point");
    }
    let mut rng = p.rng();
    let keep = (Dist::one().as_rational() - p.zero_merge_prob.as_rational())
        * num_rational::BigRational::from_integer(p.n.into());
    let base = keep.ceil().to_integer().to_usize().unwrap_or(p.n).clamp(1, p.n);

    let mut m = vec![vec![Dist::zero(); base]; base];
    for i in 0..base {
        for j in i + 1..base {
            let d = p.draw(&mut rng);
            m[i][j] = d.clone();
            m[j][i] = d;
        }
    }
    shortest_path_repair(&mut m);

    while m.len() < p.n {
        let src = rng.random_range(0..m.len());
        let mut row = m[src].clone();
        for (r, d) in m.iter_mut().zip(&row) {
            r.push(d.clone());
        }
        row.push(Dist::zero());
        m.push(row);
    }

    let mut order: Vec<usize> = (0..p.n).collect();
    order.shuffle(&mut rng);
    let matrix = order
        .iter()
        .flat_map(|&i| order.iter().map(move |&j| (i, j)))
        .map(|(i, j)| m[i][j].clone())
        .collect();
    Ok(Space::from_parts(default_labels(p.n), matrix))
}

/// Adds `p.n` points to `y`, one at a time.
///
/// Each new point is either (with probability `zero_merge_prob`, and only
/// when `force_cec` is off) a zero-distance clone of a point of `y`, or gets
/// the distances `f(z) = max(min_w (g(w) + d(w, z)), t + d(a, z))` to the
/// current points `z`, where `g` and `t` are positive random draws and `a` a
/// random anchor. The first term is the shortest-path repair of `g`; the
/// second keeps `f(z) + f(w) >= d(z, w)`. Every such `f` is a valid
/// one-point extension, and it is positive everywhere, so non-clone points
/// never break CEC.
pub fn random_superspace(y: &Space, p: &GenParams, force_cec: bool) -> Result<Embedding> {
    p.check()?;
    let mut rng = p.rng();
    let mut m = y.rows();
    let mut taken: HashSet<String> = y.labels().iter().cloned().collect();
    let mut labels = y.labels().to_vec();

    for k in 0..p.n {
        let cur = m.len();
        let f: Vec<Dist> = if !force_cec && !y.is_empty() && p.merge(&mut rng) {
            let a = rng.random_range(0..y.len());
            m[a].clone()
        } else {
            let g: Vec<Dist> = (0..cur).map(|_| p.draw(&mut rng)).collect();
            let t = p.draw(&mut rng);
            let anchor = if cur > 0 { rng.random_range(0..cur) } else { 0 };
            (0..cur)
                .map(|z| {
                    let repaired = (0..cur).map(|w| &g[w] + &m[w][z]).min().expect("nonempty");
                    let pendant = &t + &m[anchor][z];
                    repaired.max(pendant)
                })
                .collect()
        };
        for (row, d) in m.iter_mut().zip(&f) {
            row.push(d.clone());
        }
        let mut row = f;
        row.push(Dist::zero());
        m.push(row);
        let l = fresh_label(&format!("q{k}"), &taken);
        taken.insert(l.clone());
        labels.push(l);
    }

    let sup = Space::from_parts(labels, m.into_iter().flatten().collect());
    Ok(Embedding::new(PointMap::new(y.clone(), sup, y.points().collect())?))
}
