//! Fixtures shared by the benchmarks.

use pmetric::{random_space, Dist, GenParams, Space};

/// A metric space and a relabelled, reordered copy of it.
pub fn isometric_pair(seed: u64, n: usize) -> (Space, Space) {
    let a = random_space(&GenParams::new(seed, n).with_zero_merge(Dist::zero())).unwrap();
    let perm: Vec<usize> = (0..n).rev().collect();
    let rows = perm.iter().map(|&i| perm.iter().map(|&j| a.d(i, j).clone()).collect()).collect();
    let labels = (0..n).map(|i| format!("r{i}")).collect::<Vec<_>>();
    let b = Space::new(labels, rows).unwrap();
    (a, b)
}

/// A pseudometric space where about a third of the points are clones.
pub fn clustered(seed: u64, n: usize) -> Space {
    random_space(&GenParams::new(seed, n).with_zero_merge(Dist::ratio(1, 3).unwrap())).unwrap()
}
