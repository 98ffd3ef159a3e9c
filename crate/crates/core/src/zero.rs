//! The zero-distance equivalence and its classes.

use std::collections::BTreeSet;

use crate::space::{Space, Subset};
use crate::union_find::DisjointSets;

/// A partition of the points of a space into disjoint nonempty blocks,
/// ordered by least member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    /// Builds a partition from blocks; returns `None` unless the blocks are
    /// nonempty, disjoint and cover `0..universe`.
    pub fn from_blocks(universe: usize, blocks: Vec<Vec<usize>>) -> Option<Partition> {
        let mut block_of = vec![usize::MAX; universe];
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        for (k, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return None;
            }
            for &i in b {
                if i >= universe || block_of[i] != usize::MAX {
                    return None;
                }
                block_of[i] = k;
            }
        }
        block_of.iter().all(|&k| k != usize::MAX).then_some(Partition { blocks, block_of })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block containing point `i`.
    pub fn block_of(&self, i: usize) -> usize {
        self.block_of[i]
    }

    pub fn block(&self, k: usize) -> &[usize] {
        &self.blocks[k]
    }

    /// Least member of each block.
    pub fn representatives(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().map(|b| b[0])
    }
}

/// Partitions the points into classes of the relation `d(x, y) = 0`.
///
/// Classes are joined with union-find over all zero-distance pairs. For a
/// valid pseudometric every pair inside a block is at distance zero; that is
/// asserted.
pub fn zero_classes(space: &Space) -> Partition {
    let n = space.len();
    let mut sets = DisjointSets::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if space.d(i, j).is_zero() {
                sets.union(i, j);
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let root = sets.find(i);
        if slot[root] == usize::MAX {
            slot[root] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[slot[root]].push(i);
    }
    for b in &blocks {
        for &x in b {
            assert!(
                b.iter().all(|&y| space.d(x, y).is_zero()),
                "zero-distance relation is not transitive; the space is not a pseudometric"
            );
        }
    }
    let block_of = (0..n).map(|i| slot[sets.find(i)]).collect();
    Partition { blocks, block_of }
}

/// The class `{x : d(a, x) = 0}`.
pub fn class_of(space: &Space, a: usize) -> Subset {
    assert!(a < space.len(), "point index {a} out of range");
    let members = space.points().filter(|&x| space.d(a, x).is_zero()).collect();
    Subset::from_set(space.len(), members)
}

/// Union of the zero-classes of the members of `set`.
pub fn saturate(space: &Space, set: &Subset) -> Subset {
    assert_eq!(set.universe(), space.len(), "subset belongs to a different space");
    let members: BTreeSet<usize> = space
        .points()
        .filter(|&x| set.iter().any(|a| space.d(a, x).is_zero()))
        .collect();
    Subset::from_set(space.len(), members)
}

pub fn is_saturated(space: &Space, set: &Subset) -> bool {
    saturate(space, set) == *set
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn two_pairs() -> Space {
        // classes {a,b}, {c,d} at distance 1
        Space::from_integers(
            vec!["a", "b", "c", "d"],
            &[&[0, 0, 1, 1], &[0, 0, 1, 1], &[1, 1, 0, 0], &[1, 1, 0, 0]],
        )
        .unwrap()
    }

    fn all_zero(n: usize) -> Space {
        Space::from_fn(n, |_, _| 0.into()).unwrap()
    }

    #[test]
    fn zero_class_examples() {
        assert_eq!(zero_classes(&all_zero(3)).blocks(), &[vec![0, 1, 2]]);
        let tri = Space::from_integers(vec!["a", "b", "c"], &[&[0, 1, 1], &[1, 0, 2], &[1, 2, 0]])
            .unwrap();
        assert_eq!(zero_classes(&tri).blocks(), &[vec![0], vec![1], vec![2]]);
        let p = zero_classes(&two_pairs());
        assert_eq!(p.blocks(), &[vec![0, 1], vec![2, 3]]);
        assert_eq!(p.block_of(3), 1);
        assert_eq!(p.representatives().collect::<Vec<_>>(), vec![0, 2]);
    }

    #[test]
    fn class_of_examples() {
        let tri = Space::from_integers(vec!["a", "b"], &[&[0, 5], &[5, 0]]).unwrap();
        assert_eq!(class_of(&tri, 1), Subset::new(2, [1]).unwrap());
        assert_eq!(class_of(&all_zero(3), 1), Subset::full(3));
        assert_eq!(class_of(&two_pairs(), 1), Subset::new(4, [0, 1]).unwrap());
    }

    #[test]
    fn saturate_examples() {
        let s = two_pairs();
        assert_eq!(saturate(&s, &Subset::empty(4)), Subset::empty(4));
        assert_eq!(saturate(&s, &Subset::new(4, [0]).unwrap()), Subset::new(4, [0, 1]).unwrap());
        let m = Space::from_integers(vec!["a", "b"], &[&[0, 2], &[2, 0]]).unwrap();
        for a in Subset::all(2) {
            assert_eq!(saturate(&m, &a), a);
        }
    }

    #[test]
    fn partition_from_blocks_checks_cover() {
        assert!(Partition::from_blocks(3, vec![vec![2, 0], vec![1]]).is_some());
        assert!(Partition::from_blocks(3, vec![vec![0], vec![1]]).is_none());
        assert!(Partition::from_blocks(2, vec![vec![0, 1], vec![1]]).is_none());
        assert!(Partition::from_blocks(2, vec![vec![0, 1], vec![]]).is_none());
    }
}
