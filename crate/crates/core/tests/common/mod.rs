#![allow(dead_code)]

use pmetric::{Dist, GenParams, PointMap, Space};

/// Independent pseudometric test: every ordered triple, written without the
/// library's validator.
pub fn brute_force_is_pseudometric(rows: &[Vec<Dist>]) -> bool {
    let n = rows.len();
    (0..n).all(|i| {
        rows[i][i].is_zero()
            && (0..n).all(|j| {
                rows[i][j] == rows[j][i] && (0..n).all(|k| rows[i][j] <= &rows[i][k] + &rows[k][j])
            })
    })
}

/// Every permutation of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Factorial isometry oracle.
pub fn factorial_isometry(a: &Space, b: &Space) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    permutations(a.len())
        .into_iter()
        .find(|p| a.points().all(|i| a.points().all(|j| a.d(i, j) == b.d(p[i], p[j]))))
}

/// All symmetric zero-diagonal matrices over `values` on `n` points that
/// pass the brute-force triangle scan.
pub fn exhaustive_spaces(n: usize, values: &[u64]) -> Vec<Space> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let total = values.len().pow(pairs.len() as u32);
    for code in 0..total {
        let mut rows = vec![vec![Dist::zero(); n]; n];
        let mut c = code;
        for &(i, j) in &pairs {
            let v = Dist::from(values[c % values.len()]);
            c /= values.len();
            rows[i][j] = v.clone();
            rows[j][i] = v;
        }
        if brute_force_is_pseudometric(&rows) {
            out.push(Space::new(pmetric::space::default_labels(n), rows).unwrap());
        }
    }
    out
}

pub fn space(seed: u64, n: usize, merge: (u64, u64)) -> Space {
    pmetric::random_space(&GenParams::new(seed, n).with_zero_merge(Dist::ratio(merge.0, merge.1).unwrap()))
        .unwrap()
}

pub fn metric(seed: u64, n: usize) -> Space {
    space(seed, n, (0, 1))
}

/// A random distance-preserving map `x -> y` built by backtracking over
/// images in an order shuffled by `seed`; `None` if there is none.
pub fn random_distance_preserving(x: &Space, y: &Space, seed: u64) -> Option<PointMap> {
    let mut order: Vec<usize> = y.points().collect();
    let mut s = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
    for i in (1..order.len()).rev() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        order.swap(i, (s % (i as u64 + 1)) as usize);
    }
    fn go(x: &Space, y: &Space, order: &[usize], img: &mut Vec<usize>) -> bool {
        let i = img.len();
        if i == x.len() {
            return true;
        }
        for &t in order {
            if (0..i).all(|k| x.d(i, k) == y.d(t, img[k])) {
                img.push(t);
                if go(x, y, order, img) {
                    return true;
                }
                img.pop();
            }
        }
        false
    }
    let mut img = Vec::new();
    go(x, y, &order, &mut img).then(|| PointMap::new(x.clone(), y.clone(), img).unwrap())
}
