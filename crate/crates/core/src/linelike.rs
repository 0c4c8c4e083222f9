//! Line-like orderings over an abstract distance table.
//!
//! Everything here only compares distance keys for equality, so the same code
//! serves exact scalars, lattice distance-class ids and scaled integers.

use std::collections::HashMap;
use std::hash::Hash;

/// Checks that `order` realizes the equally-spaced pattern: `d(o_i, o_j)`
/// depends only on `j - i` and the `n - 1` order distances are distinct.
pub fn check_order<K, F>(order: &[usize], dist: F) -> bool
where
    K: Eq + Hash,
    F: Fn(usize, usize) -> K,
{
    let n = order.len();
    let mut ds: Vec<K> = Vec::with_capacity(n.saturating_sub(1));
    for k in 1..n {
        ds.push(dist(order[0], order[k]));
    }
    for i in 1..n {
        for j in i + 1..n {
            if dist(order[i], order[j]) != ds[j - i - 1] {
                return false;
            }
        }
    }
    let mut seen = HashMap::with_capacity(ds.len());
    ds.iter().all(|d| seen.insert(d, ()).is_none())
}

/// Finds a line-like ordering of the points `0..n`, if one exists.
///
/// In a line-like set the `k`-th order distance occurs exactly `n - k` times,
/// so the two endpoints form the unique pair whose distance is unique and the
/// first order distance is the class of size `n - 1`. The walk between the
/// endpoints along that class is then forced. The returned ordering starts at
/// the smaller endpoint index.
pub fn find_order<K, F>(n: usize, dist: F) -> Option<Vec<usize>>
where
    K: Eq + Hash + Clone,
    F: Fn(usize, usize) -> K,
{
    match n {
        0 => return Some(Vec::new()),
        1 => return Some(vec![0]),
        2 => return Some(vec![0, 1]),
        _ => {}
    }
    let mut table: Vec<Vec<Option<K>>> = vec![vec![None; n]; n];
    let mut counts: HashMap<K, usize> = HashMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = dist(i, j);
            *counts.entry(d.clone()).or_default() += 1;
            table[i][j] = Some(d.clone());
            table[j][i] = Some(d);
        }
    }
    if counts.len() != n - 1 {
        return None;
    }
    let mut mults: Vec<usize> = counts.values().copied().collect();
    mults.sort_unstable();
    if mults.iter().enumerate().any(|(i, &m)| m != i + 1) {
        return None;
    }
    let unique = counts.iter().find(|(_, &c)| c == 1)?.0.clone();
    let step = counts.iter().find(|(_, &c)| c == n - 1)?.0.clone();
    let d = |i: usize, j: usize| table[i][j].as_ref().expect("off-diagonal");

    let (mut u, mut v) = (usize::MAX, usize::MAX);
    'outer: for i in 0..n {
        for j in i + 1..n {
            if *d(i, j) == unique {
                (u, v) = (i, j);
                break 'outer;
            }
        }
    }
    let mut order = vec![u];
    let mut used = vec![false; n];
    used[u] = true;
    while order.len() < n {
        let cur = *order.last().unwrap();
        let mut next = (0..n).filter(|&w| !used[w] && *d(cur, w) == step);
        let w = next.next()?;
        if next.next().is_some() {
            return None;
        }
        used[w] = true;
        order.push(w);
    }
    if *order.last().unwrap() != v {
        return None;
    }
    check_order(&order, |i, j| d(i, j).clone()).then_some(order)
}

/// Reference implementation by trying every ordering; for tests.
pub fn find_order_brute<K, F>(n: usize, dist: F) -> Option<Vec<usize>>
where
    K: Eq + Hash,
    F: Fn(usize, usize) -> K,
{
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if perm.first() <= perm.last() && check_order(&perm, &dist) {
            return Some(perm);
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
