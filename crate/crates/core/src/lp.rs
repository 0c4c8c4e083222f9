//! Numeric search for line-like configurations in `L^p`.
//!
//! Two ansatzes are supported. The chain search places all points on the unit
//! circle with equal consecutive distances and varies only the first two
//! circle parameters. The free search walks unit steps in `n - 1` directions.
//! Both report the largest deviation of the higher order distances from the
//! line-like pattern, divided by the first order distance.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::numeric::{linelike_discrepancy, lp_circle_point, lp_dist, P2};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LpReport {
    pub p: f64,
    pub n: usize,
    /// Normalized by the first order distance.
    pub min_discrepancy: f64,
    pub raw_discrepancy: f64,
    pub params: Vec<f64>,
}

/// Raw and normalized discrepancy of an ordered list of points.
pub fn discrepancy(p: f64, pts: &[P2]) -> (f64, f64) {
    let raw = linelike_discrepancy(pts, |a, b| lp_dist(p, a, b));
    let d1 = lp_dist(p, pts[0], pts[1]);
    (raw, if d1 > 0.0 { raw / d1 } else { f64::INFINITY })
}

/// Four points of the unit circle with three equal consecutive distances
/// whose second order distances `2^{1/p}` and `2^{1-1/p}` differ unless `p = 2`.
pub fn diamond_quadruple(p: f64) -> [P2; 4] {
    let c = 2f64.powf(-1.0 / p);
    [(0.0, 1.0), (c, c), (1.0, 0.0), (c, -c)]
}

/// Unit-circle points `f(t_1), f(t_2), ...` where every further parameter is
/// the next one (continuing in the same direction) at distance
/// `d(f(t_1), f(t_2))` from its predecessor. `None` if the chain wraps past a
/// half turn without finding the next point.
pub fn chain_points(p: f64, n: usize, t1: f64, t2: f64) -> Option<Vec<P2>> {
    let f = |t: f64| lp_circle_point(p, t);
    let mut ts = vec![t1, t2];
    let mut pts = vec![f(t1), f(t2)];
    let d1 = lp_dist(p, pts[0], pts[1]);
    if d1 <= 0.0 {
        return None;
    }
    while pts.len() < n {
        let k = ts.len();
        let (prev_t, prev) = (ts[k - 1], pts[k - 1]);
        let delta = ts[k - 1] - ts[k - 2];
        let h = delta / 4.0;
        let g = |t: f64| lp_dist(p, f(t), prev) - d1;
        let mut lo = prev_t;
        let mut hi = None;
        let steps = (PI / h.abs()).ceil() as usize;
        for s in 1..=steps {
            let t = prev_t + h * s as f64;
            if g(t) >= 0.0 {
                hi = Some(t);
                break;
            }
            lo = t;
        }
        let mut hi = hi?;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if g(mid) >= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let t = 0.5 * (lo + hi);
        ts.push(t);
        pts.push(f(t));
    }
    Some(pts)
}

fn better(a: &(f64, Vec<f64>), b: &(f64, Vec<f64>)) -> bool {
    match a.0.partial_cmp(&b.0) {
        Some(std::cmp::Ordering::Less) => true,
        Some(std::cmp::Ordering::Equal) => a.1 < b.1,
        _ => false,
    }
}

fn reduce_best(items: impl ParallelIterator<Item = (f64, Vec<f64>)>) -> (f64, Vec<f64>) {
    items.reduce(
        || (f64::INFINITY, Vec::new()),
        |a, b| if better(&b, &a) { b } else { a },
    )
}

/// Chain search over `(t_1, t_2 - t_1)` with `t_2 - t_1` in `[pi/(2n), 2pi/n]`,
/// a `grid` x `grid` scan followed by three rounds of local refinement at
/// halved step. The step window keeps the arc from collapsing to a point.
pub fn lp_linelike_search(p: f64, n: usize, grid: usize) -> LpReport {
    let (dmin, dmax) = (PI / (2.0 * n as f64), 2.0 * PI / n as f64);
    let eval = |t1: f64, dt: f64| -> (f64, Vec<f64>) {
        let dt = dt.clamp(dmin, dmax);
        match chain_points(p, n, t1, t1 + dt) {
            Some(pts) => (discrepancy(p, &pts).1, vec![t1, t1 + dt]),
            None => (f64::INFINITY, vec![t1, t1 + dt]),
        }
    };
    let (mut s1, mut s2) = (2.0 * PI / grid as f64, (dmax - dmin) / grid as f64);
    let mut best = reduce_best((0..grid * (grid + 1)).into_par_iter().map(|idx| {
        let (i, j) = (idx / (grid + 1), idx % (grid + 1));
        eval(i as f64 * s1, dmin + j as f64 * s2)
    }));
    for _ in 0..3 {
        s1 /= 2.0;
        s2 /= 2.0;
        let (c1, c2) = (best.1[0], best.1[1] - best.1[0]);
        let local = reduce_best((0..25).into_par_iter().map(|idx| {
            let (i, j) = (idx / 5, idx % 5);
            eval(c1 + (i as f64 - 2.0) * s1, c2 + (j as f64 - 2.0) * s2)
        }));
        if better(&local, &best) {
            best = local;
        }
    }
    report(p, n, best, |params| chain_points(p, n, params[0], params[1]))
}

/// Points `x_0 = 0`, `x_i = x_{i-1} + f(t_i)` for the given directions.
pub fn free_walk(p: f64, ts: &[f64]) -> Vec<P2> {
    let mut pts = vec![(0.0, 0.0)];
    for &t in ts {
        let s = lp_circle_point(p, t);
        let last = *pts.last().unwrap();
        pts.push((last.0 + s.0, last.1 + s.1));
    }
    pts
}

/// Free search over a first direction and `n - 2` turning angles, all turns
/// of the same sign and at least `pi/(2n)`, on a `grid`-step circle, then
/// three rounds of coordinate refinement at halved step.
pub fn lp_linelike_search_free(p: f64, n: usize, grid: usize) -> LpReport {
    let min_turn = PI / (2.0 * n as f64);
    let step = 2.0 * PI / grid as f64;
    let turn_values: Vec<f64> = (0..grid)
        .map(|k| k as f64 * step)
        .filter(|&t| t >= min_turn && t < PI)
        .collect();
    let to_dirs = |params: &[f64]| -> Vec<f64> {
        let mut ts = vec![params[0]];
        for &turn in &params[1..] {
            ts.push(ts.last().unwrap() + turn);
        }
        ts
    };
    let eval = |params: Vec<f64>| -> (f64, Vec<f64>) {
        if params[1..].iter().any(|&t| t < min_turn || t >= PI) {
            return (f64::INFINITY, params);
        }
        let pts = free_walk(p, &to_dirs(&params));
        (discrepancy(p, &pts).1, params)
    };
    let turns = n.saturating_sub(2);
    let tv = turn_values.len();
    let total = grid * tv.pow(turns as u32);
    let mut best = reduce_best((0..total).into_par_iter().map(|mut idx| {
        let mut params = vec![(idx % grid) as f64 * step];
        idx /= grid;
        for _ in 0..turns {
            params.push(turn_values[idx % tv]);
            idx /= tv;
        }
        eval(params)
    }));
    let mut h = step;
    for _ in 0..3 {
        h /= 2.0;
        let dims = best.1.len();
        let center = best.1.clone();
        let local = reduce_best((0..3usize.pow(dims as u32)).into_par_iter().map(|mut idx| {
            let params = (0..dims)
                .map(|d| {
                    let off = (idx % 3) as f64 - 1.0;
                    idx /= 3;
                    center[d] + off * h
                })
                .collect();
            eval(params)
        }));
        if better(&local, &best) {
            best = local;
        }
    }
    report(p, n, best, |params| Some(free_walk(p, &to_dirs(params))))
}

fn report(p: f64, n: usize, best: (f64, Vec<f64>), rebuild: impl Fn(&[f64]) -> Option<Vec<P2>>) -> LpReport {
    let raw = rebuild(&best.1).map_or(f64::INFINITY, |pts| discrepancy(p, &pts).0);
    LpReport {
        p,
        n,
        min_discrepancy: best.0,
        raw_discrepancy: raw,
        params: best.1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond_discrepancy_closed_form() {
        for p in [1.5, 3.0, 5.0] {
            let (raw, _) = discrepancy(p, &diamond_quadruple(p));
            let expect = (2f64.powf(1.0 / p) - 2f64.powf(1.0 - 1.0 / p)).abs();
            assert!((raw - expect).abs() < 1e-12, "p={p}");
        }
        assert!(discrepancy(2.0, &diamond_quadruple(2.0)).0 < 1e-12);
    }

    #[test]
    fn chain_has_equal_steps() {
        let pts = chain_points(3.0, 6, 0.2, 0.5).unwrap();
        let d1 = lp_dist(3.0, pts[0], pts[1]);
        for w in pts.windows(2) {
            assert!((lp_dist(3.0, w[0], w[1]) - d1).abs() < 1e-12);
        }
    }

    #[test]
    fn euclidean_chain_is_exact() {
        let r = lp_linelike_search(2.0, 6, 40);
        assert!(r.min_discrepancy < 1e-12, "{r:?}");
    }

    #[test]
    fn free_search_small_cases() {
        assert!(lp_linelike_search_free(2.0, 4, 24).min_discrepancy < 1e-12);
        assert!(lp_linelike_search_free(3.0, 3, 12).min_discrepancy < 1e-12);
    }
}
