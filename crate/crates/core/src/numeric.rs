//! Double-precision helpers for the `L^p` and arc constructions.

/// Tolerance for treating two numeric distances as equal.
pub const DIST_TOL: f64 = 1e-12;

pub type P2 = (f64, f64);

pub fn lp_norm(p: f64, dx: f64, dy: f64) -> f64 {
    let (ax, ay) = (dx.abs(), dy.abs());
    let m = ax.max(ay);
    if m == 0.0 {
        return 0.0;
    }
    // factor out the max to keep the powers in range
    m * ((ax / m).powf(p) + (ay / m).powf(p)).powf(1.0 / p)
}

pub fn lp_dist(p: f64, a: P2, b: P2) -> f64 {
    lp_norm(p, b.0 - a.0, b.1 - a.1)
}

pub fn l2_dist(a: P2, b: P2) -> f64 {
    (b.0 - a.0).hypot(b.1 - a.1)
}

/// Point of the `L^p` unit circle at parameter `t`, signs carried through.
pub fn lp_circle_point(p: f64, t: f64) -> P2 {
    let e = 2.0 / p;
    let (s, c) = t.sin_cos();
    (c.signum() * c.abs().powf(e), s.signum() * s.abs().powf(e))
}

/// Largest deviation `|d(p_i, p_j) - d(p_1, p_{1+j-i})|` over all pairs.
pub fn linelike_discrepancy(points: &[P2], dist: impl Fn(P2, P2) -> f64) -> f64 {
    let n = points.len();
    let mut worst = 0.0f64;
    for i in 1..n {
        for j in i + 1..n {
            let dev = (dist(points[i], points[j]) - dist(points[0], points[j - i])).abs();
            worst = worst.max(dev);
        }
    }
    worst
}

/// Checks the line-like pattern of an ordered point list up to `tol`:
/// shift-invariant order distances that are pairwise distinct.
pub fn is_linelike_numeric(points: &[P2], dist: impl Fn(P2, P2) -> f64, tol: f64) -> bool {
    let n = points.len();
    if linelike_discrepancy(points, &dist) > tol {
        return false;
    }
    let ds: Vec<f64> = (1..n).map(|k| dist(points[0], points[k])).collect();
    for a in 0..ds.len() {
        for b in a + 1..ds.len() {
            if (ds[a] - ds[b]).abs() <= tol {
                return false;
            }
        }
    }
    true
}

/// Circumcenter of a triangle, `None` when the points are (nearly) collinear.
pub fn circumcenter(a: P2, b: P2, c: P2) -> Option<P2> {
    let d = 2.0 * (a.0 * (b.1 - c.1) + b.0 * (c.1 - a.1) + c.0 * (a.1 - b.1));
    if d.abs() < 1e-15 {
        return None;
    }
    let a2 = a.0 * a.0 + a.1 * a.1;
    let b2 = b.0 * b.0 + b.1 * b.1;
    let c2 = c.0 * c.0 + c.1 * c.1;
    let ux = (a2 * (b.1 - c.1) + b2 * (c.1 - a.1) + c2 * (a.1 - b.1)) / d;
    let uy = (a2 * (c.0 - b.0) + b2 * (a.0 - c.0) + c2 * (b.0 - a.0)) / d;
    Some((ux, uy))
}
