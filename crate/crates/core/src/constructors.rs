//! Explicit configurations: segment-norm line-like chains, arc chains, size-4
//! strong crescents in any norm, the published `L^inf` and `L2` sets and the
//! named example families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{as_polygon, collinear, exact_distance, unit_circle_segments, NormSpec, Point};
use crate::lp;
use crate::numeric::{self, P2};
use crate::predicates::{is_linelike, is_strong_crescent, Configuration};
use crate::scalar::ExactScalar;

fn q(n: i64, d: i64) -> ExactScalar {
    ExactScalar::ratio(n, d)
}

fn int(v: i64) -> ExactScalar {
    ExactScalar::from_int(v)
}

/// How the offsets along the unit-circle segment are chosen.
#[derive(Clone, Debug)]
pub enum SegmentChoice {
    /// `P_i = i * m + eps_i * e` on the first segment, with `m` the midpoint
    /// and `e` the half-direction of the segment; needs `|eps_{i+1} - eps_i| <= 1`.
    Offsets(Vec<ExactScalar>),
    /// Random segment and random offsets, rejecting any point that would
    /// create a collinear triple.
    Seeded(u64),
}

/// Points with `||P_j - P_i|| = |j - i|`, each step taken along a segment of
/// the unit circle.
pub fn build_segment_norm_linelike(norm: &NormSpec, n: usize, choice: &SegmentChoice) -> Result<Configuration> {
    let segments = unit_circle_segments(norm);
    if segments.is_empty() {
        return Err(Error::StrictlyConvexNorm);
    }
    if n < 2 {
        return Err(Error::InvalidParameter("need at least two points".into()));
    }
    let point_at = |seg: usize, i: usize, eps: &ExactScalar| {
        let s = &segments[seg];
        let m = s.from.add(&s.to).scale(&q(1, 2));
        let e = s.to.sub(&s.from).scale(&q(1, 2));
        m.scale(&int(i as i64)).add(&e.scale(eps))
    };
    let points: Vec<Point> = match choice {
        SegmentChoice::Offsets(eps) => {
            if eps.len() != n {
                return Err(Error::InvalidParameter(format!("expected {n} offsets, got {}", eps.len())));
            }
            if eps.windows(2).any(|w| (&w[1] - &w[0]).abs() > ExactScalar::one()) {
                return Err(Error::InvalidParameter("consecutive offsets differ by more than 1".into()));
            }
            eps.iter().enumerate().map(|(i, e)| point_at(0, i + 1, e)).collect()
        }
        SegmentChoice::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let seg = rng.gen_range(0..segments.len());
            const DEN: i64 = 1024;
            let mut eps = ExactScalar::zero();
            let mut pts = vec![point_at(seg, 1, &eps)];
            while pts.len() < n {
                let mut placed = false;
                for _ in 0..10_000 {
                    let cand_eps = &eps + &q(rng.gen_range(-DEN + 1..DEN), DEN);
                    let cand = point_at(seg, pts.len() + 1, &cand_eps);
                    let clash = (0..pts.len())
                        .any(|i| (i + 1..pts.len()).any(|j| collinear(&pts[i], &pts[j], &cand)));
                    if !clash {
                        eps = cand_eps;
                        pts.push(cand);
                        placed = true;
                        break;
                    }
                }
                if !placed {
                    return Err(Error::ResourceLimit("could not avoid collinear triples".into()));
                }
            }
            pts
        }
    };
    let cfg = Configuration::new(norm.clone(), points)?;
    match is_linelike(&cfg)? {
        Some(_) => Ok(cfg),
        None => Err(Error::NotLineLike),
    }
}

/// Unit steps turning by `epsilon` each time, starting at angle `theta1` from
/// `radius * (cos theta1, sin theta1)`; the points share a Euclidean circle.
pub fn build_arc_linelike(n: usize, epsilon: f64, theta1: f64, theta2: f64, radius: f64) -> Result<Vec<P2>> {
    use std::f64::consts::PI;
    if n < 2 {
        return Err(Error::InvalidParameter("need at least two points".into()));
    }
    if !(0.0 <= theta1 && theta1 < theta2 && theta2 <= PI) {
        return Err(Error::InvalidParameter("need 0 <= theta1 < theta2 <= pi".into()));
    }
    let max_eps = if n > 2 { (theta2 - theta1) / (n - 2) as f64 } else { f64::INFINITY };
    if !(epsilon >= 0.0 && epsilon <= max_eps + 1e-15) {
        return Err(Error::InvalidParameter(format!("epsilon must lie in [0, {max_eps}]")));
    }
    let mut pts = vec![(radius * theta1.cos(), radius * theta1.sin())];
    for i in 2..=n {
        let a = theta1 + (i - 2) as f64 * epsilon;
        let prev = *pts.last().unwrap();
        pts.push((prev.0 + a.cos(), prev.1 + a.sin()));
    }
    if !numeric::is_linelike_numeric(&pts, numeric::l2_dist, 1e-9) {
        return Err(Error::NotLineLike);
    }
    Ok(pts)
}

/// Size-4 strong crescent `{A, B, C, D}` with `|AD| = |BD| = |CD|` and `|AB| = |BC|`.
///
/// `L2` uses an exact Pythagorean rotation. Polygonal balls (including `L1`
/// and `L^inf`) first try a corner of the unit circle with `A` and `C` on the
/// two adjacent edges, then fall back to a deterministic scan of rational
/// points of the unit circle. `L^p` is numeric only, see [`build_crescent4_lp`].
pub fn build_crescent4(norm: &NormSpec) -> Result<Configuration> {
    match norm {
        NormSpec::Lp(_) => Err(Error::UnsupportedExactNorm),
        NormSpec::L2 => {
            let pts = vec![
                Point::new(int(1), int(0)),
                Point::new(q(24, 25), q(7, 25)),
                Point::new(q(527, 625), q(336, 625)),
                Point::origin(),
            ];
            Configuration::new(NormSpec::L2, pts)
        }
        _ => {
            let poly = as_polygon(norm).expect("polygonal norm");
            let v = poly.vertices();
            let m = v.len();
            for b in 0..m {
                let (prev, next) = (&v[(b + m - 1) % m], &v[(b + 1) % m]);
                for t in [q(1, 4), q(1, 3), q(1, 5), q(1, 8), q(3, 8)] {
                    let a = v[b].add(&prev.sub(&v[b]).scale(&t));
                    let c = v[b].add(&next.sub(&v[b]).scale(&t));
                    if let Some(cfg) = crescent4_candidate(norm, a, v[b].clone(), c, true)? {
                        return Ok(cfg);
                    }
                }
            }
            let mut circle = Vec::new();
            for k in 0..m {
                let (from, to) = (&v[k], &v[(k + 1) % m]);
                for j in 0..4 {
                    circle.push(from.add(&to.sub(from).scale(&q(j, 4))));
                }
            }
            for a in &circle {
                for b in &circle {
                    for c in &circle {
                        if let Some(cfg) = crescent4_candidate(norm, a.clone(), b.clone(), c.clone(), false)? {
                            return Ok(cfg);
                        }
                    }
                }
            }
            Err(Error::InvalidParameter("no size-4 crescent found on the unit circle".into()))
        }
    }
}

fn crescent4_candidate(norm: &NormSpec, a: Point, b: Point, c: Point, ordered: bool) -> Result<Option<Configuration>> {
    if a == b || b == c || a == c {
        return Ok(None);
    }
    let ab = exact_distance(norm, &a, &b)?;
    let bc = exact_distance(norm, &b, &c)?;
    let ac = exact_distance(norm, &a, &c)?;
    let one = ExactScalar::one();
    if ab != bc || ac == ab || ac == one || ab == one {
        return Ok(None);
    }
    if ordered && !(one > ac && ac > ab) {
        return Ok(None);
    }
    let cfg = Configuration::new(norm.clone(), vec![a, b, c, Point::origin()])?;
    Ok(is_strong_crescent(&cfg)?.then_some(cfg))
}

/// Numeric size-4 crescent in `L^p`: `D` at the origin, `A, B, C` consecutive
/// chain points on the unit circle starting at angle 0 with arc step `alpha`.
pub fn build_crescent4_lp(p: f64, alpha: f64) -> Result<Vec<P2>> {
    let chain = lp::chain_points(p, 3, 0.0, alpha)
        .ok_or_else(|| Error::InvalidParameter("chain could not be continued".into()))?;
    let mut pts = chain;
    pts.push((0.0, 0.0));
    Ok(pts)
}

/// Checks the `{3, 2, 1}` distance pattern of `[A, B, C, D]` numerically, with
/// `|AD| > |AC| > |AB|` and no three points collinear.
pub fn numeric_crescent4_holds(p: f64, pts: &[P2], tol: f64) -> bool {
    let d = |i: usize, j: usize| numeric::lp_dist(p, pts[i], pts[j]);
    let (ab, bc, ac, ad, bd, cd) = (d(0, 1), d(1, 2), d(0, 2), d(0, 3), d(1, 3), d(2, 3));
    let near = |x: f64, y: f64| (x - y).abs() <= tol;
    let cross = |i: usize, j: usize, k: usize| {
        (pts[j].0 - pts[i].0) * (pts[k].1 - pts[i].1) - (pts[j].1 - pts[i].1) * (pts[k].0 - pts[i].0)
    };
    let no_collinear = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
        .iter()
        .all(|&(i, j, k)| cross(i, j, k).abs() > tol);
    near(ad, bd) && near(bd, cd) && near(ab, bc) && ad > ac + tol && ac > ab + tol && no_collinear
}

/// `(i, 1/i)` for `i = 1..=n`.
pub fn example_perturbed_line(n: usize) -> Configuration {
    let pts = (1..=n as i64).map(|i| Point::new(int(i), q(1, i))).collect();
    Configuration::new(NormSpec::Linf, pts).expect("distinct points")
}

/// Steps alternating `(1, a)` and `(a, 1)` from the origin.
pub fn example_staircase(n: usize, a: &ExactScalar) -> Result<Configuration> {
    check_unit_interval(a)?;
    let one = ExactScalar::one();
    let mut pts = vec![Point::origin()];
    for i in 1..n {
        let step = if i % 2 == 1 {
            Point::new(one.clone(), a.clone())
        } else {
            Point::new(a.clone(), one.clone())
        };
        pts.push(pts[i - 1].add(&step));
    }
    Configuration::new(NormSpec::Linf, pts)
}

/// The non-perturbation line-like crescents of types `xy`, `xyx`, `xyxy`,
/// `xyxyx` (`type_len` 2 to 5), for `0 < a < b < 1`.
pub fn example_counterexample(type_len: usize, a: &ExactScalar, b: &ExactScalar) -> Result<Configuration> {
    check_unit_interval(a)?;
    check_unit_interval(b)?;
    if a >= b {
        return Err(Error::InvalidParameter("need a < b".into()));
    }
    let (one, two, three) = (int(1), int(2), int(3));
    let pt = |x: ExactScalar, y: ExactScalar| Point::new(x, y);
    let pts = match type_len {
        2 => vec![pt(int(0), int(0)), pt(one.clone(), a.clone()), pt(&one + a, &one + a)],
        3 => vec![
            pt(int(0), int(0)),
            pt(one.clone(), a.clone()),
            pt(&one + a, &one + a),
            pt(&two + a, &one + a + a),
        ],
        4 => vec![
            pt(int(0), int(0)),
            pt(one.clone(), a.clone()),
            pt(&one + b, &one + a),
            pt(&two + b, &one + a + b),
            pt(&two + a + b, &two + a + b),
        ],
        5 => vec![
            pt(int(0), int(0)),
            pt(one.clone(), a.clone()),
            pt(&one + b, &one + a),
            pt(&two + b, &one + a + b),
            pt(&two + b + b, &two + a + b),
            pt(&three + b + b, &two + a + a + b),
        ],
        _ => return Err(Error::InvalidParameter("type length must be 2..=5".into())),
    };
    Configuration::new(NormSpec::Linf, pts)
}

fn check_unit_interval(a: &ExactScalar) -> Result<()> {
    if a.signum() <= 0 || *a >= ExactScalar::one() {
        return Err(Error::InvalidParameter(format!("parameter {a} must lie in (0, 1)")));
    }
    Ok(())
}

/// Published `L^inf` strong crescents of sizes 4 through 8.
pub fn published_linf(n: usize) -> Option<Configuration> {
    let pts: &[(i64, i64)] = match n {
        4 => &[(0, 0), (0, 1), (1, 1), (1, 3)],
        5 => &[(0, 0), (0, 1), (1, 1), (1, 3), (2, 4)],
        6 => &[(0, 0), (0, 1), (1, 3), (2, 1), (2, 4), (4, 5)],
        7 => &[(0, 0), (0, 4), (1, 2), (2, 3), (3, 1), (5, 4), (6, 6)],
        8 => &[(0, 0), (0, 6), (1, 3), (2, 4), (3, 2), (4, 1), (5, 5), (6, 7)],
        _ => return None,
    };
    Some(Configuration::from_ints(NormSpec::Linf, pts).expect("distinct points"))
}

/// The two readings of the fourth point of the published `L2` size-6 set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HexadReading {
    /// `(7/2, 2 sqrt3 / 2)` exactly as printed.
    Literal,
    /// `(7/2, 3 sqrt3 / 2)`, the nearest triangular-lattice point.
    Alternate,
}

/// The published `L2` size-6 set, scaled by 2 so every coordinate is an
/// integer plus an integer multiple of `sqrt 3`.
pub fn published_l2_hexad(reading: HexadReading) -> Configuration {
    let s = |a: i64, b: i64| Point::new(int(a), &int(b) * &ExactScalar::sqrt3());
    let fourth = match reading {
        HexadReading::Literal => s(7, 2),
        HexadReading::Alternate => s(7, 3),
    };
    let pts = vec![s(1, 1), s(2, 2), s(3, 1), fourth, s(9, 3), s(8, 0)];
    Configuration::new(NormSpec::L2, pts).expect("distinct points")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicates::{has_collinear_triple, is_linelike_crescent, is_perpendicular_perturbation, Axis};

    #[test]
    fn offsets_reproduce_perturbed_line() {
        let eps: Vec<ExactScalar> = (1..=6).map(|i| q(1, i)).collect();
        let cfg = build_segment_norm_linelike(&NormSpec::Linf, 6, &SegmentChoice::Offsets(eps)).unwrap();
        assert_eq!(cfg.points, example_perturbed_line(6).points);
    }

    #[test]
    fn seeded_chains_are_linelike() {
        for norm in [NormSpec::L1, NormSpec::Linf] {
            for seed in 0..5 {
                let cfg = build_segment_norm_linelike(&norm, 7, &SegmentChoice::Seeded(seed)).unwrap();
                assert!(has_collinear_triple(&cfg).is_none());
            }
        }
        assert!(matches!(
            build_segment_norm_linelike(&NormSpec::L2, 3, &SegmentChoice::Seeded(1)),
            Err(Error::StrictlyConvexNorm)
        ));
    }

    #[test]
    fn arc_chain_is_cocircular() {
        use std::f64::consts::PI;
        let pts = build_arc_linelike(5, PI / 8.0, 0.0, PI / 2.0, 1.0).unwrap();
        let c = numeric::circumcenter(pts[0], pts[1], pts[2]).unwrap();
        let r = numeric::l2_dist(c, pts[0]);
        for p in &pts {
            assert!((numeric::l2_dist(c, *p) - r).abs() < 1e-9);
        }
        let flat = build_arc_linelike(4, 0.0, 0.0, 1.0, 1.0).unwrap();
        let cross = (flat[1].0 - flat[0].0) * (flat[3].1 - flat[0].1) - (flat[1].1 - flat[0].1) * (flat[3].0 - flat[0].0);
        assert!(cross.abs() < 1e-12);
        assert!(build_arc_linelike(5, 1.0, 0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn crescent4_in_exact_norms() {
        for norm in [NormSpec::Linf, NormSpec::L1, NormSpec::L2, NormSpec::Polygonal(crate::PolygonNorm::regular_hexagon())] {
            let cfg = build_crescent4(&norm).unwrap();
            assert!(is_strong_crescent(&cfg).unwrap(), "{norm:?}");
        }
    }

    #[test]
    fn crescent4_numeric() {
        let pts = build_crescent4_lp(2.0, 0.3).unwrap();
        assert!(numeric_crescent4_holds(2.0, &pts, 1e-9));
        let pts = build_crescent4_lp(3.0, 0.3).unwrap();
        assert!(numeric_crescent4_holds(3.0, &pts, 1e-9));
    }

    #[test]
    fn staircase_and_counterexamples() {
        let s = example_staircase(5, &q(1, 2)).unwrap();
        let expect = [(q(0, 1), q(0, 1)), (q(1, 1), q(1, 2)), (q(3, 2), q(3, 2)), (q(5, 2), q(2, 1)), (q(3, 1), q(3, 1))];
        for (p, (x, y)) in s.points.iter().zip(expect) {
            assert_eq!((&p.x, &p.y), (&x, &y));
        }
        assert!(has_collinear_triple(&s).is_some());
        for len in 2..=5 {
            let c = example_counterexample(len, &q(1, 4), &q(1, 2)).unwrap();
            assert!(is_linelike_crescent(&c).unwrap().is_some(), "len {len}");
            assert!(is_perpendicular_perturbation(&c.points, Axis::Auto).is_none(), "len {len}");
        }
    }

    #[test]
    fn published_sets() {
        for n in 4..=8 {
            assert!(is_strong_crescent(&published_linf(n).unwrap()).unwrap());
        }
        assert!(!is_strong_crescent(&published_l2_hexad(HexadReading::Literal)).unwrap());
        assert!(is_strong_crescent(&published_l2_hexad(HexadReading::Alternate)).unwrap());
    }
}
