//! Configuration-level predicates: general position, line-like orderings,
//! crescent multiplicities and perpendicular perturbations.

pub mod circle;
pub mod fm;

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{collinear, exact_distance, Coord, DistanceValue, NormSpec, Point};
use crate::linelike;
use crate::scalar::ExactScalar;

pub use circle::{concyclic4, l2_concyclic, l2_incircle, linf_square, AxisSquare};

/// A finite list of pairwise distinct points together with a norm.
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration {
    pub norm: NormSpec,
    pub points: Vec<Point>,
}

impl Configuration {
    pub fn new(norm: NormSpec, points: Vec<Point>) -> Result<Self> {
        for j in 0..points.len() {
            if let Some(i) = points[..j].iter().position(|p| *p == points[j]) {
                return Err(Error::DuplicatePoint { first: i, second: j });
            }
        }
        Ok(Configuration { norm, points })
    }

    pub fn from_ints(norm: NormSpec, pts: &[(i64, i64)]) -> Result<Self> {
        Self::new(norm, pts.iter().map(|&(x, y)| Point::from_ints(x, y)).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The same points listed in `order`.
    pub fn reordered(&self, order: &[usize]) -> Configuration {
        Configuration {
            norm: self.norm.clone(),
            points: order.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }

    /// All pairwise distances, `L2` squared.
    pub fn distance_table(&self) -> Result<Vec<Vec<ExactScalar>>> {
        let n = self.len();
        let mut t = vec![vec![ExactScalar::zero(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let d = exact_distance(&self.norm, &self.points[i], &self.points[j])?;
                t[j][i] = d.clone();
                t[i][j] = d;
            }
        }
        Ok(t)
    }
}

/// Circle `{ q : ||q - center|| = radius }`; `L2` radii are squared.
#[derive(Clone, Debug, PartialEq)]
pub struct NormCircle {
    pub center: Point,
    pub radius: DistanceValue,
}

pub fn collinear3(p: &Point, q: &Point, r: &Point) -> bool {
    collinear(p, q, r)
}

/// First collinear triple in lexicographic index order.
pub fn has_collinear_triple(cfg: &Configuration) -> Option<(usize, usize, usize)> {
    let p = &cfg.points;
    let n = p.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if collinear(&p[i], &p[j], &p[k]) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConcyclicQuadruple {
    pub indices: [usize; 4],
    pub circle: NormCircle,
}

/// First concyclic quadruple in lexicographic index order.
pub fn has_concyclic_quadruple(cfg: &Configuration) -> Result<Option<ConcyclicQuadruple>> {
    let p = &cfg.points;
    let n = p.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    if let Some(circle) = concyclic4(&cfg.norm, [&p[i], &p[j], &p[k], &p[l]])? {
                        return Ok(Some(ConcyclicQuadruple { indices: [i, j, k, l], circle }));
                    }
                }
            }
        }
    }
    if !cfg.norm.is_exact() {
        return Err(Error::UnsupportedExactNorm);
    }
    Ok(None)
}

/// A line-like ordering of the configuration, if one exists.
pub fn is_linelike(cfg: &Configuration) -> Result<Option<Vec<usize>>> {
    let t = cfg.distance_table()?;
    Ok(linelike::find_order(cfg.len(), |i, j| t[i][j].clone()))
}

/// `d_k = d(p_1, p_{1+k})` for the configuration in its given order, after
/// checking that every shift agrees.
pub fn order_distances(cfg: &Configuration) -> Result<Vec<ExactScalar>> {
    let t = cfg.distance_table()?;
    let n = cfg.len();
    let ds: Vec<ExactScalar> = (1..n).map(|k| t[0][k].clone()).collect();
    for i in 1..n {
        for j in i + 1..n {
            if t[i][j] != ds[j - i - 1] {
                return Err(Error::NotLineLike);
            }
        }
    }
    Ok(ds)
}

/// Distance values with their multiplicities over unordered pairs, sorted by value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMultiset {
    pub squared: bool,
    pub entries: Vec<(ExactScalar, usize)>,
}

impl DistanceMultiset {
    pub fn multiplicity(&self, d: &ExactScalar) -> usize {
        self.entries.iter().find(|(v, _)| v == d).map_or(0, |(_, c)| *c)
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|(_, c)| c).sum()
    }
}

pub fn distance_multiset(cfg: &Configuration) -> Result<DistanceMultiset> {
    let t = cfg.distance_table()?;
    let mut counts: HashMap<ExactScalar, usize> = HashMap::new();
    for i in 0..cfg.len() {
        for j in i + 1..cfg.len() {
            *counts.entry(t[i][j].clone()).or_default() += 1;
        }
    }
    let mut entries: Vec<_> = counts.into_iter().collect();
    entries.sort();
    Ok(DistanceMultiset {
        squared: matches!(cfg.norm, NormSpec::L2),
        entries,
    })
}

/// Exactly `n - 1` distinct distances with multiplicities `{1, ..., n - 1}`.
pub fn is_crescent_multiplicity(cfg: &Configuration) -> Result<bool> {
    let ms = distance_multiset(cfg)?;
    let mut mults: Vec<usize> = ms.entries.iter().map(|(_, c)| *c).collect();
    mults.sort_unstable();
    Ok(mults.len() + 1 == cfg.len().max(1) && mults.iter().enumerate().all(|(i, &m)| m == i + 1))
}

/// Which condition of strong general position fails first, if any.
#[derive(Clone, Debug, PartialEq)]
pub enum PositionViolation {
    Collinear([usize; 3]),
    Concyclic(Box<ConcyclicQuadruple>),
    LineLikeQuadruple { indices: [usize; 4], order: [usize; 4] },
}

pub fn general_position_violation(cfg: &Configuration) -> Result<Option<PositionViolation>> {
    if let Some((i, j, k)) = has_collinear_triple(cfg) {
        return Ok(Some(PositionViolation::Collinear([i, j, k])));
    }
    if let Some(q) = has_concyclic_quadruple(cfg)? {
        return Ok(Some(PositionViolation::Concyclic(Box::new(q))));
    }
    Ok(linelike_quadruple(cfg)?.map(|(indices, order)| PositionViolation::LineLikeQuadruple { indices, order }))
}

/// First 4-subset admitting a line-like ordering.
pub fn linelike_quadruple(cfg: &Configuration) -> Result<Option<([usize; 4], [usize; 4])>> {
    let t = cfg.distance_table()?;
    let n = cfg.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let idx = [i, j, k, l];
                    if let Some(o) = linelike::find_order(4, |a, b| t[idx[a]][idx[b]].clone()) {
                        let order = [idx[o[0]], idx[o[1]], idx[o[2]], idx[o[3]]];
                        return Ok(Some((idx, order)));
                    }
                }
            }
        }
    }
    Ok(None)
}

pub fn in_strong_general_position(cfg: &Configuration) -> Result<bool> {
    Ok(general_position_violation(cfg)?.is_none())
}

pub fn is_strong_crescent(cfg: &Configuration) -> Result<bool> {
    Ok(is_crescent_multiplicity(cfg)? && in_strong_general_position(cfg)?)
}

/// Line-like ordering of a configuration with no collinear triple and no
/// concyclic quadruple.
pub fn is_linelike_crescent(cfg: &Configuration) -> Result<Option<Vec<usize>>> {
    let Some(order) = is_linelike(cfg)? else {
        return Ok(None);
    };
    if has_collinear_triple(cfg).is_some() || has_concyclic_quadruple(cfg)?.is_some() {
        return Ok(None);
    }
    Ok(Some(order))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Horizontal,
    Vertical,
    Auto,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbationWitness<T = ExactScalar> {
    pub axis: Axis,
    /// Point indices sorted along the axis.
    pub order: Vec<usize>,
    pub step: T,
}

/// Tests whether the points project onto equally spaced, distinct points of a
/// horizontal (or vertical) line.
pub fn is_perpendicular_perturbation<T: Coord>(
    points: &[Point<T>],
    axis: Axis,
) -> Option<PerturbationWitness<T>> {
    match axis {
        Axis::Auto => is_perpendicular_perturbation(points, Axis::Horizontal)
            .or_else(|| is_perpendicular_perturbation(points, Axis::Vertical)),
        Axis::Horizontal | Axis::Vertical => {
            let key = |i: usize| match axis {
                Axis::Horizontal => points[i].x.clone(),
                _ => points[i].y.clone(),
            };
            let mut order: Vec<usize> = (0..points.len()).collect();
            order.sort_by_key(|&i| key(i));
            if points.len() < 2 {
                return Some(PerturbationWitness { axis, order, step: T::zero() });
            }
            let step = key(order[1]) - key(order[0]);
            if step.is_zero() {
                return None;
            }
            let even = order.windows(2).all(|w| key(w[1]) - key(w[0]) == step);
            even.then_some(PerturbationWitness { axis, order, step })
        }
    }
}

/// Completes a line-like triple `A, B, C` to the parallelogram point
/// `D = B + (C - A)`, returned only if `A, B, C, D` is line-like.
pub fn complete_linelike4_parallelogram(
    a: &Point,
    b: &Point,
    c: &Point,
    norm: &NormSpec,
) -> Result<Option<Point>> {
    let ab = exact_distance(norm, a, b)?;
    let bc = exact_distance(norm, b, c)?;
    let ac = exact_distance(norm, a, c)?;
    if ab != bc || ab == ac || ab.is_zero() {
        return Err(Error::InvalidParameter("A, B, C is not a line-like triple".into()));
    }
    let d = b.add(&c.sub(a));
    if [a, b, c].contains(&&d) {
        return Ok(None);
    }
    let cfg = Configuration::new(norm.clone(), vec![a.clone(), b.clone(), c.clone(), d.clone()])?;
    let t = cfg.distance_table()?;
    Ok(linelike::check_order(&[0, 1, 2, 3], |i, j| t[i][j].clone()).then_some(d))
}

/// All sub-verdicts of the strong crescent test, with witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct CrescentReport {
    pub multiset: DistanceMultiset,
    pub crescent_multiplicity: bool,
    pub collinear: Option<[usize; 3]>,
    pub concyclic: Option<ConcyclicQuadruple>,
    pub linelike_quadruple: Option<([usize; 4], [usize; 4])>,
    pub linelike_order: Option<Vec<usize>>,
}

impl CrescentReport {
    pub fn strong_general_position(&self) -> bool {
        self.collinear.is_none() && self.concyclic.is_none() && self.linelike_quadruple.is_none()
    }

    pub fn strong_crescent(&self) -> bool {
        self.crescent_multiplicity && self.strong_general_position()
    }

    pub fn linelike_crescent(&self) -> bool {
        self.linelike_order.is_some() && self.collinear.is_none() && self.concyclic.is_none()
    }
}

pub fn crescent_report(cfg: &Configuration) -> Result<CrescentReport> {
    Ok(CrescentReport {
        multiset: distance_multiset(cfg)?,
        crescent_multiplicity: is_crescent_multiplicity(cfg)?,
        collinear: has_collinear_triple(cfg).map(|(i, j, k)| [i, j, k]),
        concyclic: has_concyclic_quadruple(cfg)?,
        linelike_quadruple: linelike_quadruple(cfg)?,
        linelike_order: is_linelike(cfg)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(norm: NormSpec, pts: &[(i64, i64)]) -> Configuration {
        Configuration::from_ints(norm, pts).unwrap()
    }

    fn q(n: i64, d: i64) -> ExactScalar {
        ExactScalar::ratio(n, d)
    }

    #[test]
    fn duplicate_points_rejected() {
        let e = Configuration::from_ints(NormSpec::L2, &[(0, 0), (1, 1), (0, 0)]).unwrap_err();
        assert!(matches!(e, Error::DuplicatePoint { first: 0, second: 2 }));
    }

    #[test]
    fn collinear_examples() {
        assert!(collinear3(&Point::from_ints(0, 0), &Point::from_ints(1, 1), &Point::from_ints(2, 2)));
        assert!(!collinear3(&Point::from_ints(0, 0), &Point::from_ints(1, 0), &Point::from_ints(0, 1)));
        let (a, b) = (q(1, 3), q(1, 2));
        let one = ExactScalar::one();
        let two = ExactScalar::from_int(2);
        let p = Point::new(one.clone(), a.clone());
        let r = Point::new(&two + &b, &one + &a + &b);
        let s = Point::new(ExactScalar::from_int(3) + &b + &b, &two + &a + &b + &b);
        assert!(collinear3(&p, &r, &s));
    }

    #[test]
    fn multiset_examples() {
        let c = cfg(NormSpec::Linf, &[(0, 0), (0, 1), (1, 1), (1, 3)]);
        let m = distance_multiset(&c).unwrap();
        let e: Vec<(i64, usize)> = m.entries.iter().map(|(v, k)| (v.to_i64().unwrap(), *k)).collect();
        assert_eq!(e, vec![(1, 3), (2, 2), (3, 1)]);
        assert!(is_crescent_multiplicity(&c).unwrap());
        let sq = cfg(NormSpec::L2, &[(0, 0), (1, 0), (1, 1), (0, 1)]);
        let m = distance_multiset(&sq).unwrap();
        assert_eq!(m.multiplicity(&ExactScalar::one()), 4);
        assert_eq!(m.multiplicity(&ExactScalar::from_int(2)), 2);
        assert!(!is_crescent_multiplicity(&sq).unwrap());
        let line = cfg(NormSpec::L2, &[(0, 0), (1, 0), (2, 0)]);
        assert!(is_crescent_multiplicity(&line).unwrap());
    }

    #[test]
    fn linelike_examples() {
        for norm in [NormSpec::L1, NormSpec::L2, NormSpec::Linf] {
            let c = cfg(norm, &[(0, 0), (1, 0), (2, 0), (3, 0)]);
            assert_eq!(is_linelike(&c).unwrap(), Some(vec![0, 1, 2, 3]));
        }
        let c = cfg(NormSpec::L2, &[(0, 0), (1, 0), (0, 1), (5, 5)]);
        assert_eq!(is_linelike(&c).unwrap(), None);
        let c = cfg(NormSpec::L2, &[(0, 0), (0, 1), (0, 2), (0, 3)]);
        let sq = order_distances(&c).unwrap();
        assert_eq!(sq, vec![ExactScalar::from_int(1), ExactScalar::from_int(4), ExactScalar::from_int(9)]);
    }

    #[test]
    fn order_distances_of_xy_triple() {
        let pts = vec![
            Point::from_ints(0, 0),
            Point::new(ExactScalar::one(), q(1, 4)),
            Point::new(q(5, 4), q(5, 4)),
        ];
        let c = Configuration::new(NormSpec::Linf, pts).unwrap();
        assert_eq!(order_distances(&c).unwrap(), vec![ExactScalar::one(), q(5, 4)]);
        let bad = cfg(NormSpec::Linf, &[(0, 0), (1, 0), (3, 0)]);
        assert!(matches!(order_distances(&bad), Err(Error::NotLineLike)));
    }

    #[test]
    fn parallelogram_quadruple_breaks_general_position() {
        let c = cfg(NormSpec::L2, &[(0, 0), (1, 0), (2, 1), (1, 1)]);
        assert!(!in_strong_general_position(&c).unwrap());
        let tri = cfg(NormSpec::L2, &[(0, 0), (1, 0), (0, 1)]);
        assert!(in_strong_general_position(&tri).unwrap());
    }

    #[test]
    fn perturbation_examples() {
        let pts: Vec<Point> = (1..=5).map(|i| Point::new(ExactScalar::from_int(i), q(1, i))).collect();
        let w = is_perpendicular_perturbation(&pts, Axis::Auto).unwrap();
        assert_eq!(w.axis, Axis::Horizontal);
        assert_eq!(w.step, ExactScalar::one());
        let xy = vec![
            Point::from_ints(0, 0),
            Point::new(ExactScalar::one(), q(1, 4)),
            Point::new(q(5, 4), q(5, 4)),
        ];
        assert!(is_perpendicular_perturbation(&xy, Axis::Auto).is_none());
        let two = vec![Point::from_ints(0, 0), Point::from_ints(0, 3)];
        assert_eq!(is_perpendicular_perturbation(&two, Axis::Auto).unwrap().axis, Axis::Vertical);
    }

    #[test]
    fn parallelogram_completion() {
        let (a, b, c) = (Point::from_ints(0, 0), Point::from_ints(1, 0), Point::from_ints(1, 1));
        let d = complete_linelike4_parallelogram(&a, &b, &c, &NormSpec::L2).unwrap();
        assert_eq!(d, Some(Point::from_ints(2, 1)));
        let c2 = Point::from_ints(2, 0);
        let d = complete_linelike4_parallelogram(&a, &b, &c2, &NormSpec::Linf).unwrap();
        assert_eq!(d, Some(Point::from_ints(3, 0)));
        let half = Point::new(ExactScalar::one(), q(1, 2));
        let d = complete_linelike4_parallelogram(&a, &half, &c2, &NormSpec::Linf).unwrap();
        assert_eq!(d, Some(Point::new(ExactScalar::from_int(3), q(1, 2))));
    }
}
