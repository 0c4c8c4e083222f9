//! Points, norms and distances.
//!
//! The coordinate type is generic over [`Coord`] so the same predicate code
//! runs on exact field elements and on scaled machine integers (the lattice
//! search and the type sampler use `i64`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// An ordered commutative ring element usable as a coordinate.
pub trait Coord:
    Clone
    + Ord
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Coord for i64 {
    fn zero() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v
    }
}

impl Coord for i128 {
    fn zero() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
}

impl Coord for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn from_i64(v: i64) -> Self {
        ExactScalar::from_int(v)
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point<T = ExactScalar> {
    pub x: T,
    pub y: T,
}

impl<T> Point<T> {
    pub const fn new(x: T, y: T) -> Self {
        Point { x, y }
    }
}

impl<T: Coord> Point<T> {
    pub fn origin() -> Self {
        Point::new(T::zero(), T::zero())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Point::new(self.x.clone() - other.x.clone(), self.y.clone() - other.y.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        Point::new(self.x.clone() + other.x.clone(), self.y.clone() + other.y.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        Point::new(self.x.clone() * k.clone(), self.y.clone() * k.clone())
    }

    pub fn dot(&self, other: &Self) -> T {
        self.x.clone() * other.x.clone() + self.y.clone() * other.y.clone()
    }

    /// z-component of `self x other`.
    pub fn cross(&self, other: &Self) -> T {
        self.x.clone() * other.y.clone() - self.y.clone() * other.x.clone()
    }
}

impl Point<ExactScalar> {
    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(ExactScalar::from_int(x), ExactScalar::from_int(y))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl<T: fmt::Display> fmt::Display for Point<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl<T: fmt::Debug> fmt::Debug for Point<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.x, self.y)
    }
}

/// `(q - p) x (r - p)`.
pub fn orient<T: Coord>(p: &Point<T>, q: &Point<T>, r: &Point<T>) -> T {
    q.sub(p).cross(&r.sub(p))
}

pub fn collinear<T: Coord>(p: &Point<T>, q: &Point<T>, r: &Point<T>) -> bool {
    orient(p, q, r).is_zero()
}

/// The three norms with closed-form distances, usable over any [`Coord`].
///
/// `L2` yields the squared distance; squaring is monotone on nonnegative
/// values so equality and order are preserved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Metric {
    L1,
    L2Squared,
    Linf,
}

impl Metric {
    pub fn dist<T: Coord>(self, p: &Point<T>, q: &Point<T>) -> T {
        let dx = (q.x.clone() - p.x.clone()).abs_val();
        let dy = (q.y.clone() - p.y.clone()).abs_val();
        match self {
            Metric::L1 => dx + dy,
            Metric::L2Squared => dx.clone() * dx + dy.clone() * dy,
            Metric::Linf => dx.max(dy),
        }
    }
}

/// A convex, centrally symmetric polygon used as a unit ball.
///
/// Vertices are stored counter-clockwise. `normals[k]` is the vector with
/// `normals[k] . v = 1` along the edge from `vertices[k]` to `vertices[k+1]`,
/// so the gauge of `v` is `max_k normals[k] . v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolygonNorm {
    vertices: Vec<Point>,
    normals: Vec<Point>,
}

impl PolygonNorm {
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        let n = vertices.len();
        if n < 4 || n % 2 != 0 {
            return Err(Error::InvalidPolygon(format!(
                "a centrally symmetric polygon needs an even number (>= 4) of vertices, got {n}"
            )));
        }
        let area2 = (0..n).fold(ExactScalar::zero(), |acc, i| {
            acc + vertices[i].cross(&vertices[(i + 1) % n])
        });
        if area2.is_zero() {
            return Err(Error::InvalidPolygon("polygon has zero area".into()));
        }
        if area2.signum() < 0 {
            vertices.reverse();
        }
        for i in 0..n {
            let turn = orient(&vertices[i], &vertices[(i + 1) % n], &vertices[(i + 2) % n]);
            if turn.signum() <= 0 {
                return Err(Error::InvalidPolygon(format!(
                    "vertex {} is not a strictly convex corner",
                    (i + 1) % n
                )));
            }
        }
        for v in &vertices {
            let neg = Point::new(-v.x.clone(), -v.y.clone());
            if !vertices.contains(&neg) {
                return Err(Error::InvalidPolygon(format!(
                    "not centrally symmetric: {v} has no opposite vertex"
                )));
            }
        }
        let normals = (0..n)
            .map(|k| {
                let a = &vertices[k];
                let b = &vertices[(k + 1) % n];
                let e = b.sub(a);
                let c = a.cross(b);
                // c > 0 because the origin is interior (central symmetry + convexity)
                let inv = c.recip().expect("edge through the origin");
                Point::new(&e.y * &inv, -(&e.x * &inv))
            })
            .collect();
        Ok(PolygonNorm { vertices, normals })
    }

    /// Regular hexagon with vertices at angles `k * 60deg`, exact in `Q(sqrt 3)`.
    pub fn regular_hexagon() -> Self {
        let h = ExactScalar::ratio(1, 2);
        let s = ExactScalar::sqrt3().half();
        let verts = vec![
            Point::new(ExactScalar::one(), ExactScalar::zero()),
            Point::new(h.clone(), s.clone()),
            Point::new(-h.clone(), s.clone()),
            Point::new(-ExactScalar::one(), ExactScalar::zero()),
            Point::new(-h.clone(), -s.clone()),
            Point::new(h, -s),
        ];
        PolygonNorm::new(verts).expect("hexagon is valid")
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn normals(&self) -> &[Point] {
        &self.normals
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len()
    }

    /// Gauge value by locating the edge cone containing `v`.
    pub fn gauge(&self, v: &Point) -> ExactScalar {
        if v.x.is_zero() && v.y.is_zero() {
            return ExactScalar::zero();
        }
        let n = self.vertices.len();
        for k in 0..n {
            let a = &self.vertices[k];
            let b = &self.vertices[(k + 1) % n];
            if a.cross(v).signum() >= 0 && v.cross(b).signum() >= 0 {
                return self.normals[k].dot(v);
            }
        }
        unreachable!("edge cones of a polygon around the origin cover the plane")
    }

    /// Gauge value as the maximum of the edge functionals.
    pub fn gauge_by_max(&self, v: &Point) -> ExactScalar {
        self.normals
            .iter()
            .map(|nk| nk.dot(v))
            .max()
            .expect("nonempty polygon")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum NormSpec {
    L1,
    L2,
    Linf,
    /// Numeric-only `L^p`, `1 < p < inf`.
    Lp(f64),
    Polygonal(PolygonNorm),
}

impl NormSpec {
    pub fn lp(p: f64) -> Result<Self> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(Error::InvalidParameter(format!("L^p needs 1 < p < inf, got {p}")));
        }
        Ok(NormSpec::Lp(p))
    }

    pub fn polygon(vertices: Vec<Point>) -> Result<Self> {
        PolygonNorm::new(vertices).map(NormSpec::Polygonal)
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, NormSpec::Lp(_))
    }

    pub fn is_strictly_convex(&self) -> bool {
        matches!(self, NormSpec::L2 | NormSpec::Lp(_))
    }

    /// Closed-form metric, if any.
    pub fn metric(&self) -> Option<Metric> {
        match self {
            NormSpec::L1 => Some(Metric::L1),
            NormSpec::L2 => Some(Metric::L2Squared),
            NormSpec::Linf => Some(Metric::Linf),
            _ => None,
        }
    }

    /// Short name used in files and on the command line.
    pub fn name(&self) -> String {
        match self {
            NormSpec::L1 => "l1".into(),
            NormSpec::L2 => "l2".into(),
            NormSpec::Linf => "linf".into(),
            NormSpec::Lp(p) => format!("lp:{p}"),
            NormSpec::Polygonal(_) => "polygon".into(),
        }
    }
}

/// A distance in some norm. `L2` distances are kept squared.
#[derive(Clone, Debug, PartialEq)]
pub enum DistanceValue {
    Exact { value: ExactScalar, squared: bool },
    Numeric(f64),
}

impl DistanceValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            DistanceValue::Exact { value, squared: true } => value.to_f64().sqrt(),
            DistanceValue::Exact { value, .. } => value.to_f64(),
            DistanceValue::Numeric(v) => *v,
        }
    }

    pub fn exact(&self) -> Option<&ExactScalar> {
        match self {
            DistanceValue::Exact { value, .. } => Some(value),
            DistanceValue::Numeric(_) => None,
        }
    }
}

impl fmt::Display for DistanceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceValue::Exact { value, squared: true } => write!(f, "sqrt({value})"),
            DistanceValue::Exact { value, .. } => write!(f, "{value}"),
            DistanceValue::Numeric(v) => write!(f, "{v}"),
        }
    }
}

/// Exact distance (squared for `L2`); refuses `L^p`.
pub fn exact_distance(norm: &NormSpec, p: &Point, q: &Point) -> Result<ExactScalar> {
    match norm {
        NormSpec::L1 => Ok(Metric::L1.dist(p, q)),
        NormSpec::L2 => Ok(Metric::L2Squared.dist(p, q)),
        NormSpec::Linf => Ok(Metric::Linf.dist(p, q)),
        NormSpec::Polygonal(poly) => Ok(poly.gauge(&q.sub(p))),
        NormSpec::Lp(_) => Err(Error::UnsupportedExactNorm),
    }
}

pub fn distance(norm: &NormSpec, p: &Point, q: &Point) -> DistanceValue {
    match norm {
        NormSpec::Lp(e) => {
            let (px, py) = p.to_f64();
            let (qx, qy) = q.to_f64();
            DistanceValue::Numeric(crate::numeric::lp_norm(*e, qx - px, qy - py))
        }
        _ => DistanceValue::Exact {
            value: exact_distance(norm, p, q).expect("exact norm"),
            squared: matches!(norm, NormSpec::L2),
        },
    }
}

/// `(x, y) -> (x + y, x - y)`; carries `L1` distances to `L^inf` distances.
pub fn duality_transform<T: Coord>(p: &Point<T>) -> Point<T> {
    Point::new(p.x.clone() + p.y.clone(), p.x.clone() - p.y.clone())
}

/// Inverse of [`duality_transform`].
pub fn duality_inverse(p: &Point) -> Point {
    Point::new((&p.x + &p.y).half(), (&p.x - &p.y).half())
}

/// A closed segment `[from, to]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub from: Point,
    pub to: Point,
}

/// Maximal segments of the unit circle; empty for strictly convex norms.
pub fn unit_circle_segments(norm: &NormSpec) -> Vec<Segment> {
    let corners: Vec<(i64, i64)> = match norm {
        // right side first
        NormSpec::Linf => vec![(1, -1), (1, 1), (-1, 1), (-1, -1)],
        NormSpec::L1 => vec![(1, 0), (0, 1), (-1, 0), (0, -1)],
        NormSpec::Polygonal(poly) => {
            let v = poly.vertices();
            return (0..v.len())
                .map(|k| Segment {
                    from: v[k].clone(),
                    to: v[(k + 1) % v.len()].clone(),
                })
                .collect();
        }
        NormSpec::L2 | NormSpec::Lp(_) => return Vec::new(),
    };
    (0..4)
        .map(|k| Segment {
            from: Point::from_ints(corners[k].0, corners[k].1),
            to: Point::from_ints(corners[(k + 1) % 4].0, corners[(k + 1) % 4].1),
        })
        .collect()
}

/// The unit ball of `L1`/`L^inf` as a polygon, for code paths that only know polygons.
pub fn as_polygon(norm: &NormSpec) -> Option<PolygonNorm> {
    match norm {
        NormSpec::Linf | NormSpec::L1 => {
            let verts = unit_circle_segments(norm).into_iter().map(|s| s.from).collect();
            Some(PolygonNorm::new(verts).expect("square and diamond are valid"))
        }
        NormSpec::Polygonal(p) => Some(p.clone()),
        _ => None,
    }
}
