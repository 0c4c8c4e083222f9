//! Four-point concyclicity per norm.

use crate::error::{Error, Result};
use crate::geometry::{collinear, duality_inverse, duality_transform, Coord, DistanceValue, NormSpec, Point, PolygonNorm};
use crate::scalar::ExactScalar;

use super::fm::{self, Constraint, Rel};
use super::NormCircle;

/// The closed axis-parallel square `[left, left + side] x [bottom, bottom + side]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxisSquare<T> {
    pub left: T,
    pub bottom: T,
    pub side: T,
}

/// Finds a square of positive side whose boundary carries every point.
///
/// A point can only sit on a side whose line is the matching extreme of the
/// bounding box, so it suffices to try the 16 sets of active sides.
pub fn linf_square<T: Coord>(pts: &[&Point<T>]) -> Option<AxisSquare<T>> {
    let first = pts.first()?;
    let (mut xmin, mut xmax, mut ymin, mut ymax) =
        (first.x.clone(), first.x.clone(), first.y.clone(), first.y.clone());
    for p in &pts[1..] {
        xmin = xmin.min(p.x.clone());
        xmax = xmax.max(p.x.clone());
        ymin = ymin.min(p.y.clone());
        ymax = ymax.max(p.y.clone());
    }
    let w = xmax.clone() - xmin.clone();
    let h = ymax.clone() - ymin.clone();
    let lo = w.clone().max(h.clone());

    for mask in 0u8..16 {
        let (l, r, b, t) = (mask & 1 != 0, mask & 2 != 0, mask & 4 != 0, mask & 8 != 0);
        let covered = pts.iter().all(|p| {
            (l && p.x == xmin) || (r && p.x == xmax) || (b && p.y == ymin) || (t && p.y == ymax)
        });
        if !covered {
            continue;
        }
        let side = match (l && r, b && t) {
            (true, true) if w != h => continue,
            (true, _) => w.clone(),
            (_, true) => h.clone(),
            _ => lo.clone(),
        };
        if side < lo || side <= T::zero() {
            continue;
        }
        let left = if r && !l { xmax.clone() - side.clone() } else { xmin.clone() };
        let bottom = if t && !b { ymax.clone() - side.clone() } else { ymin.clone() };
        return Some(AxisSquare { left, bottom, side });
    }
    None
}

/// Sign-carrying determinant deciding Euclidean concyclicity of four points
/// (zero iff they lie on a common circle or line).
pub fn l2_incircle<T: Coord>(p: [&Point<T>; 4]) -> T {
    let rows: Vec<[T; 3]> = p[..3]
        .iter()
        .map(|q| {
            let d = q.sub(p[3]);
            [d.x.clone(), d.y.clone(), d.dot(&d)]
        })
        .collect();
    let m = |i: usize, j: usize| rows[i][j].clone();
    m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
        - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
}

/// Euclidean concyclicity: zero determinant and no three points on a line.
pub fn l2_concyclic<T: Coord>(p: [&Point<T>; 4]) -> bool {
    if !l2_incircle(p).is_zero() {
        return false;
    }
    !(collinear(p[0], p[1], p[2])
        || collinear(p[0], p[1], p[3])
        || collinear(p[0], p[2], p[3])
        || collinear(p[1], p[2], p[3]))
}

fn exact_circumcenter(a: &Point, b: &Point, c: &Point) -> Point {
    // solve 2 (b - a) . x = |b|^2 - |a|^2, same for c
    let ab = b.sub(a);
    let ac = c.sub(a);
    let det = ab.cross(&ac);
    let two = ExactScalar::from_int(2);
    let r1 = b.dot(b) - a.dot(a);
    let r2 = c.dot(c) - a.dot(a);
    let denom = &two * &det;
    let x = (&r1 * &ac.y - &r2 * &ab.y) / &denom;
    let y = (&ab.x * &r2 - &ac.x * &r1) / &denom;
    Point::new(x, y)
}

fn square_circle(sq: AxisSquare<ExactScalar>) -> (Point, ExactScalar) {
    let r = sq.side.half();
    (Point::new(&sq.left + &r, &sq.bottom + &r), r)
}

/// Witness circle through all four points, if any.
pub fn concyclic4(norm: &NormSpec, p: [&Point; 4]) -> Result<Option<NormCircle>> {
    let circle = match norm {
        NormSpec::Lp(_) => return Err(Error::UnsupportedExactNorm),
        NormSpec::Linf => linf_square(&p).map(|sq| {
            let (center, r) = square_circle(sq);
            NormCircle::exact(center, r, false)
        }),
        NormSpec::L1 => {
            let t: Vec<Point> = p.iter().map(|q| duality_transform(q)).collect();
            let refs: Vec<&Point> = t.iter().collect();
            linf_square(&refs).map(|sq| {
                let (center, r) = square_circle(sq);
                NormCircle::exact(duality_inverse(&center), r, false)
            })
        }
        NormSpec::L2 => l2_concyclic(p).then(|| {
            let c = exact_circumcenter(p[0], p[1], p[2]);
            let d = p[0].sub(&c);
            NormCircle::exact(c, d.dot(&d), true)
        }),
        NormSpec::Polygonal(poly) => {
            polygon_circle(poly, &p).map(|(c, r)| NormCircle::exact(c, r, false))
        }
    };
    Ok(circle)
}

/// Side-assignment search over polygon edges: each point is placed on one
/// edge of the translated, scaled polygon and every point must stay inside.
pub fn polygon_circle(poly: &PolygonNorm, pts: &[&Point]) -> Option<(Point, ExactScalar)> {
    let normals = poly.normals();
    let m = normals.len();
    let k = pts.len();
    let one = ExactScalar::one();
    let zero = ExactScalar::zero;

    // inequalities shared by every assignment: n_j . (p - c) <= r, r > 0
    let mut base = Vec::with_capacity(k * m + 1);
    for p in pts {
        for nj in normals {
            base.push(Constraint::new(
                vec![-nj.x.clone(), -nj.y.clone(), -one.clone()],
                Rel::Le,
                -nj.dot(p),
            ));
        }
    }
    base.push(Constraint::new(vec![zero(), zero(), -one.clone()], Rel::Lt, zero()));

    let mut assign = vec![0usize; k];
    loop {
        let mut eqs = Vec::with_capacity(k + 1);
        for (p, &e) in pts.iter().zip(&assign) {
            let ne = &normals[e];
            eqs.push(Constraint::new(
                vec![ne.x.clone(), ne.y.clone(), one.clone()],
                Rel::Eq,
                ne.dot(p),
            ));
        }
        eqs.push(base.last().unwrap().clone());
        // the equalities usually pin down (c, r); only fall back to full
        // elimination when they leave freedom
        if let Some((v, free)) = fm::solve_counting(3, eqs.clone()) {
            let found = if free == 0 {
                base.iter().all(|row| row.satisfied_by(&v)).then_some(v)
            } else {
                let mut rows = base.clone();
                rows.extend(eqs);
                fm::solve(3, rows)
            };
            if let Some(v) = found {
                return Some((Point::new(v[0].clone(), v[1].clone()), v[2].clone()));
            }
        }
        // next assignment in odometer order
        let mut i = 0;
        loop {
            if i == k {
                return None;
            }
            assign[i] += 1;
            if assign[i] < m {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

impl NormCircle {
    pub fn exact(center: Point, radius: ExactScalar, squared: bool) -> Self {
        NormCircle {
            center,
            radius: DistanceValue::Exact { value: radius, squared },
        }
    }
}
