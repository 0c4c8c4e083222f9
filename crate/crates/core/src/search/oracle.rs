//! Precomputed pair data and incremental predicates on lattice indices.

use std::collections::BTreeMap;

use crate::geometry::{duality_transform, exact_distance, NormSpec, Point};
use crate::predicates::{concyclic4, l2_concyclic, linf_square};

use super::lattice::{LatticeKind, LatticeSpec};

enum CircleRule {
    SquareLinf,
    SquareL1,
    SquareL2,
    TriangularL2,
    Exact,
}

/// Distance classes of every lattice pair plus the collinearity and
/// concyclicity tests used during search.
pub struct PairOracle {
    pub spec: LatticeSpec,
    pub norm: NormSpec,
    coords: Vec<(i64, i64)>,
    exact: Vec<Point>,
    class: Vec<u32>,
    classes: usize,
    rule: CircleRule,
}

impl PairOracle {
    pub fn new(spec: LatticeSpec, norm: &NormSpec) -> Self {
        let coords = spec.coords();
        let exact: Vec<Point> = coords.iter().map(|&c| spec.point(c)).collect();
        let n = coords.len();
        let rule = match (spec.kind, norm) {
            (LatticeKind::Square, NormSpec::Linf) => CircleRule::SquareLinf,
            (LatticeKind::Square, NormSpec::L1) => CircleRule::SquareL1,
            (LatticeKind::Square, NormSpec::L2) => CircleRule::SquareL2,
            (LatticeKind::Triangular, NormSpec::L2) => CircleRule::TriangularL2,
            _ => CircleRule::Exact,
        };
        let mut class = vec![u32::MAX; n * n];
        let mut classes = 0usize;
        let int_key = |i: usize, j: usize| -> Option<i64> {
            let (da, db) = (coords[i].0 - coords[j].0, coords[i].1 - coords[j].1);
            match (spec.kind, norm) {
                (LatticeKind::Square, NormSpec::Linf) => Some(da.abs().max(db.abs())),
                (LatticeKind::Square, NormSpec::L1) => Some(da.abs() + db.abs()),
                (LatticeKind::Square, NormSpec::L2) => Some(da * da + db * db),
                (LatticeKind::Triangular, NormSpec::L2) => Some(da * da + da * db + db * db),
                _ => None,
            }
        };
        if int_key(0, 0).is_some() {
            let mut ids = BTreeMap::new();
            for i in 0..n {
                for j in i + 1..n {
                    let k = int_key(i, j).unwrap();
                    let next = ids.len() as u32;
                    let id = *ids.entry(k).or_insert(next);
                    class[i * n + j] = id;
                    class[j * n + i] = id;
                }
            }
            classes = ids.len();
        } else if n > 1 {
            let mut ids = BTreeMap::new();
            for i in 0..n {
                for j in i + 1..n {
                    let d = exact_distance(norm, &exact[i], &exact[j]).expect("search norms are exact");
                    let next = ids.len() as u32;
                    let id = *ids.entry(d).or_insert(next);
                    class[i * n + j] = id;
                    class[j * n + i] = id;
                }
            }
            classes = ids.len();
        }
        PairOracle {
            spec,
            norm: norm.clone(),
            coords,
            exact,
            class,
            classes,
            rule,
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn class_count(&self) -> usize {
        self.classes
    }

    #[inline]
    pub fn class(&self, i: usize, j: usize) -> u32 {
        self.class[i * self.coords.len() + j]
    }

    pub fn coord(&self, i: usize) -> (i64, i64) {
        self.coords[i]
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.exact[i]
    }

    /// Collinearity is affine, so the integer lattice pairs decide it.
    #[inline]
    pub fn collinear(&self, i: usize, j: usize, k: usize) -> bool {
        let (a, b, c) = (self.coords[i], self.coords[j], self.coords[k]);
        (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0) == 0
    }

    pub fn concyclic(&self, q: [usize; 4]) -> bool {
        let ip = |i: usize| Point::new(self.coords[i].0, self.coords[i].1);
        match self.rule {
            CircleRule::SquareLinf => {
                let p = q.map(ip);
                linf_square(&[&p[0], &p[1], &p[2], &p[3]]).is_some()
            }
            CircleRule::SquareL1 => {
                let p = q.map(|i| duality_transform(&ip(i)));
                linf_square(&[&p[0], &p[1], &p[2], &p[3]]).is_some()
            }
            CircleRule::SquareL2 => {
                let p = q.map(|i| Point::new(self.coords[i].0 as i128, self.coords[i].1 as i128));
                l2_concyclic([&p[0], &p[1], &p[2], &p[3]])
            }
            CircleRule::TriangularL2 => {
                if self.collinear(q[0], q[1], q[2])
                    || self.collinear(q[0], q[1], q[3])
                    || self.collinear(q[0], q[2], q[3])
                    || self.collinear(q[1], q[2], q[3])
                {
                    return false;
                }
                // doubled coordinates (2a + b, b*sqrt3); the sqrt3 factors out
                let c = q.map(|i| (2 * self.coords[i].0 as i128 + self.coords[i].1 as i128, self.coords[i].1 as i128));
                let rows: Vec<[i128; 3]> = c[..3]
                    .iter()
                    .map(|&(x, y)| {
                        let (dx, dy) = (x - c[3].0, y - c[3].1);
                        [dx, dy, dx * dx + 3 * dy * dy]
                    })
                    .collect();
                let m = |i: usize, j: usize| rows[i][j];
                let det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                    - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                    + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
                det == 0
            }
            CircleRule::Exact => {
                let p = q.map(|i| &self.exact[i]);
                concyclic4(&self.norm, p).expect("search norms are exact").is_some()
            }
        }
    }

    /// Whether some ordering of the four points is line-like, read off the
    /// distance classes: three equal consecutive distances along a path, two
    /// equal skip-one distances and one distinct end-to-end distance.
    pub fn linelike4(&self, q: [usize; 4]) -> bool {
        const EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let ids = EDGES.map(|(a, b)| self.class(q[a], q[b]));
        let count = |id: u32| ids.iter().filter(|&&x| x == id).count();
        let Some(&step) = ids.iter().find(|&&id| count(id) == 3) else {
            return false;
        };
        let mut deg = [0u8; 4];
        for (e, &(a, b)) in EDGES.iter().enumerate() {
            if ids[e] == step {
                deg[a] += 1;
                deg[b] += 1;
            }
        }
        let ends: Vec<usize> = (0..4).filter(|&v| deg[v] == 1).collect();
        if ends.len() != 2 {
            return false;
        }
        let span = self.class(q[ends[0]], q[ends[1]]);
        if count(span) != 1 {
            return false;
        }
        // the remaining two edges share a class distinct from both
        let rest: Vec<u32> = ids.iter().copied().filter(|&id| id != step && id != span).collect();
        rest.len() == 2 && rest[0] == rest[1]
    }
}
