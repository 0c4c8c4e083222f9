//! Square and triangular lattice regions, their symmetries and canonical forms.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{NormSpec, Point};
use crate::predicates::Configuration;
use crate::scalar::ExactScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeKind {
    Square,
    Triangular,
}

impl FromStr for LatticeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "square" => Ok(LatticeKind::Square),
            "triangular" | "tri" => Ok(LatticeKind::Triangular),
            _ => Err(Error::Parse(format!("unknown lattice `{s}`"))),
        }
    }
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LatticeKind::Square => "square",
            LatticeKind::Triangular => "triangular",
        })
    }
}

/// A `width x height` block of lattice points.
///
/// Square points are `(i, j)`; triangular points are `(a + b/2, b*sqrt3/2)`
/// and are addressed by their integer pair `(a, b)`. Points are indexed row by
/// row: `index = b * width + a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub kind: LatticeKind,
    pub width: usize,
    pub height: usize,
}

pub type LatticeCoord = (i64, i64);

type RegionMap = fn(i64, i64, i64, i64) -> LatticeCoord;

impl LatticeSpec {
    pub fn new(kind: LatticeKind, width: usize, height: usize) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidParameter("lattice dimensions must be positive".into()));
        }
        Ok(LatticeSpec { kind, width, height })
    }

    pub fn square(width: usize, height: usize) -> Self {
        LatticeSpec { kind: LatticeKind::Square, width, height }
    }

    pub fn triangular(width: usize, height: usize) -> Self {
        LatticeSpec { kind: LatticeKind::Triangular, width, height }
    }

    pub fn len(&self) -> usize {
        self.width * self.height
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn coord(&self, index: usize) -> LatticeCoord {
        ((index % self.width) as i64, (index / self.width) as i64)
    }

    pub fn index(&self, c: LatticeCoord) -> Option<usize> {
        let (a, b) = c;
        (a >= 0 && b >= 0 && (a as usize) < self.width && (b as usize) < self.height)
            .then(|| b as usize * self.width + a as usize)
    }

    pub fn coords(&self) -> Vec<LatticeCoord> {
        (0..self.len()).map(|i| self.coord(i)).collect()
    }

    pub fn point(&self, c: LatticeCoord) -> Point {
        lattice_point(self.kind, c)
    }

    /// Index permutations of the region induced by the isometries of `norm`
    /// that map the region onto itself; the identity comes first.
    pub fn region_symmetries(&self, norm: &NormSpec) -> Vec<Vec<usize>> {
        let (w, h) = (self.width as i64 - 1, self.height as i64 - 1);
        let square = self.width == self.height;
        let mut maps: Vec<RegionMap> = vec![|a, b, _, _| (a, b), |a, b, w, h| (w - a, h - b)];
        match (self.kind, norm) {
            (LatticeKind::Square, NormSpec::L1 | NormSpec::L2 | NormSpec::Linf) => {
                maps.push(|a, b, w, _| (w - a, b));
                maps.push(|a, b, _, h| (a, h - b));
                if square {
                    maps.push(|a, b, _, _| (b, a));
                    maps.push(|a, b, w, _| (w - b, w - a));
                    maps.push(|a, b, w, _| (w - b, a));
                    maps.push(|a, b, w, _| (b, w - a));
                }
            }
            (LatticeKind::Triangular, NormSpec::L2) if square => {
                maps.push(|a, b, _, _| (b, a));
                maps.push(|a, b, w, _| (w - b, w - a));
            }
            _ => {}
        }
        maps.iter()
            .map(|f| {
                (0..self.len())
                    .map(|i| {
                        let (a, b) = self.coord(i);
                        self.index(f(a, b, w, h)).expect("symmetry keeps the region")
                    })
                    .collect()
            })
            .collect()
    }

    /// Lattice pair of an exact point.
    pub fn locate(&self, p: &Point) -> Result<LatticeCoord> {
        let c = locate(self.kind, p)?;
        self.index(c).ok_or_else(|| Error::NotOnLattice(format!("{p} lies outside the region")))?;
        Ok(c)
    }
}

pub fn lattice_point(kind: LatticeKind, (a, b): LatticeCoord) -> Point {
    match kind {
        LatticeKind::Square => Point::from_ints(a, b),
        LatticeKind::Triangular => Point::new(ExactScalar::ratio(2 * a + b, 2), &ExactScalar::ratio(b, 2) * &ExactScalar::sqrt3()),
    }
}

/// Inverse of [`lattice_point`], without any region bounds.
pub fn locate(kind: LatticeKind, p: &Point) -> Result<LatticeCoord> {
    let bad = || Error::NotOnLattice(p.to_string());
    let int = |r: &num_rational::BigRational| -> Option<i64> {
        r.is_integer().then(|| num_traits::ToPrimitive::to_i64(r.numer())).flatten()
    };
    match kind {
        LatticeKind::Square => {
            let x = p.x.to_i64().ok_or_else(bad)?;
            let y = p.y.to_i64().ok_or_else(bad)?;
            Ok((x, y))
        }
        LatticeKind::Triangular => {
            if !p.x.is_rational() || !p.y.rational_part().is_zero() {
                return Err(bad());
            }
            let two = num_rational::BigRational::from_integer(2.into());
            let b = int(&(p.y.sqrt3_part() * &two)).ok_or_else(bad)?;
            let a2 = p.x.rational_part() * &two - num_rational::BigRational::from_integer(b.into());
            let a2 = int(&a2).ok_or_else(bad)?;
            if a2 % 2 != 0 {
                return Err(bad());
            }
            Ok((a2 / 2, b))
        }
    }
}

/// Orthogonal maps on lattice pairs preserving `norm` (for canonical forms);
/// translations are handled separately.
fn shape_group(kind: LatticeKind, norm: &NormSpec) -> Vec<fn(LatticeCoord) -> LatticeCoord> {
    match (kind, norm) {
        (LatticeKind::Square, NormSpec::L1 | NormSpec::L2 | NormSpec::Linf) => vec![
            |(a, b)| (a, b),
            |(a, b)| (-a, b),
            |(a, b)| (a, -b),
            |(a, b)| (-a, -b),
            |(a, b)| (b, a),
            |(a, b)| (-b, a),
            |(a, b)| (b, -a),
            |(a, b)| (-b, -a),
        ],
        (LatticeKind::Triangular, NormSpec::L2) => vec![
            |(a, b)| (a, b),
            |(a, b)| (-b, a + b),
            |(a, b)| (-a - b, a),
            |(a, b)| (-a, -b),
            |(a, b)| (b, -a - b),
            |(a, b)| (a + b, -a),
            |(a, b)| (b, a),
            |(a, b)| (-a, a + b),
            |(a, b)| (-a - b, b),
            |(a, b)| (-b, -a),
            |(a, b)| (a, -a - b),
            |(a, b)| (a + b, -b),
        ],
        _ => vec![|(a, b)| (a, b), |(a, b)| (-a, -b)],
    }
}

/// Lexicographically least sorted image of the set under norm-preserving
/// lattice symmetries and translations (minimum coordinates moved to 0).
pub fn canonical_coords(kind: LatticeKind, norm: &NormSpec, pts: &[LatticeCoord]) -> Vec<LatticeCoord> {
    let mut best: Option<Vec<LatticeCoord>> = None;
    for g in shape_group(kind, norm) {
        let mut img: Vec<LatticeCoord> = pts.iter().map(|&c| g(c)).collect();
        let ma = img.iter().map(|c| c.0).min().unwrap_or(0);
        let mb = img.iter().map(|c| c.1).min().unwrap_or(0);
        for c in &mut img {
            *c = (c.0 - ma, c.1 - mb);
        }
        // order by row then column, matching region indices
        img.sort_by_key(|&(a, b)| (b, a));
        if best.as_ref().is_none_or(|b| img.iter().map(|&(a, b)| (b, a)).lt(b.iter().map(|&(a, b)| (b, a)))) {
            best = Some(img);
        }
    }
    best.unwrap_or_default()
}

/// Canonical representative of a lattice configuration.
pub fn canonicalize(kind: LatticeKind, cfg: &Configuration) -> Result<Configuration> {
    let coords = cfg.points.iter().map(|p| locate(kind, p)).collect::<Result<Vec<_>>>()?;
    let canon = canonical_coords(kind, &cfg.norm, &coords);
    Configuration::new(cfg.norm.clone(), canon.into_iter().map(|c| lattice_point(kind, c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(pts: &[(i64, i64)]) -> Configuration {
        Configuration::from_ints(NormSpec::Linf, pts).unwrap()
    }

    #[test]
    fn canonical_examples() {
        let base = [(0, 0), (0, 1), (1, 1), (1, 3)];
        let c0 = canonicalize(LatticeKind::Square, &cfg(&base)).unwrap();
        let shifted: Vec<_> = base.iter().map(|&(x, y)| (x + 2, y + 3)).collect();
        let flipped: Vec<_> = base.iter().map(|&(x, y)| (x, -y)).collect();
        assert_eq!(canonicalize(LatticeKind::Square, &cfg(&shifted)).unwrap(), c0);
        assert_eq!(canonicalize(LatticeKind::Square, &cfg(&flipped)).unwrap(), c0);
        let own: Vec<_> = c0.points.iter().map(|p| locate(LatticeKind::Square, p).unwrap()).collect();
        assert_eq!(canonical_coords(LatticeKind::Square, &NormSpec::Linf, &own), own);
    }

    #[test]
    fn triangular_round_trip() {
        for c in [(0, 0), (3, 1), (-2, 5), (1, -1)] {
            let p = lattice_point(LatticeKind::Triangular, c);
            assert_eq!(locate(LatticeKind::Triangular, &p).unwrap(), c);
        }
        assert!(locate(LatticeKind::Triangular, &Point::from_ints(0, 1)).is_err());
    }

    #[test]
    fn hexagonal_rotation_is_isometry() {
        let g = shape_group(LatticeKind::Triangular, &NormSpec::L2);
        let pts = [(0, 0), (2, 1), (-1, 3)];
        let d = |p: LatticeCoord, q: LatticeCoord| {
            let (da, db) = (p.0 - q.0, p.1 - q.1);
            da * da + da * db + db * db
        };
        for f in g {
            for &p in &pts {
                for &q in &pts {
                    assert_eq!(d(f(p), f(q)), d(p, q));
                }
            }
        }
    }

    #[test]
    fn region_maps_are_permutations() {
        for spec in [LatticeSpec::square(4, 4), LatticeSpec::square(3, 5), LatticeSpec::triangular(4, 4)] {
            for norm in [NormSpec::Linf, NormSpec::L2] {
                for perm in spec.region_symmetries(&norm) {
                    let mut seen = perm.clone();
                    seen.sort();
                    assert_eq!(seen, (0..spec.len()).collect::<Vec<_>>());
                }
            }
        }
        assert_eq!(LatticeSpec::square(4, 4).region_symmetries(&NormSpec::Linf).len(), 8);
        assert_eq!(LatticeSpec::square(3, 5).region_symmetries(&NormSpec::Linf).len(), 4);
        assert_eq!(LatticeSpec::triangular(4, 4).region_symmetries(&NormSpec::L2).len(), 4);
        assert_eq!(LatticeSpec::triangular(4, 4).region_symmetries(&NormSpec::Linf).len(), 2);
    }
}
