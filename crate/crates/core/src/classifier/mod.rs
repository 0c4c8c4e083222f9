//! Step types of ordered `L^inf` configurations and grid sampling of their
//! line-like crescent realizations.

mod lemmas;
mod sampling;
mod theorem;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::{Coord, NormSpec, Point};
use crate::predicates::Configuration;
use crate::scalar::ExactScalar;

pub use lemmas::{
    check_claim, forbidden_claims, sanity_inversion, verify_forbidden_types, Claim, ClaimKind, ClaimReport, Counterexample,
    LemmaReport,
};
pub use sampling::{extend_sample, realization_summary, realize_sample, RealizeSummary, SampleOptions};
pub use theorem::{verify_classification, ClassificationReport, NonPerturbation, TypeStats};

/// One of the eight step types between consecutive points.
///
/// `x`/`x'`/`y`/`y'` steps are dominated by one axis; the `b` steps are exact
/// diagonals named by the quadrant they point into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeSymbol {
    X,
    XPrime,
    Y,
    YPrime,
    Bxy,
    BxPrimeY,
    BxPrimeYPrime,
    BxyPrime,
}

use TypeSymbol::*;

impl TypeSymbol {
    pub const ALL: [TypeSymbol; 8] = [X, XPrime, Y, YPrime, Bxy, BxPrimeY, BxPrimeYPrime, BxyPrime];
    pub const AXIS: [TypeSymbol; 4] = [X, XPrime, Y, YPrime];
    pub const DIAGONAL: [TypeSymbol; 4] = [Bxy, BxPrimeY, BxPrimeYPrime, BxyPrime];

    pub fn ascii(self) -> char {
        match self {
            X => 'x',
            XPrime => 'X',
            Y => 'y',
            YPrime => 'Y',
            Bxy => 'A',
            BxPrimeY => 'B',
            BxPrimeYPrime => 'C',
            BxyPrime => 'D',
        }
    }

    pub fn from_ascii(c: char) -> Option<Self> {
        Some(match c {
            'x' => X,
            'X' => XPrime,
            'y' => Y,
            'Y' => YPrime,
            'A' => Bxy,
            'B' => BxPrimeY,
            'C' => BxPrimeYPrime,
            'D' => BxyPrime,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            X => "x",
            XPrime => "x′",
            Y => "y",
            YPrime => "y′",
            Bxy => "b_xy",
            BxPrimeY => "b_x′y",
            BxPrimeYPrime => "b_x′y′",
            BxyPrime => "b_xy′",
        }
    }

    /// Whether the step carries a free variable.
    pub fn is_free(self) -> bool {
        matches!(self, X | XPrime | Y | YPrime)
    }

    /// The step vector for unit first order distance `s` and free value `f`.
    pub fn step<T: Coord>(self, s: &T, f: &T) -> Point<T> {
        let (p, n) = (s.clone(), -s.clone());
        match self {
            X => Point::new(p, f.clone()),
            XPrime => Point::new(n, f.clone()),
            Y => Point::new(f.clone(), p),
            YPrime => Point::new(f.clone(), n),
            Bxy => Point::new(p.clone(), p),
            BxPrimeY => Point::new(n, p),
            BxPrimeYPrime => Point::new(n.clone(), n),
            BxyPrime => Point::new(p, n),
        }
    }

    pub fn apply(self, op: SymmetryOp) -> TypeSymbol {
        match op {
            SymmetryOp::XAxis => match self {
                Y => YPrime,
                YPrime => Y,
                Bxy => BxyPrime,
                BxyPrime => Bxy,
                BxPrimeY => BxPrimeYPrime,
                BxPrimeYPrime => BxPrimeY,
                s => s,
            },
            SymmetryOp::YAxis => match self {
                X => XPrime,
                XPrime => X,
                Bxy => BxPrimeY,
                BxPrimeY => Bxy,
                BxyPrime => BxPrimeYPrime,
                BxPrimeYPrime => BxyPrime,
                s => s,
            },
            SymmetryOp::Diag => match self {
                X => Y,
                Y => X,
                XPrime => YPrime,
                YPrime => XPrime,
                BxPrimeY => BxyPrime,
                BxyPrime => BxPrimeY,
                s => s,
            },
            SymmetryOp::Reverse => self,
        }
    }
}

impl fmt::Display for TypeSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Reflections of the plane preserving `L^inf`, and reading a type backwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryOp {
    XAxis,
    YAxis,
    Diag,
    Reverse,
}

impl SymmetryOp {
    pub const ALL: [SymmetryOp; 4] = [SymmetryOp::XAxis, SymmetryOp::YAxis, SymmetryOp::Diag, SymmetryOp::Reverse];
}

/// Word over the eight step types, one symbol per consecutive pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeString(pub Vec<TypeSymbol>);

impl TypeString {
    pub fn new(symbols: Vec<TypeSymbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidParameter("type strings are nonempty".into()));
        }
        Ok(TypeString(symbols))
    }

    pub fn symbols(&self) -> &[TypeSymbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn free_variable_count(&self) -> usize {
        self.0.iter().filter(|s| s.is_free()).count()
    }

    pub fn to_ascii(&self) -> String {
        self.0.iter().map(|s| s.ascii()).collect()
    }

    pub fn concat(&self, rest: &[TypeSymbol]) -> TypeString {
        let mut v = self.0.clone();
        v.extend_from_slice(rest);
        TypeString(v)
    }

    /// All images under the group generated by the four symmetry operations.
    pub fn orbit(&self) -> BTreeSet<TypeString> {
        let mut seen = BTreeSet::from([self.clone()]);
        let mut todo = vec![self.clone()];
        while let Some(t) = todo.pop() {
            for op in SymmetryOp::ALL {
                let r = reflect_type(&t, op);
                if seen.insert(r.clone()) {
                    todo.push(r);
                }
            }
        }
        seen
    }
}

impl FromStr for TypeString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let syms = s
            .chars()
            .map(|c| TypeSymbol::from_ascii(c).ok_or_else(|| Error::Parse(format!("unknown type symbol `{c}`"))))
            .collect::<Result<Vec<_>>>()?;
        TypeString::new(syms)
    }
}

impl fmt::Display for TypeString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii())
    }
}

pub fn reflect_type(t: &TypeString, op: SymmetryOp) -> TypeString {
    match op {
        SymmetryOp::Reverse => TypeString(t.0.iter().rev().copied().collect()),
        _ => TypeString(t.0.iter().map(|s| s.apply(op)).collect()),
    }
}

/// Values `f_1..f_k` of the free variables, each strictly inside `(-1, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeAssignment(Vec<ExactScalar>);

impl FreeAssignment {
    pub fn new(values: Vec<ExactScalar>) -> Result<Self> {
        let one = ExactScalar::one();
        if let Some(v) = values.iter().find(|v| v.abs() >= one || !v.is_rational()) {
            return Err(Error::InvalidParameter(format!("free value {v} is not a rational in (-1, 1)")));
        }
        Ok(FreeAssignment(values))
    }

    pub fn values(&self) -> &[ExactScalar] {
        &self.0
    }

    /// `j_i / scale` for grid indices `j_i`.
    pub fn from_grid(js: &[i64], scale: i64) -> Self {
        FreeAssignment(js.iter().map(|&j| ExactScalar::ratio(j, scale)).collect())
    }
}

impl fmt::Display for FreeAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Step type from `p` to `q`.
pub fn type_of_pair(p: &Point, q: &Point) -> Result<TypeSymbol> {
    let d = q.sub(p);
    let (ax, ay) = (d.x.abs(), d.y.abs());
    let (sx, sy) = (d.x.signum(), d.y.signum());
    Ok(match ax.cmp(&ay) {
        std::cmp::Ordering::Greater => if sx > 0 { X } else { XPrime },
        std::cmp::Ordering::Less => if sy > 0 { Y } else { YPrime },
        std::cmp::Ordering::Equal => match (sx, sy) {
            (0, _) => {
                return Err(Error::DuplicatePoint { first: 0, second: 1 });
            }
            (1, 1) => Bxy,
            (-1, 1) => BxPrimeY,
            (-1, -1) => BxPrimeYPrime,
            _ => BxyPrime,
        },
    })
}

/// Type of an ordered configuration.
pub fn type_of_config(points: &[Point]) -> Result<TypeString> {
    let syms = points
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            type_of_pair(&w[0], &w[1]).map_err(|_| Error::DuplicatePoint { first: i, second: i + 1 })
        })
        .collect::<Result<Vec<_>>>()?;
    TypeString::new(syms)
}

/// Canonical coordinates: `p_1 = (0, 0)` and each step from the type with
/// unit first order distance, the free steps consuming `f` in order.
pub fn coordinates_of_type(t: &TypeString, f: &FreeAssignment) -> Result<Configuration> {
    if f.0.len() != t.free_variable_count() {
        return Err(Error::InvalidParameter(format!(
            "type {t} has {} free variables, got {} values",
            t.free_variable_count(),
            f.0.len()
        )));
    }
    let one = ExactScalar::one();
    let zero = ExactScalar::zero();
    let mut free = f.0.iter();
    let mut pts = vec![Point::origin()];
    for s in &t.0 {
        let v = if s.is_free() { free.next().unwrap() } else { &zero };
        let next = pts.last().unwrap().add(&s.step(&one, v));
        pts.push(next);
    }
    Configuration::new(NormSpec::Linf, pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactScalar {
        ExactScalar::ratio(n, d)
    }

    fn t(s: &str) -> TypeString {
        s.parse().unwrap()
    }

    #[test]
    fn pair_types() {
        let o = Point::origin();
        assert_eq!(type_of_pair(&o, &Point::new(q(1, 1), q(1, 2))).unwrap(), X);
        assert_eq!(type_of_pair(&o, &Point::from_ints(1, 1)).unwrap(), Bxy);
        assert_eq!(type_of_pair(&o, &Point::new(q(-1, 2), q(-1, 1))).unwrap(), YPrime);
        assert!(type_of_pair(&o, &o).is_err());
    }

    #[test]
    fn config_types() {
        let xyx = crate::constructors::example_counterexample(3, &q(1, 4), &q(1, 2)).unwrap();
        assert_eq!(type_of_config(&xyx.points).unwrap(), t("xyx"));
        let line = crate::constructors::example_perturbed_line(4);
        assert_eq!(type_of_config(&line.points).unwrap(), t("xxx"));
        let stairs = crate::constructors::example_staircase(3, &q(1, 2)).unwrap();
        assert_eq!(type_of_config(&stairs.points).unwrap(), t("xy"));
    }

    #[test]
    fn coordinates_follow_steps() {
        let (a, b, c, d) = (q(1, 8), q(-3, 8), q(1, 2), q(5, 8));
        let f = FreeAssignment::new(vec![a.clone(), b.clone(), c.clone(), d.clone()]).unwrap();
        let cfg = coordinates_of_type(&t("xyxy"), &f).unwrap();
        let one = ExactScalar::one();
        let two = ExactScalar::from_int(2);
        let expect = vec![
            Point::origin(),
            Point::new(one.clone(), a.clone()),
            Point::new(&one + &b, &one + &a),
            Point::new(&two + &b, &one + &a + &c),
            Point::new(&two + &b + &d, &two + &a + &c),
        ];
        assert_eq!(cfg.points, expect);
        let diag = coordinates_of_type(&t("AB"), &FreeAssignment::new(vec![]).unwrap()).unwrap();
        assert_eq!(diag.points, vec![Point::from_ints(0, 0), Point::from_ints(1, 1), Point::from_ints(0, 2)]);
        let x0 = coordinates_of_type(&t("x"), &FreeAssignment::new(vec![q(0, 1)]).unwrap()).unwrap();
        assert_eq!(x0.points[1], Point::from_ints(1, 0));
        assert!(FreeAssignment::new(vec![q(1, 1)]).is_err());
    }

    #[test]
    fn reflections() {
        assert_eq!(reflect_type(&t("xX"), SymmetryOp::Reverse), t("Xx"));
        assert_eq!(reflect_type(&t("xA"), SymmetryOp::XAxis), t("xD"));
        assert_eq!(reflect_type(&t("A"), SymmetryOp::Diag), t("A"));
        assert_eq!(t("xA").orbit().len(), 16);
        let listed = ["xA", "xD", "XB", "XC", "yA", "yB", "YD", "YC", "Ax", "Dx", "BX", "CX", "Ay", "By", "DY", "CY"];
        let orbit: BTreeSet<TypeString> = listed.iter().map(|s| t(s)).collect();
        assert_eq!(t("xA").orbit(), orbit);
    }

    #[test]
    fn round_trip_types() {
        let tt = t("xAyDXCYB");
        let vals: Vec<ExactScalar> = (0..tt.free_variable_count()).map(|i| q(i as i64 - 2, 5)).collect();
        let cfg = coordinates_of_type(&tt, &FreeAssignment::new(vals).unwrap()).unwrap();
        assert_eq!(type_of_config(&cfg.points).unwrap(), tt);
    }
}
