//! Exact arithmetic in the real quadratic field `Q(sqrt 3)`.
//!
//! Every coordinate used by the lattice searches and the published
//! configurations lives here: square-lattice points have a zero irrational
//! part, triangular-lattice points carry rational multiples of `sqrt 3` in
//! their `y` coordinate.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `rat + irr * sqrt(3)` with both parts kept as reduced big rationals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    rat: BigRational,
    irr: BigRational,
}

impl ExactScalar {
    pub fn new(rat: BigRational, irr: BigRational) -> Self {
        ExactScalar { rat, irr }
    }

    pub fn zero() -> Self {
        ExactScalar::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        ExactScalar {
            rat: BigRational::from_integer(BigInt::from(v)),
            irr: BigRational::zero(),
        }
    }

    /// `num / den`, panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        ExactScalar {
            rat: BigRational::new(BigInt::from(num), BigInt::from(den)),
            irr: BigRational::zero(),
        }
    }

    pub fn from_rational(rat: BigRational) -> Self {
        ExactScalar {
            rat,
            irr: BigRational::zero(),
        }
    }

    /// `sqrt(3)` itself.
    pub fn sqrt3() -> Self {
        ExactScalar {
            rat: BigRational::zero(),
            irr: BigRational::one(),
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn sqrt3_part(&self) -> &BigRational {
        &self.irr
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    /// Sign of the real value, decided without floating point.
    pub fn signum(&self) -> i8 {
        let a = sign_of(&self.rat);
        let b = sign_of(&self.irr);
        match (a, b) {
            (0, s) | (s, 0) => s,
            (1, 1) => 1,
            (-1, -1) => -1,
            _ => {
                // opposite signs: compare a^2 with 3 b^2
                let a2 = &self.rat * &self.rat;
                let b2 = &self.irr * &self.irr * BigRational::from_integer(BigInt::from(3));
                match a2.cmp(&b2) {
                    Ordering::Greater => a,
                    Ordering::Less => b,
                    Ordering::Equal => 0,
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Field conjugate `rat - irr * sqrt(3)`.
    pub fn conjugate(&self) -> Self {
        ExactScalar {
            rat: self.rat.clone(),
            irr: -self.irr.clone(),
        }
    }

    /// `x * conj(x)`, always rational.
    pub fn norm(&self) -> BigRational {
        &self.rat * &self.rat - &self.irr * &self.irr * BigRational::from_integer(BigInt::from(3))
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // nonzero elements have nonzero field norm since sqrt(3) is irrational
        let n = self.norm();
        let c = self.conjugate();
        Some(ExactScalar {
            rat: c.rat / &n,
            irr: c.irr / &n,
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.recip().map(|r| self * &r)
    }

    pub fn half(&self) -> Self {
        let two = BigRational::from_integer(BigInt::from(2));
        ExactScalar {
            rat: &self.rat / &two,
            irr: &self.irr / &two,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.rat.to_f64().unwrap_or(f64::NAN);
        let b = self.irr.to_f64().unwrap_or(f64::NAN);
        a + b * 3f64.sqrt()
    }

    /// Returns the integer value when the scalar is a rational integer.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_rational() && self.rat.is_integer() {
            self.rat.to_integer().to_i64()
        } else {
            None
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

fn sign_of(r: &BigRational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Parses `"p"`, `"p/q"` or `"-p/q"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        BigInt::from_str(t.trim()).map_err(|_| Error::Parse(format!("bad rational `{s}`")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.irr == other.irr {
            return self.rat.cmp(&other.rat);
        }
        (self - other).signum().cmp(&0)
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rat.is_zero(), self.irr.is_zero()) {
            (_, true) => write!(f, "{}", format_rational(&self.rat)),
            (true, false) => write!(f, "{}*sqrt3", format_rational(&self.irr)),
            (false, false) => {
                let sign = if self.irr.is_negative() { '-' } else { '+' };
                write!(f, "{} {sign} {}*sqrt3", format_rational(&self.rat), format_rational(&self.irr.abs()))
            }
        }
    }
}

impl From<i64> for ExactScalar {
    fn from(v: i64) -> Self {
        ExactScalar::from_int(v)
    }
}

impl FromStr for ExactScalar {
    type Err = Error;

    /// Accepts a rational such as `"3/4"`, optionally followed or replaced by
    /// a `sqrt3` term: `"1/2 + 3/2*sqrt3"`, `"-sqrt3"`, `"2*sqrt3"`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = t.strip_suffix("sqrt3") else {
            return parse_rational(&t).map(ExactScalar::from_rational);
        };
        let body = body.strip_suffix('*').unwrap_or(body);
        // split off the rational part at the last sign that is not leading
        let cut = body.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').map(|(i, _)| i).last();
        let (rat, coef) = match cut {
            Some(i) => (parse_rational(&body[..i])?, &body[i..]),
            None => (BigRational::zero(), body),
        };
        let coef = match coef {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            c => parse_rational(c.strip_prefix('+').unwrap_or(c))?,
        };
        Ok(ExactScalar::new(rat, coef))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'a ExactScalar) -> ExactScalar {
                let f: fn(&ExactScalar, &ExactScalar) -> ExactScalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'a ExactScalar) -> ExactScalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| ExactScalar {
    rat: &a.rat + &b.rat,
    irr: &a.irr + &b.irr,
});

forward_binop!(Sub, sub, |a, b| ExactScalar {
    rat: &a.rat - &b.rat,
    irr: &a.irr - &b.irr,
});

forward_binop!(Mul, mul, |a, b| {
    let three = BigRational::from_integer(BigInt::from(3));
    ExactScalar {
        rat: &a.rat * &b.rat + &a.irr * &b.irr * three,
        irr: &a.rat * &b.irr + &a.irr * &b.rat,
    }
});

forward_binop!(Div, div, |a, b| a
    .checked_div(b)
    .expect("division by zero in ExactScalar"));

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            rat: -self.rat,
            irr: -self.irr,
        }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(a: (i64, i64), b: (i64, i64)) -> ExactScalar {
        ExactScalar::new(
            BigRational::new(a.0.into(), a.1.into()),
            BigRational::new(b.0.into(), b.1.into()),
        )
    }

    #[test]
    fn sign_examples() {
        assert_eq!(ExactScalar::zero().signum(), 0);
        assert_eq!(s((2, 1), (-1, 1)).signum(), 1);
        assert_eq!(s((-2, 1), (1, 1)).signum(), -1);
        // 49/16 > 3 and 289/100 < 3
        assert_eq!(s((7, 4), (-1, 1)).signum(), 1);
        assert_eq!(s((17, 10), (-1, 1)).signum(), -1);
    }

    #[test]
    fn canonical_equality() {
        assert_eq!(s((2, 4), (3, 6)), s((1, 2), (1, 2)));
        assert_eq!(s((1, -2), (0, 1)), s((-1, 2), (0, 5)));
    }

    #[test]
    fn reciprocal_of_irrational() {
        let x = s((2, 1), (1, 1));
        let r = x.recip().unwrap();
        assert_eq!(&x * &r, ExactScalar::one());
        assert!(ExactScalar::zero().recip().is_none());
    }

    #[test]
    fn sqrt3_squares_to_three() {
        let r = ExactScalar::sqrt3();
        assert_eq!(&r * &r, ExactScalar::from_int(3));
    }

    #[test]
    fn ordering_matches_float() {
        let vals = [
            s((1, 1), (0, 1)),
            s((0, 1), (1, 2)),
            s((3, 2), (-1, 3)),
            s((-5, 7), (2, 5)),
        ];
        for a in &vals {
            for b in &vals {
                assert_eq!(a.cmp(b), a.to_f64().partial_cmp(&b.to_f64()).unwrap());
            }
        }
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(format_rational(&parse_rational("-6/4").unwrap()), "-3/2");
        assert_eq!(format_rational(&parse_rational(" 5 ").unwrap()), "5");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        for v in [s((1, 2), (-3, 4)), s((0, 1), (2, 1)), s((-5, 1), (1, 1)), s((7, 3), (0, 1)), s((0, 1), (-1, 1))] {
            assert_eq!(v.to_string().parse::<ExactScalar>().unwrap(), v, "{v}");
        }
        assert_eq!("sqrt3".parse::<ExactScalar>().unwrap(), ExactScalar::sqrt3());
        assert!("1+".parse::<ExactScalar>().is_err());
    }
}
