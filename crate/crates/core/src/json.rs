//! JSON encodings of the exact types.
//!
//! Scalars are written as JSON integers when integral and as strings such as
//! `"3/2"` or `"1/2 + 1/2*sqrt3"` otherwise; both forms are accepted on input.
//! Points are `[x, y]` pairs. Norms are `"l1"`, `"l2"`, `"linf"`, `"hexagon"`,
//! `{"lp": p}` or `{"polygon": [[x, y], ...]}`. A configuration is
//! `{"norm": ..., "points": [...]}`.

use std::fmt;
use std::path::Path;

use serde::de::{self, Deserializer, MapAccess, SeqAccess, Visitor};
use serde::ser::{SerializeMap, SerializeSeq, SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{DistanceValue, NormSpec, Point, PolygonNorm};
use crate::predicates::{Configuration, DistanceMultiset, NormCircle};
use crate::scalar::ExactScalar;

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = ExactScalar;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a string like \"3/4\" or \"1 + 1/2*sqrt3\"")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<ExactScalar, E> {
                Ok(ExactScalar::from_int(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<ExactScalar, E> {
                i64::try_from(v).map(ExactScalar::from_int).map_err(E::custom)
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<ExactScalar, E> {
                if v.fract() == 0.0 && v.abs() < 9.0e15 {
                    Ok(ExactScalar::from_int(v as i64))
                } else {
                    Err(E::custom(format!("non-integer number {v}; write exact values as strings")))
                }
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<ExactScalar, E> {
                v.parse().map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&self.x)?;
        seq.serialize_element(&self.y)?;
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y] = <[ExactScalar; 2]>::deserialize(d)?;
        Ok(Point::new(x, y))
    }
}

impl Serialize for NormSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            NormSpec::L1 | NormSpec::L2 | NormSpec::Linf => s.serialize_str(&self.name()),
            NormSpec::Lp(p) => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("lp", p)?;
                m.end()
            }
            NormSpec::Polygonal(poly) => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("polygon", poly.vertices())?;
                m.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for NormSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = NormSpec;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a norm name or {\"lp\": p} or {\"polygon\": [...]}")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<NormSpec, E> {
                parse_norm(v).map_err(E::custom)
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<NormSpec, A::Error> {
                let key: String = map.next_key()?.ok_or_else(|| de::Error::custom("empty norm object"))?;
                match key.as_str() {
                    "lp" => NormSpec::lp(map.next_value()?).map_err(de::Error::custom),
                    "polygon" => NormSpec::polygon(map.next_value()?).map_err(de::Error::custom),
                    k => Err(de::Error::unknown_field(k, &["lp", "polygon"])),
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// `l1`, `l2`, `linf`, `hexagon`, `lp:<p>` or a bare number `p`.
pub fn parse_norm(s: &str) -> Result<NormSpec> {
    let t = s.trim().to_ascii_lowercase();
    Ok(match t.as_str() {
        "l1" | "taxicab" => NormSpec::L1,
        "l2" | "euclidean" => NormSpec::L2,
        "linf" | "chebyshev" => NormSpec::Linf,
        "hexagon" => NormSpec::Polygonal(PolygonNorm::regular_hexagon()),
        other => {
            let p = other.strip_prefix("lp:").unwrap_or(other);
            let p: f64 = p
                .parse()
                .map_err(|_| crate::Error::Parse(format!("unknown norm `{s}`")))?;
            NormSpec::lp(p)?
        }
    })
}

impl Serialize for Configuration {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Configuration", 2)?;
        st.serialize_field("norm", &self.norm)?;
        st.serialize_field("points", &self.points)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            norm: NormSpec,
            points: Vec<Point>,
        }
        let raw = Raw::deserialize(d)?;
        Configuration::new(raw.norm, raw.points).map_err(de::Error::custom)
    }
}

impl Serialize for DistanceValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DistanceValue::Exact { value, squared } => {
                let mut st = s.serialize_struct("DistanceValue", 2)?;
                st.serialize_field("value", value)?;
                st.serialize_field("squared", squared)?;
                st.end()
            }
            DistanceValue::Numeric(v) => s.serialize_f64(*v),
        }
    }
}

impl Serialize for NormCircle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("NormCircle", 2)?;
        st.serialize_field("center", &self.center)?;
        st.serialize_field("radius", &self.radius)?;
        st.end()
    }
}

impl Serialize for DistanceMultiset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Entries<'a>(&'a [(ExactScalar, usize)]);
        impl Serialize for Entries<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for (d, c) in self.0 {
                    seq.serialize_element(&(d, c))?;
                }
                seq.end()
            }
        }
        let mut st = s.serialize_struct("DistanceMultiset", 2)?;
        st.serialize_field("squared", &self.squared)?;
        st.serialize_field("entries", &Entries(&self.entries))?;
        st.end()
    }
}

/// Reads a configuration file.
pub fn read_configuration(path: &Path) -> Result<Configuration> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Parses a plain list of points, `[[x, y], ...]`.
pub fn parse_points(text: &str) -> Result<Vec<Point>> {
    struct V;
    impl<'de> Visitor<'de> for V {
        type Value = Vec<Point>;
        fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str("a list of [x, y] pairs")
        }
        fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Vec<Point>, A::Error> {
            let mut out = Vec::new();
            while let Some(p) = seq.next_element()? {
                out.push(p);
            }
            Ok(out)
        }
    }
    let mut de = serde_json::Deserializer::from_str(text);
    Ok(de.deserialize_seq(V)?)
}
