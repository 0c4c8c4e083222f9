//! Empirical check of the `L^inf` classification: sample every realizable type
//! of a given length and test each witness for being a perpendicular
//! perturbation of a horizontal or vertical line.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::predicates::{is_perpendicular_perturbation, Axis};

use super::sampling::{Engine, Extended, SampleOptions};
use super::{FreeAssignment, TypeString, TypeSymbol};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeStats {
    #[serde(rename = "type")]
    pub type_string: String,
    pub witnesses: u64,
    pub non_perturbations: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonPerturbation {
    #[serde(rename = "type")]
    pub type_string: String,
    pub free: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub grid_step: String,
    pub alphabet: String,
    pub witnesses: u64,
    pub perturbations: u64,
    pub non_perturbations: u64,
    pub types: Vec<TypeStats>,
    pub examples: Vec<NonPerturbation>,
    pub nodes: u64,
    /// For `n >= 7` no witness may be a non-perturbation; below that at least
    /// one must exist.
    pub consistent: bool,
}

const MAX_EXAMPLES: usize = 16;

#[derive(Default)]
struct Acc {
    types: BTreeMap<Vec<TypeSymbol>, (u64, u64)>,
    examples: Vec<(Vec<TypeSymbol>, Vec<i64>)>,
}

/// Samples all line-like crescent configurations of size `n` at grid step
/// `1 / 2^step_exp`, with step symbols drawn from `alphabet` (all eight by
/// default).
///
/// With the full alphabet the first symbol is fixed to `x` or `b_xy`: the
/// plane symmetries map any first step onto one of these and preserve the
/// perturbation property.
pub fn verify_classification(n: usize, step_exp: u32, alphabet: Option<&[TypeSymbol]>) -> Result<ClassificationReport> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("classification needs n >= 3, got {n}")));
    }
    let opts = SampleOptions::new(step_exp);
    let scale = opts.scale();
    let (alpha, first): (Vec<TypeSymbol>, Vec<TypeSymbol>) = match alphabet {
        Some(a) => (a.to_vec(), a.to_vec()),
        None => (TypeSymbol::ALL.to_vec(), vec![TypeSymbol::X, TypeSymbol::Bxy]),
    };
    let free_bound = if alpha.iter().any(|s| s.is_free()) { n - 1 } else { 0 };
    opts.check_free(free_bound)?;
    let choices = Extended {
        prefix: &[],
        first: &first,
        alphabet: &alpha,
        len: n - 1,
    };
    let engine = Engine { choices: &choices, scale, d2_two: false };
    let (acc, nodes) = engine.run(
        Acc::default,
        |acc: &mut Acc, st| {
            let perturbed = is_perpendicular_perturbation(&st.points, Axis::Auto).is_some();
            let e = acc.types.entry(st.symbols.clone()).or_default();
            e.0 += 1;
            if !perturbed {
                e.1 += 1;
                if acc.examples.len() < MAX_EXAMPLES {
                    acc.examples.push((st.symbols.clone(), st.free.clone()));
                }
            }
        },
        |a, b| {
            for (k, v) in b.types {
                let e = a.types.entry(k).or_default();
                e.0 += v.0;
                e.1 += v.1;
            }
            for ex in b.examples {
                if a.examples.len() < MAX_EXAMPLES {
                    a.examples.push(ex);
                }
            }
        },
    );

    let witnesses: u64 = acc.types.values().map(|v| v.0).sum();
    let non_perturbations: u64 = acc.types.values().map(|v| v.1).sum();
    let types = acc
        .types
        .iter()
        .map(|(k, v)| TypeStats {
            type_string: TypeString(k.clone()).to_ascii(),
            witnesses: v.0,
            non_perturbations: v.1,
        })
        .collect();
    let examples = acc
        .examples
        .iter()
        .map(|(k, f)| NonPerturbation {
            type_string: TypeString(k.clone()).to_ascii(),
            free: FreeAssignment::from_grid(f, scale).values().iter().map(|v| v.to_string()).collect(),
        })
        .collect();
    let consistent = if n >= 7 { non_perturbations == 0 } else { non_perturbations > 0 };
    Ok(ClassificationReport {
        n,
        grid_step: format!("1/{scale}"),
        alphabet: alpha.iter().map(|s| s.ascii()).collect(),
        witnesses,
        perturbations: witnesses - non_perturbations,
        non_perturbations,
        types,
        examples,
        nodes,
        consistent,
    })
}
