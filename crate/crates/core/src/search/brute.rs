//! Independent reference: every subset of the region, checked with the exact
//! predicates.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::geometry::NormSpec;
use crate::predicates::{is_crescent_multiplicity, is_strong_crescent, Configuration};

use super::lattice::{canonical_coords, LatticeCoord, LatticeSpec};

/// Canonical forms of all strong crescent configurations of size `n` in the
/// region, sorted row-major.
pub fn brute_force_search(spec: LatticeSpec, norm: &NormSpec, n: usize) -> Result<Vec<Vec<LatticeCoord>>> {
    let coords = spec.coords();
    let mut out = BTreeSet::new();
    let mut idx: Vec<usize> = (0..n).collect();
    if n == 0 || n > coords.len() {
        return Ok(Vec::new());
    }
    loop {
        let pts = idx.iter().map(|&i| spec.point(coords[i])).collect();
        let cfg = Configuration::new(norm.clone(), pts)?;
        if is_crescent_multiplicity(&cfg)? && is_strong_crescent(&cfg)? {
            let sub: Vec<LatticeCoord> = idx.iter().map(|&i| coords[i]).collect();
            let c = canonical_coords(spec.kind, norm, &sub);
            out.insert(c.iter().map(|&(a, b)| (b, a)).collect::<Vec<_>>());
        }
        // next combination
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out.into_iter().map(|c| c.into_iter().map(|(b, a)| (a, b)).collect()).collect());
            }
            i -= 1;
            if idx[i] < coords.len() - n + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..n {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
