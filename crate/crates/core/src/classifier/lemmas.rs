//! The forbidden-type suite: every non-realizability claim used by the
//! classification argument, expanded over all reflections and checked by
//! grid sampling.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::Result;

use super::sampling::{realization_summary, SampleOptions};
use super::{TypeString, TypeSymbol};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClaimKind {
    NotRealizable,
    /// No `m` symbols from `alphabet` appended to the type give a realizable
    /// type. Reversal turns appended symbols into prepended ones, so the
    /// expansion checks both sides.
    NotExtendable { m: usize, alphabet: String },
}

#[derive(Clone, Debug)]
pub struct Claim {
    pub label: String,
    pub kind: ClaimKind,
    pub base: Vec<TypeString>,
    pub require_d2_two: bool,
}

fn ts(s: &str) -> TypeString {
    s.parse().expect("valid type literal")
}

fn words(alphabet: &[TypeSymbol], len: usize) -> Vec<Vec<TypeSymbol>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                alphabet.iter().map(move |&s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out
}

fn alphabet_of(s: &str) -> Vec<TypeSymbol> {
    s.chars().filter_map(TypeSymbol::from_ascii).collect()
}

impl Claim {
    fn realizable(label: &str, base: &[&str]) -> Self {
        Claim {
            label: label.into(),
            kind: ClaimKind::NotRealizable,
            base: base.iter().map(|s| ts(s)).collect(),
            require_d2_two: false,
        }
    }

    fn extendable(label: &str, base: &[&str], m: usize, alphabet: &str) -> Self {
        Claim {
            label: label.into(),
            kind: ClaimKind::NotExtendable { m, alphabet: alphabet.into() },
            base: base.iter().map(|s| ts(s)).collect(),
            require_d2_two: false,
        }
    }

    fn with_d2_two(mut self) -> Self {
        self.require_d2_two = true;
        self
    }

    /// Every full type string that must have no realization.
    pub fn expand(&self) -> BTreeSet<TypeString> {
        let exts = match &self.kind {
            ClaimKind::NotRealizable => vec![Vec::new()],
            ClaimKind::NotExtendable { m, alphabet } => words(&alphabet_of(alphabet), *m),
        };
        let mut out = BTreeSet::new();
        for b in &self.base {
            for e in &exts {
                out.extend(b.concat(e).orbit());
            }
        }
        out
    }
}

/// The claim list checked by [`verify_forbidden_types`].
pub fn forbidden_claims() -> Vec<Claim> {
    let mut claims = vec![
        Claim::realizable("repeated or opposite diagonal steps", &["AA", "AC"]),
        Claim::extendable("axis step then turning-back diagonal is not 2-extendable", &["xB"], 2, "xXyYABCD"),
        Claim::extendable("reversal of an axis step cannot continue with two axis steps", &["xX"], 2, "xXyY"),
        Claim::realizable("alternating staircase with one reversed step", &["xyxY", "xyXy"]),
        Claim::realizable("alternating staircase of six steps", &["xyxyxy"]),
        Claim::realizable("rotating staircase of five steps", &["xyXYx"]),
    ];

    let diag = TypeSymbol::DIAGONAL;
    let allowed: BTreeSet<TypeString> = ts("A").orbit().into_iter().chain(ts("AB").orbit()).chain(ts("ABA").orbit()).collect();
    let mut bad_diag = Vec::new();
    for len in 2..=4 {
        for w in words(&diag, len) {
            let t = TypeString(w);
            if !allowed.contains(&t) {
                bad_diag.push(t.to_ascii());
            }
        }
    }
    let refs: Vec<&str> = bad_diag.iter().map(String::as_str).collect();
    claims.push(Claim::realizable("diagonal-only types other than A, AB, ABA", &refs));
    claims.push(Claim::extendable("diagonal zigzag cannot grow by another diagonal", &["ABA"], 1, "ABCD"));

    // d_2 = 2 families with up to three diagonal steps in the middle
    let mut closing = Vec::new();
    let mut turning = Vec::new();
    for k in 1..=3 {
        for c in words(&diag, k) {
            let mid = TypeString(c).to_ascii();
            closing.push(format!("x{mid}X"));
            closing.push(format!("x{mid}y"));
        }
        for c in words(&[TypeSymbol::Bxy, TypeSymbol::BxyPrime], k) {
            let mid = TypeString(c).to_ascii();
            for t in ["A", "B", "C", "D", "x"] {
                turning.push(format!("x{mid}B{t}"));
                turning.push(format!("{t}x{mid}B"));
            }
        }
    }
    let refs: Vec<&str> = closing.iter().map(String::as_str).collect();
    claims.push(Claim::extendable("axis, diagonal run, reversed or turned axis step is not 1-extendable", &refs, 1, "xXyYABCD").with_d2_two());
    let refs: Vec<&str> = turning.iter().map(String::as_str).collect();
    claims.push(Claim::realizable("axis, diagonal run, turned-back diagonal with one more step", &refs).with_d2_two());
    claims
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    #[serde(rename = "type")]
    pub type_string: String,
    pub free: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    pub label: String,
    #[serde(flatten)]
    pub kind: ClaimKind,
    pub require_d2_two: bool,
    pub types_checked: usize,
    pub witnesses: u64,
    pub nodes: u64,
    pub counterexample: Option<Counterexample>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub grid_step: String,
    pub claims: Vec<ClaimReport>,
    pub all_hold: bool,
}

/// Samples every type of the claim; the claim holds when nothing is found.
pub fn check_claim(claim: &Claim, step_exp: u32) -> Result<ClaimReport> {
    let mut opts = SampleOptions::new(step_exp);
    opts.require_d2_two = claim.require_d2_two;
    let types = claim.expand();
    let (mut witnesses, mut nodes, mut counterexample) = (0, 0, None);
    for t in &types {
        let s = realization_summary(t, &opts)?;
        witnesses += s.witnesses;
        nodes += s.nodes;
        if counterexample.is_none() {
            counterexample = s.first.map(|f| Counterexample {
                type_string: t.to_ascii(),
                free: f.values().iter().map(|v| v.to_string()).collect(),
            });
        }
    }
    Ok(ClaimReport {
        label: claim.label.clone(),
        kind: claim.kind.clone(),
        require_d2_two: claim.require_d2_two,
        types_checked: types.len(),
        witnesses,
        nodes,
        counterexample,
        holds: witnesses == 0,
    })
}

/// Runs the full suite at grid step `1 / 2^step_exp`.
pub fn verify_forbidden_types(step_exp: u32) -> Result<LemmaReport> {
    let claims = forbidden_claims()
        .iter()
        .map(|c| check_claim(c, step_exp))
        .collect::<Result<Vec<_>>>()?;
    let all_hold = claims.iter().all(|c| c.holds);
    Ok(LemmaReport {
        grid_step: format!("1/{}", 1u64 << step_exp),
        claims,
        all_hold,
    })
}

/// The deliberately false claim that `xy` has no realization; its report must
/// fail and carry a witness.
pub fn sanity_inversion(step_exp: u32) -> Result<ClaimReport> {
    check_claim(&Claim::realizable("inverted control: xy is not realizable", &["xy"]), step_exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_covers_reflections() {
        let c = Claim::realizable("t", &["xA"]);
        assert_eq!(c.expand().len(), 16);
        let e = Claim::extendable("t", &["xX"], 2, "xXyY");
        let all = e.expand();
        assert!(all.contains(&ts("xXyY")));
        assert!(all.contains(&ts("yYxX")));
        assert!(all.contains(&ts("xyXx")));
    }

    #[test]
    fn diagonal_claim_excludes_known_types() {
        let claims = forbidden_claims();
        let diag = claims.iter().find(|c| c.label.starts_with("diagonal-only")).unwrap();
        let all = diag.expand();
        assert!(!all.contains(&ts("AB")));
        assert!(!all.contains(&ts("DAD")));
        assert!(all.contains(&ts("AA")));
        assert!(all.contains(&ts("ABAB")));
    }

    #[test]
    fn coarse_suite_holds() {
        let r = verify_forbidden_types(2).unwrap();
        for c in &r.claims {
            assert!(c.holds, "{c:?}");
        }
        let inv = sanity_inversion(2).unwrap();
        assert!(!inv.holds);
        assert_eq!(inv.counterexample.unwrap().type_string, "xy");
    }
}
