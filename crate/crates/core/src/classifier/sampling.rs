//! Dyadic-grid realization search.
//!
//! Coordinates are scaled by `S = 2^m` so that every sampled configuration is
//! an integer point list with first order distance `S`; free values range over
//! `-S < j < S`. Points are appended one at a time and a branch dies as soon as
//! the new point breaks the line-like pattern, lands on a line through two
//! earlier points or on an `L^inf` circle through three.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{collinear, Metric, Point};
use crate::predicates::linf_square;

use super::{FreeAssignment, TypeString, TypeSymbol};

#[derive(Clone, Debug)]
pub struct SampleOptions {
    /// Grid step is `1 / 2^step_exp`.
    pub step_exp: u32,
    /// Keep only configurations whose second order distance is exactly 2.
    pub require_d2_two: bool,
    /// Upper bound on the raw grid size `(2^(m+1) - 1)^k`.
    pub cap: u128,
}

impl SampleOptions {
    pub fn new(step_exp: u32) -> Self {
        SampleOptions {
            step_exp,
            require_d2_two: false,
            cap: 1u128 << 48,
        }
    }

    pub fn with_d2_two(mut self) -> Self {
        self.require_d2_two = true;
        self
    }

    pub fn scale(&self) -> i64 {
        1i64 << self.step_exp
    }

    pub(crate) fn check_free(&self, free_vars: usize) -> Result<()> {
        if !(1..=20).contains(&self.step_exp) {
            return Err(Error::InvalidParameter(format!("grid exponent {} out of range", self.step_exp)));
        }
        let per = (2 * self.scale() - 1) as u128;
        let total = per.checked_pow(free_vars as u32).unwrap_or(u128::MAX);
        if total > self.cap {
            return Err(Error::ResourceLimit(format!(
                "{free_vars} free variables at step 1/{} give {total} grid points (cap {})",
                self.scale(),
                self.cap
            )));
        }
        Ok(())
    }
}

/// A partial realization.
#[derive(Clone, Debug)]
pub(crate) struct State {
    pub points: Vec<Point<i64>>,
    /// `ds[k-1]` is the `k`-th order distance.
    pub ds: Vec<i64>,
    pub symbols: Vec<TypeSymbol>,
    pub free: Vec<i64>,
}

impl State {
    fn root() -> Self {
        State {
            points: vec![Point::new(0, 0)],
            ds: Vec::new(),
            symbols: Vec::new(),
            free: Vec::new(),
        }
    }
}

/// Which symbols may appear at each position of the type.
pub(crate) trait Choices: Sync {
    fn len(&self) -> usize;
    fn at(&self, pos: usize) -> &[TypeSymbol];
}

pub(crate) struct Fixed<'a>(pub &'a [TypeSymbol]);

impl Choices for Fixed<'_> {
    fn len(&self) -> usize {
        self.0.len()
    }
    fn at(&self, pos: usize) -> &[TypeSymbol] {
        std::slice::from_ref(&self.0[pos])
    }
}

/// A fixed prefix followed by positions drawn from an alphabet.
pub(crate) struct Extended<'a> {
    pub prefix: &'a [TypeSymbol],
    pub first: &'a [TypeSymbol],
    pub alphabet: &'a [TypeSymbol],
    pub len: usize,
}

impl Choices for Extended<'_> {
    fn len(&self) -> usize {
        self.len
    }
    fn at(&self, pos: usize) -> &[TypeSymbol] {
        if pos < self.prefix.len() {
            std::slice::from_ref(&self.prefix[pos])
        } else if pos == 0 {
            self.first
        } else {
            self.alphabet
        }
    }
}

pub(crate) struct Engine<'a, C: Choices> {
    pub choices: &'a C,
    pub scale: i64,
    pub d2_two: bool,
}

impl<C: Choices> Engine<'_, C> {
    /// Appends `p` if the extended list is still a partial line-like crescent.
    fn accept(&self, st: &State, p: &Point<i64>) -> Option<i64> {
        let k = st.points.len();
        for i in 1..k {
            if Metric::Linf.dist(&st.points[i], p) != st.ds[k - i - 1] {
                return None;
            }
        }
        let dk = Metric::Linf.dist(&st.points[0], p);
        if st.ds.contains(&dk) {
            return None;
        }
        if self.d2_two && k == 2 && dk != 2 * self.scale {
            return None;
        }
        let pts = &st.points;
        for a in 0..k {
            for b in a + 1..k {
                if collinear(&pts[a], &pts[b], p) {
                    return None;
                }
            }
        }
        for a in 0..k {
            for b in a + 1..k {
                for c in b + 1..k {
                    if linf_square(&[&pts[a], &pts[b], &pts[c], p]).is_some() {
                        return None;
                    }
                }
            }
        }
        Some(dk)
    }

    fn children(&self, st: &State, out: &mut Vec<State>) {
        let pos = st.symbols.len();
        let last = st.points.last().unwrap();
        for &sym in self.choices.at(pos) {
            let range = if sym.is_free() { -self.scale + 1..self.scale } else { 0..1 };
            for j in range {
                let p = last.add(&sym.step(&self.scale, &j));
                if let Some(dk) = self.accept(st, &p) {
                    let mut next = st.clone();
                    next.points.push(p);
                    next.ds.push(dk);
                    next.symbols.push(sym);
                    if sym.is_free() {
                        next.free.push(j);
                    }
                    out.push(next);
                }
            }
        }
    }

    fn dfs<A>(&self, st: &State, acc: &mut A, nodes: &mut u64, visit: &(impl Fn(&mut A, &State) + Sync)) {
        *nodes += 1;
        if st.symbols.len() == self.choices.len() {
            visit(acc, st);
            return;
        }
        let mut kids = Vec::new();
        self.children(st, &mut kids);
        for kid in &kids {
            self.dfs(kid, acc, nodes, visit);
        }
    }

    /// Visits every complete realization in lexicographic (symbol, free value)
    /// order, splitting the top of the tree across threads.
    pub fn run<A: Send>(
        &self,
        init: impl Fn() -> A + Sync,
        visit: impl Fn(&mut A, &State) + Sync,
        merge: impl Fn(&mut A, A),
    ) -> (A, u64) {
        let mut frontier = vec![State::root()];
        let mut nodes = 0u64;
        let mut done = init();
        // breadth-first until there is enough work to share
        while frontier.len() < 64 && frontier.iter().any(|s| s.symbols.len() < self.choices.len()) {
            let mut next = Vec::new();
            for st in &frontier {
                if st.symbols.len() == self.choices.len() {
                    next.push(st.clone());
                } else {
                    nodes += 1;
                    self.children(st, &mut next);
                }
            }
            if next.is_empty() {
                return (done, nodes);
            }
            frontier = next;
        }
        let parts: Vec<(A, u64)> = frontier
            .par_iter()
            .map(|st| {
                let mut acc = init();
                let mut n = 0;
                self.dfs(st, &mut acc, &mut n, &visit);
                (acc, n)
            })
            .collect();
        for (acc, n) in parts {
            merge(&mut done, acc);
            nodes += n;
        }
        (done, nodes)
    }
}

/// Outcome of sampling one type string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizeSummary {
    pub witnesses: u64,
    pub first: Option<FreeAssignment>,
    pub nodes: u64,
}

/// Every grid assignment realizing `t` as a line-like crescent, in
/// lexicographic order of the free values.
pub fn realize_sample(t: &TypeString, step_exp: u32) -> Result<Vec<FreeAssignment>> {
    let opts = SampleOptions::new(step_exp);
    opts.check_free(t.free_variable_count())?;
    let scale = opts.scale();
    let choices = Fixed(t.symbols());
    let engine = Engine { choices: &choices, scale, d2_two: false };
    let (found, _) = engine.run(
        Vec::new,
        |acc: &mut Vec<FreeAssignment>, st| acc.push(FreeAssignment::from_grid(&st.free, scale)),
        |a, b| a.extend(b),
    );
    Ok(found)
}

/// Witness count and first witness for `t`.
pub fn realization_summary(t: &TypeString, opts: &SampleOptions) -> Result<RealizeSummary> {
    opts.check_free(t.free_variable_count())?;
    let scale = opts.scale();
    let choices = Fixed(t.symbols());
    let engine = Engine { choices: &choices, scale, d2_two: opts.require_d2_two };
    let ((count, first), nodes) = engine.run(
        || (0u64, None),
        |acc: &mut (u64, Option<Vec<i64>>), st| {
            acc.0 += 1;
            if acc.1.is_none() {
                acc.1 = Some(st.free.clone());
            }
        },
        |a, b| {
            a.0 += b.0;
            if a.1.is_none() {
                a.1 = b.1;
            }
        },
    );
    Ok(RealizeSummary {
        witnesses: count,
        first: first.map(|f| FreeAssignment::from_grid(&f, scale)),
        nodes,
    })
}

/// Extensions `t e_1 .. e_m` (each `e_i` from `alphabet`, all eight symbols by
/// default) that have a realization, each with its first witness.
pub fn extend_sample(
    t: &TypeString,
    m: usize,
    opts: &SampleOptions,
    alphabet: Option<&[TypeSymbol]>,
) -> Result<Vec<(Vec<TypeSymbol>, FreeAssignment)>> {
    opts.check_free(t.free_variable_count() + m)?;
    let scale = opts.scale();
    let alphabet = alphabet.unwrap_or(&TypeSymbol::ALL);
    let choices = Extended {
        prefix: t.symbols(),
        first: alphabet,
        alphabet,
        len: t.len() + m,
    };
    let engine = Engine { choices: &choices, scale, d2_two: opts.require_d2_two };
    let base = t.len();
    let (found, _) = engine.run(
        BTreeMap::new,
        |acc: &mut BTreeMap<Vec<TypeSymbol>, Vec<i64>>, st| {
            acc.entry(st.symbols[base..].to_vec()).or_insert_with(|| st.free.clone());
        },
        |a, b| {
            for (k, v) in b {
                a.entry(k).or_insert(v);
            }
        },
    );
    Ok(found
        .into_iter()
        .map(|(ext, f)| (ext, FreeAssignment::from_grid(&f, scale)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::coordinates_of_type;
    use crate::predicates::is_linelike_crescent;

    fn t(s: &str) -> TypeString {
        s.parse().unwrap()
    }

    #[test]
    fn witnesses_are_verified_by_exact_predicates() {
        for ty in ["xy", "xyx", "xA", "AB"] {
            let ws = realize_sample(&t(ty), 2).unwrap();
            assert!(!ws.is_empty(), "{ty}");
            for w in &ws {
                let cfg = coordinates_of_type(&t(ty), w).unwrap();
                assert!(is_linelike_crescent(&cfg).unwrap().is_some(), "{ty} {w}");
            }
        }
    }

    #[test]
    fn grid_sampler_matches_exact_filter() {
        // every grid assignment of a 2-variable type, checked both ways
        let ty = t("xY");
        let ws = realize_sample(&ty, 2).unwrap();
        let mut expect = Vec::new();
        for a in -3..4 {
            for b in -3..4 {
                let f = FreeAssignment::from_grid(&[a, b], 4);
                let cfg = coordinates_of_type(&ty, &f).unwrap();
                if is_linelike_crescent(&cfg).unwrap() == Some(vec![0, 1, 2]) || {
                    // a reversed ordering is the same line-like set
                    is_linelike_crescent(&cfg).unwrap() == Some(vec![2, 1, 0])
                } {
                    expect.push(f);
                }
            }
        }
        assert_eq!(ws, expect);
    }

    #[test]
    fn diagonal_pairs_are_empty() {
        assert!(realize_sample(&t("AA"), 3).unwrap().is_empty());
        assert!(realize_sample(&t("AC"), 3).unwrap().is_empty());
    }

    #[test]
    fn extensions() {
        let opts = SampleOptions::new(2);
        let ext = extend_sample(&t("x"), 1, &opts, None).unwrap();
        assert!(ext.iter().any(|(e, _)| e == &[TypeSymbol::Y]));
        let opts = SampleOptions::new(3);
        assert!(extend_sample(&t("xB"), 2, &opts, None).unwrap().is_empty());
    }

    #[test]
    fn resource_cap() {
        let mut opts = SampleOptions::new(3);
        opts.cap = 100;
        assert!(matches!(realization_summary(&t("xyx"), &opts), Err(Error::ResourceLimit(_))));
    }
}
