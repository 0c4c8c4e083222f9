//! Backtracking search for strong crescent configurations on lattice regions.
//!
//! Point sets are built in increasing index order. Each new point is tested
//! against the symmetry rule, then collinear triples, the distance
//! multiplicity budget, line-like quadruples and concyclic quadruples, in that
//! order. The top two levels of the tree are cut into work items that run in
//! parallel and are merged in item order.

pub mod brute;
mod checkpoint;
pub mod lattice;
pub mod oracle;

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::NormSpec;
use crate::predicates::{has_collinear_triple, is_crescent_multiplicity, is_strong_crescent, Configuration};

pub use checkpoint::Header as CheckpointHeader;
pub use lattice::{canonical_coords, canonicalize, lattice_point, locate, LatticeCoord, LatticeKind, LatticeSpec};
pub use oracle::PairOracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    First,
    All,
    Absence,
}

impl FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" => Ok(SearchMode::First),
            "all" => Ok(SearchMode::All),
            "absence" | "exhaustive_absence" => Ok(SearchMode::Absence),
            _ => Err(Error::Parse(format!("unknown search mode `{s}`"))),
        }
    }
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::First => "first",
            SearchMode::All => "all",
            SearchMode::Absence => "absence",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SearchParams {
    pub lattice: LatticeSpec,
    pub norm: NormSpec,
    pub target_size: usize,
    pub mode: SearchMode,
    pub symmetry_reduction: bool,
    pub checkpoint: Option<PathBuf>,
    /// Worker threads; 0 uses the global pool.
    pub threads: usize,
    /// Abort with [`Error::ResourceLimit`] once this many nodes are accepted.
    pub node_cap: Option<u64>,
    /// Stop after roughly this many accepted nodes, keeping the unexplored
    /// work in the checkpoint.
    pub interrupt_after: Option<u64>,
    /// Skip the line-like and concyclic tests (harness self-check only).
    pub relax_general_position: bool,
}

impl SearchParams {
    pub fn new(lattice: LatticeSpec, norm: NormSpec, target_size: usize, mode: SearchMode) -> Self {
        SearchParams {
            lattice,
            norm,
            target_size,
            mode,
            symmetry_reduction: true,
            checkpoint: None,
            threads: 0,
            node_cap: None,
            interrupt_after: None,
            relax_general_position: false,
        }
    }

    fn header(&self) -> checkpoint::Header {
        checkpoint::Header {
            lattice: self.lattice,
            norm: self.norm.clone(),
            target_size: self.target_size,
            mode: self.mode,
            symmetry_reduction: self.symmetry_reduction,
            relax_general_position: self.relax_general_position,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneCounts {
    pub symmetry: u64,
    pub collinear: u64,
    pub multiplicity: u64,
    pub linelike: u64,
    pub concyclic: u64,
    /// Complete sets dropped because a left translate is also in the region.
    pub translation: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Extensions tried, before any test.
    pub candidates: u64,
    /// Partial sets that passed every test.
    pub nodes: u64,
    pub prunes: PruneCounts,
    pub complete_sets: u64,
}

impl SearchStats {
    fn absorb(&mut self, o: &SearchStats) {
        self.candidates += o.candidates;
        self.nodes += o.nodes;
        self.complete_sets += o.complete_sets;
        let (p, q) = (&mut self.prunes, &o.prunes);
        p.symmetry += q.symmetry;
        p.collinear += q.collinear;
        p.multiplicity += q.multiplicity;
        p.linelike += q.linelike;
        p.concyclic += q.concyclic;
        p.translation += q.translation;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub lattice: LatticeSpec,
    pub norm: String,
    pub target_size: usize,
    pub mode: SearchMode,
    /// Canonical lattice pairs of each configuration, sorted.
    pub coordinates: Vec<Vec<LatticeCoord>>,
    pub configurations: Vec<Configuration>,
    pub stats: SearchStats,
    pub wall_time_secs: f64,
    /// False when the run stopped early and left work in the checkpoint.
    pub complete: bool,
    pub pending_items: usize,
    /// Set in absence mode once the tree is exhausted.
    pub absent: Option<bool>,
}

struct Ctx {
    oracle: PairOracle,
    n: usize,
    group: Vec<Vec<usize>>,
    symmetry: bool,
    relax: bool,
}

/// Shared stop signals of one run.
struct Control {
    nodes: AtomicU64,
    cap: u64,
    interrupt: u64,
    capped: AtomicBool,
    interrupted: AtomicBool,
    best_item: AtomicUsize,
    first: bool,
}

impl Control {
    fn tick(&self) {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n >= self.cap {
            self.capped.store(true, Ordering::Relaxed);
        }
        if n >= self.interrupt {
            self.interrupted.store(true, Ordering::Relaxed);
        }
    }

    fn stop(&self, item: usize) -> bool {
        self.capped.load(Ordering::Relaxed)
            || self.interrupted.load(Ordering::Relaxed)
            || (self.first && self.best_item.load(Ordering::Relaxed) < item)
    }
}

#[derive(PartialEq, Eq)]
enum Flow {
    Continue,
    Found,
    Abort,
}

struct Frame<'a> {
    ctx: &'a Ctx,
    chosen: Vec<usize>,
    counts: Vec<u32>,
    hist: Vec<u32>,
    stats: SearchStats,
    scratch: Vec<usize>,
}

impl<'a> Frame<'a> {
    fn new(ctx: &'a Ctx) -> Self {
        let n = ctx.n;
        Frame {
            ctx,
            chosen: Vec::with_capacity(n),
            counts: vec![0; ctx.oracle.class_count()],
            hist: vec![0; n * n + 2],
            stats: SearchStats::default(),
            scratch: Vec::with_capacity(n),
        }
    }

    fn bump(&mut self, cls: u32, up: bool) {
        let c = &mut self.counts[cls as usize];
        self.hist[*c as usize] -= u32::from(*c > 0);
        if up {
            *c += 1;
        } else {
            *c -= 1;
        }
        self.hist[*c as usize] += u32::from(*c > 0);
    }

    fn add_distances(&mut self, idx: usize, up: bool) {
        for i in 0..self.chosen.len() {
            let cls = self.ctx.oracle.class(self.chosen[i], idx);
            self.bump(cls, up);
        }
    }

    /// Final multiplicities must be distinct values in `1..n`; a class seen
    /// `c` times needs a slot in `c..n`, so at most `n - t` classes may have
    /// reached `t`.
    fn budget_ok(&self) -> bool {
        let n = self.ctx.n;
        if self.hist[n..].iter().any(|&h| h > 0) {
            return false;
        }
        let mut cum = 0;
        for t in (1..n).rev() {
            cum += self.hist[t] as usize;
            if cum > n - t {
                return false;
            }
        }
        true
    }

    fn symmetric_ok(&mut self, idx: usize) -> bool {
        for g in &self.ctx.group {
            self.scratch.clear();
            self.scratch.extend(self.chosen.iter().map(|&c| g[c]));
            self.scratch.push(g[idx]);
            self.scratch.sort_unstable();
            let cur = self.chosen.iter().copied().chain(std::iter::once(idx));
            if self.scratch.iter().copied().lt(cur) {
                return false;
            }
        }
        true
    }

    fn try_add(&mut self, idx: usize) -> bool {
        self.stats.candidates += 1;
        let o = &self.ctx.oracle;
        if self.ctx.symmetry && !self.symmetric_ok(idx) {
            self.stats.prunes.symmetry += 1;
            return false;
        }
        let k = self.chosen.len();
        for a in 0..k {
            for b in a + 1..k {
                if o.collinear(self.chosen[a], self.chosen[b], idx) {
                    self.stats.prunes.collinear += 1;
                    return false;
                }
            }
        }
        self.add_distances(idx, true);
        if !self.budget_ok() {
            self.add_distances(idx, false);
            self.stats.prunes.multiplicity += 1;
            return false;
        }
        if !self.ctx.relax {
            let c = &self.chosen;
            let triples = || {
                (0..k).flat_map(move |a| (a + 1..k).flat_map(move |b| (b + 1..k).map(move |d| (a, b, d))))
            };
            if triples().any(|(a, b, d)| o.linelike4([c[a], c[b], c[d], idx])) {
                self.add_distances(idx, false);
                self.stats.prunes.linelike += 1;
                return false;
            }
            if triples().any(|(a, b, d)| o.concyclic([c[a], c[b], c[d], idx])) {
                self.add_distances(idx, false);
                self.stats.prunes.concyclic += 1;
                return false;
            }
        }
        self.chosen.push(idx);
        self.stats.nodes += 1;
        true
    }

    /// Re-enters a prefix that already passed every test.
    fn replay(&mut self, prefix: &[usize]) {
        for &idx in prefix {
            self.add_distances(idx, true);
            self.chosen.push(idx);
        }
    }

    fn pop(&mut self) {
        let idx = self.chosen.pop().unwrap();
        self.add_distances(idx, false);
    }

    /// Candidate indices for the next point.
    fn next_range(&self) -> std::ops::Range<usize> {
        let total = self.ctx.oracle.len();
        let remaining = self.ctx.n - self.chosen.len();
        let start = self.chosen.last().map_or(0, |&l| l + 1);
        let mut end = (total + 1).saturating_sub(remaining);
        if self.chosen.is_empty() && self.ctx.symmetry {
            end = end.min(self.ctx.oracle.spec.width);
        }
        start..end.max(start)
    }

    fn complete(&mut self, out: &mut Vec<Vec<usize>>) -> bool {
        if self.ctx.symmetry && self.chosen.iter().all(|&i| self.ctx.oracle.coord(i).0 > 0) {
            self.stats.prunes.translation += 1;
            return false;
        }
        self.stats.complete_sets += 1;
        out.push(self.chosen.clone());
        true
    }

    fn dfs(&mut self, out: &mut Vec<Vec<usize>>, ctl: &Control, item: usize) -> Flow {
        if self.chosen.len() == self.ctx.n {
            return if self.complete(out) && ctl.first { Flow::Found } else { Flow::Continue };
        }
        for idx in self.next_range() {
            if ctl.stop(item) {
                return Flow::Abort;
            }
            if self.try_add(idx) {
                ctl.tick();
                let r = self.dfs(out, ctl, item);
                self.pop();
                if r != Flow::Continue {
                    return r;
                }
            }
        }
        Flow::Continue
    }

    /// Work items: accepted prefixes of length `depth`, in DFS order.
    fn prefixes(&mut self, depth: usize, out: &mut Vec<Vec<usize>>) {
        if self.chosen.len() == depth {
            out.push(self.chosen.clone());
            return;
        }
        for idx in self.next_range() {
            if self.try_add(idx) {
                self.prefixes(depth, out);
                self.pop();
            }
        }
    }
}

enum ItemOutcome {
    Done { found: Vec<Vec<usize>>, stats: SearchStats },
    Abandoned,
}

fn validate(params: &SearchParams) -> Result<()> {
    if !params.norm.is_exact() {
        return Err(Error::UnsupportedExactNorm);
    }
    if params.target_size < 3 {
        return Err(Error::InvalidParameter(format!("target size {} is below 3", params.target_size)));
    }
    if params.lattice.width == 0 || params.lattice.height == 0 {
        return Err(Error::InvalidParameter("lattice dimensions must be positive".into()));
    }
    Ok(())
}

/// Runs the search described by `params`, resuming from its checkpoint file
/// when one exists.
pub fn search(params: &SearchParams) -> Result<SearchResult> {
    validate(params)?;
    match params.threads {
        0 => run(params),
        t => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?
            .install(|| run(params)),
    }
}

/// Exhausts the tree and reports whether no configuration exists.
pub fn verify_absence(params: &SearchParams) -> Result<SearchResult> {
    let mut p = params.clone();
    p.mode = SearchMode::Absence;
    search(&p)
}

fn run(params: &SearchParams) -> Result<SearchResult> {
    let start = Instant::now();
    let oracle = PairOracle::new(params.lattice, &params.norm);
    let group = if params.symmetry_reduction {
        params.lattice.region_symmetries(&params.norm).into_iter().skip(1).collect()
    } else {
        Vec::new()
    };
    let ctx = Ctx {
        oracle,
        n: params.target_size,
        group,
        symmetry: params.symmetry_reduction,
        relax: params.relax_general_position,
    };
    let header = params.header();
    let total = ctx.oracle.len();

    let resumed = match &params.checkpoint {
        Some(path) => checkpoint::load(path, &header)?,
        None => None,
    };
    let (items, mut found, mut stats) = match resumed {
        Some(cp) => {
            if let Some((_, bad)) = cp.pending.iter().chain(&cp.found).find(|(_, p)| p.iter().any(|&i| i >= total)) {
                return Err(Error::CheckpointFormat(format!("index prefix {bad:?} is outside the lattice")));
            }
            (cp.pending, cp.found, cp.stats)
        }
        None => {
            let mut frame = Frame::new(&ctx);
            let mut prefixes = Vec::new();
            frame.prefixes(2, &mut prefixes);
            (prefixes.into_iter().enumerate().collect(), Vec::new(), frame.stats)
        }
    };

    let first = params.mode == SearchMode::First;
    let ctl = Control {
        nodes: AtomicU64::new(0),
        cap: params.node_cap.unwrap_or(u64::MAX),
        interrupt: params.interrupt_after.unwrap_or(u64::MAX),
        capped: AtomicBool::new(false),
        interrupted: AtomicBool::new(false),
        best_item: AtomicUsize::new(found.iter().map(|f| f.0).min().filter(|_| first).unwrap_or(usize::MAX)),
        first,
    };

    let outcomes: Vec<ItemOutcome> = items
        .par_iter()
        .map(|(item, prefix)| {
            if ctl.stop(*item) {
                return ItemOutcome::Abandoned;
            }
            let mut frame = Frame::new(&ctx);
            frame.replay(prefix);
            let mut out = Vec::new();
            match frame.dfs(&mut out, &ctl, *item) {
                Flow::Abort => ItemOutcome::Abandoned,
                flow => {
                    if flow == Flow::Found {
                        ctl.best_item.fetch_min(*item, Ordering::Relaxed);
                    }
                    ItemOutcome::Done { found: out, stats: frame.stats }
                }
            }
        })
        .collect();

    let best = ctl.best_item.load(Ordering::Relaxed);
    let mut pending = Vec::new();
    for ((item, prefix), outcome) in items.iter().zip(outcomes) {
        match outcome {
            // in first mode, work beyond the winning item is irrelevant
            _ if first && *item > best => {}
            ItemOutcome::Abandoned => pending.push((*item, prefix.clone())),
            ItemOutcome::Done { found: f, stats: s } => {
                stats.absorb(&s);
                found.extend(f.into_iter().map(|set| (*item, set)));
            }
        }
    }
    if first {
        found.sort_by_key(|f| f.0);
        found.truncate(1);
    }

    let cp = checkpoint::Checkpoint { pending, found, stats };
    if let Some(path) = &params.checkpoint {
        checkpoint::save(path, &header, &cp)?;
    }
    if ctl.capped.load(Ordering::Relaxed) && !cp.pending.is_empty() {
        return Err(Error::ResourceLimit(format!(
            "node cap {} reached with {} work items left",
            ctl.cap,
            cp.pending.len()
        )));
    }

    let complete = cp.pending.is_empty();
    let (coordinates, configurations) = finish(params, &ctx, &cp.found)?;
    Ok(SearchResult {
        lattice: params.lattice,
        norm: params.norm.name(),
        target_size: params.target_size,
        mode: params.mode,
        absent: (params.mode == SearchMode::Absence && complete).then_some(coordinates.is_empty()),
        coordinates,
        configurations,
        stats: cp.stats,
        wall_time_secs: start.elapsed().as_secs_f64(),
        complete,
        pending_items: cp.pending.len(),
    })
}

/// Canonical forms of the raw index sets, each re-verified with the exact
/// predicates.
fn finish(
    params: &SearchParams,
    ctx: &Ctx,
    found: &[(usize, Vec<usize>)],
) -> Result<(Vec<Vec<LatticeCoord>>, Vec<Configuration>)> {
    let kind = params.lattice.kind;
    let mut canon = BTreeSet::new();
    let mut ordered = Vec::new();
    for (_, set) in found {
        let coords: Vec<LatticeCoord> = set.iter().map(|&i| ctx.oracle.coord(i)).collect();
        let c = canonical_coords(kind, &params.norm, &coords);
        let key: Vec<(i64, i64)> = c.iter().map(|&(a, b)| (b, a)).collect();
        if canon.insert(key) {
            ordered.push(c);
        }
    }
    ordered.sort_by_key(|c| c.iter().map(|&(a, b)| (b, a)).collect::<Vec<_>>());
    let mut configs = Vec::with_capacity(ordered.len());
    for c in &ordered {
        let cfg = Configuration::new(params.norm.clone(), c.iter().map(|&p| lattice_point(kind, p)).collect())?;
        let ok = if params.relax_general_position {
            is_crescent_multiplicity(&cfg)? && has_collinear_triple(&cfg).is_none()
        } else {
            is_strong_crescent(&cfg)?
        };
        if !ok {
            return Err(Error::InvalidParameter(format!("search produced a set failing exact re-verification: {c:?}")));
        }
        configs.push(cfg);
    }
    Ok((ordered, configs))
}
