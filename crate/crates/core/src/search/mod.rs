//! Exhaustive search oracles at desk scale (`n <= 6`).
//!
//! Every search enumerates antichains of the subset lattice by
//! branch-and-bound in rank space and computes the best partner family with
//! a maximum-antichain (chain-cover matching) bound. The values found here are never
//! taken from the closed-form bounds; they are what the bounds are checked
//! against.
//!
//! A search is split into independent tasks (antichain prefixes of length
//! one or two). A [`SearchPlan`] hands out [`Worker`]s that run tasks and
//! share only a monotone best-so-far value; [`SearchPlan::finish`] merges the
//! partial results deterministically, so the outcome never depends on how
//! tasks were scheduled.
//!
//! Reductions used:
//! * for pairs, orient so that `|B| <= |A|`: for fixed `B` the best `A` is a
//!   maximum antichain of the down-set `D(B) = {S : |S ∪ B| <= s ∀B ∈ B}`;
//! * for triples, orient `|C| <= |B| <= |A|` the same way;
//! * without the antichain condition both families may be taken down-closed,
//!   since replacing a family by its down-closure keeps cross s-union (subsets
//!   only shrink unions) and does not shrink it. An optimal pair is then
//!   `(D(B), B)` for a down-set `B`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

use crate::family::{FamilyPair, FamilyTriple, SetFamily};
use crate::lattice::{ranks, Cube, WidthCache, MAX_CUBE};
use crate::set::GroundSet;

mod visitors;

use visitors::{
    run_task, GeneralPairVisitor, UnionFamilyVisitor, UnionAntichainVisitor, PairVisitor, TripleVisitor,
};

/// Largest `n` for the general (non-antichain) pair search and the
/// `s = n - 1` antichain search.
pub const MAX_GENERAL_N: u32 = 5;
/// Largest `n` for the antichain searches.
pub const MAX_ANTICHAIN_N: u32 = MAX_CUBE;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("need 0 < s < n, got n={n}, s={s}")]
    Range { n: u32, s: u32 },
    #[error("{kind} search is limited to n <= {max}, got n={n}")]
    Scale { kind: &'static str, n: u32, max: u32 },
}

/// What is being maximised.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchKind {
    /// `|A| + |B|` over nonempty cross s-union antichain pairs; with the flag
    /// neither family may be `{∅}`.
    PairAntichain { forbid_empty_singleton: bool },
    /// `|A| + |B| + |C|` over nonempty cross s-union antichain triples.
    TripleAntichain,
    /// `|A| + |B|` over nonempty cross s-union pairs.
    PairGeneral,
    /// `|F|` over s-union antichains.
    UnionAntichain,
    /// `|F|` over s-union families.
    UnionFamily,
    /// `min(|A|, |B|)` over nonempty cross s-union antichain pairs. Reports
    /// the value only, no witnesses.
    MinPair,
    /// `|A| + |B|` over cross `(n-1)`-union antichain pairs.
    CoUnionPair,
}

impl SearchKind {
    pub fn name(self) -> &'static str {
        match self {
            SearchKind::PairAntichain { .. } => "antichain pair",
            SearchKind::TripleAntichain => "antichain triple",
            SearchKind::PairGeneral => "general pair",
            SearchKind::UnionAntichain => "s-union antichain",
            SearchKind::UnionFamily => "s-union family",
            SearchKind::MinPair => "min pair",
            SearchKind::CoUnionPair => "(n-1)-union antichain pair",
        }
    }

    fn max_n(self) -> u32 {
        match self {
            SearchKind::PairGeneral | SearchKind::CoUnionPair => MAX_GENERAL_N,
            _ => MAX_ANTICHAIN_N,
        }
    }
}

/// One optimal configuration.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Witness {
    Family(SetFamily),
    /// Canonical order: the smaller family first.
    Pair(FamilyPair),
    /// Canonical order: families sorted.
    Triple(FamilyTriple),
}

impl Witness {
    pub fn families(&self) -> Vec<&SetFamily> {
        match self {
            Witness::Family(f) => alloc::vec![f],
            Witness::Pair(p) => alloc::vec![&p.first, &p.second],
            Witness::Triple(t) => t.families.iter().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub max_value: u64,
    /// All optimal configurations up to swapping/permuting the families, in
    /// canonical order.
    pub witnesses: Vec<Witness>,
    /// Search nodes visited; depends on scheduling when run in parallel.
    pub nodes_explored: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Raw {
    One(u64),
    Two(u64, u64),
    Three(u64, u64, u64),
}

/// What one worker found.
#[derive(Clone, Debug, Default)]
pub struct Partial {
    best: u64,
    candidates: Vec<(u64, Raw)>,
    nodes: u64,
}

impl Partial {
    pub fn nodes(&self) -> u64 {
        self.nodes
    }
}

/// Shared state of a search split into tasks.
pub struct SearchPlan {
    kind: SearchKind,
    s: u32,
    cube: Cube,
    within: Vec<u64>,
    base: u64,
    tasks: Vec<(u8, u8)>,
}

pub(crate) const NO_SECOND: u8 = u8::MAX;

impl SearchPlan {
    pub fn new(kind: SearchKind, n: u32, s: u32) -> Result<SearchPlan, SearchError> {
        if s == 0 || s >= n {
            return Err(SearchError::Range { n, s });
        }
        if kind == SearchKind::CoUnionPair && s != n - 1 {
            return Err(SearchError::Range { n, s });
        }
        if n > kind.max_n() {
            return Err(SearchError::Scale { kind: kind.name(), n, max: kind.max_n() });
        }
        let ground = GroundSet::new(n).map_err(|_| SearchError::Range { n, s })?;
        let cube = Cube::new(ground);
        let within = cube.within(s);
        let base = cube.up_to(s);
        let mut tasks = Vec::new();
        for r1 in ranks(base) {
            tasks.push((r1 as u8, NO_SECOND));
            for r2 in ranks(base & after(r1) & !cube.comparable(r1)) {
                tasks.push((r1 as u8, r2 as u8));
            }
        }
        Ok(SearchPlan { kind, s, cube, within, base, tasks })
    }

    pub fn kind(&self) -> SearchKind {
        self.kind
    }

    pub fn n(&self) -> u32 {
        self.cube.ground().n()
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn task_count(&self) -> usize {
        self.tasks.len()
    }

    /// A fresh worker with its own caches.
    pub fn worker(&self) -> Worker<'_> {
        Worker { plan: self, cache: WidthCache::new(), partial: Partial::default() }
    }

    /// Runs every task on one worker.
    pub fn run(&self) -> SearchResult {
        let best = AtomicU64::new(0);
        let mut w = self.worker();
        for t in 0..self.task_count() {
            w.run_task(t, &best);
        }
        self.finish([w.into_partial()])
    }

    /// Merges worker results: the maximum over all partials, and exactly the
    /// witnesses attaining it, canonicalised and sorted.
    pub fn finish<I: IntoIterator<Item = Partial>>(&self, parts: I) -> SearchResult {
        let parts: Vec<Partial> = parts.into_iter().collect();
        let max_value = parts.iter().map(|p| p.best).max().unwrap_or(0);
        let nodes_explored = parts.iter().map(|p| p.nodes).sum();
        let witnesses: BTreeSet<Witness> = parts
            .iter()
            .flat_map(|p| &p.candidates)
            .filter(|(v, _)| *v == max_value)
            .map(|&(_, raw)| self.witness(raw))
            .collect();
        SearchResult { max_value, witnesses: witnesses.into_iter().collect(), nodes_explored }
    }

    fn witness(&self, raw: Raw) -> Witness {
        let f = |m| self.cube.to_family(m);
        match raw {
            Raw::One(a) => Witness::Family(f(a)),
            Raw::Two(a, b) => Witness::Pair(FamilyPair { first: f(a), second: f(b) }.canonical()),
            Raw::Three(a, b, c) => {
                Witness::Triple(FamilyTriple { families: [f(a), f(b), f(c)] }.canonical())
            }
        }
    }
}

/// Ranks strictly greater than `r`.
#[inline]
pub(crate) fn after(r: usize) -> u64 {
    if r >= 63 {
        0
    } else {
        !0u64 << (r + 1)
    }
}

/// Runs tasks of one [`SearchPlan`] with private caches.
pub struct Worker<'p> {
    plan: &'p SearchPlan,
    cache: WidthCache,
    partial: Partial,
}

impl Worker<'_> {
    /// Runs task `task` (`0..plan.task_count()`), reading and raising the
    /// shared best-so-far value `best`.
    pub fn run_task(&mut self, task: usize, best: &AtomicU64) {
        let plan = self.plan;
        let (r1, r2) = plan.tasks[task];
        let (r1, r2) = (r1 as usize, (r2 != NO_SECOND).then_some(r2 as usize));
        let mut sink = Sink { best, partial: &mut self.partial };
        let cache = &mut self.cache;
        match plan.kind {
            SearchKind::PairAntichain { forbid_empty_singleton } => {
                let mut v = PairVisitor::new(plan, cache, &mut sink, forbid_empty_singleton, false);
                run_task(&mut v, &plan.cube, plan.base, r1, r2);
            }
            SearchKind::CoUnionPair => {
                let mut v = PairVisitor::new(plan, cache, &mut sink, false, false);
                run_task(&mut v, &plan.cube, plan.base, r1, r2);
            }
            SearchKind::MinPair => {
                let mut v = PairVisitor::new(plan, cache, &mut sink, false, true);
                run_task(&mut v, &plan.cube, plan.base, r1, r2);
            }
            SearchKind::TripleAntichain => {
                let mut v = TripleVisitor::new(plan, cache, &mut sink);
                run_task(&mut v, &plan.cube, plan.base, r1, r2);
            }
            SearchKind::PairGeneral => {
                let mut v = GeneralPairVisitor::new(plan, &mut sink);
                run_task(&mut v, &plan.cube, plan.base, r1, r2);
            }
            SearchKind::UnionAntichain => {
                let mut v = UnionAntichainVisitor::new(plan, cache, &mut sink);
                run_task(&mut v, &plan.cube, plan.base, r1, r2);
            }
            SearchKind::UnionFamily => {
                let mut v = UnionFamilyVisitor::new(plan, &mut sink);
                run_task(&mut v, &plan.cube, plan.base, r1, r2);
            }
        }
    }

    pub fn into_partial(self) -> Partial {
        self.partial
    }
}

/// Where visitors report values and candidate witnesses.
pub(crate) struct Sink<'a> {
    best: &'a AtomicU64,
    partial: &'a mut Partial,
}

impl Sink<'_> {
    fn node(&mut self) {
        self.partial.nodes += 1;
    }

    fn best(&self) -> u64 {
        self.best.load(Ordering::Relaxed)
    }

    /// Registers a configuration of value `value`; returns whether its
    /// witnesses should be pushed (it is not beaten by anything seen so far).
    fn offer(&mut self, value: u64) -> bool {
        let global = self.best.fetch_max(value, Ordering::Relaxed).max(value);
        if value < global {
            return false;
        }
        if value > self.partial.best {
            self.partial.best = value;
            self.partial.candidates.retain(|&(v, _)| v >= value);
        }
        true
    }

    fn push(&mut self, value: u64, raw: Raw) {
        self.partial.candidates.push((value, raw));
    }
}

pub fn search_max_pair_antichain(
    n: u32,
    s: u32,
    forbid_empty_singleton: bool,
) -> Result<SearchResult, SearchError> {
    Ok(SearchPlan::new(SearchKind::PairAntichain { forbid_empty_singleton }, n, s)?.run())
}

pub fn search_max_triple_antichain(n: u32, s: u32) -> Result<SearchResult, SearchError> {
    Ok(SearchPlan::new(SearchKind::TripleAntichain, n, s)?.run())
}

pub fn search_max_pair_general(n: u32, s: u32) -> Result<SearchResult, SearchError> {
    Ok(SearchPlan::new(SearchKind::PairGeneral, n, s)?.run())
}

pub fn search_union_antichain(n: u32, s: u32) -> Result<SearchResult, SearchError> {
    Ok(SearchPlan::new(SearchKind::UnionAntichain, n, s)?.run())
}

pub fn search_union_family(n: u32, s: u32) -> Result<SearchResult, SearchError> {
    Ok(SearchPlan::new(SearchKind::UnionFamily, n, s)?.run())
}

/// The largest `min(|A|, |B|)`.
pub fn search_min_pair(n: u32, s: u32) -> Result<u64, SearchError> {
    Ok(SearchPlan::new(SearchKind::MinPair, n, s)?.run().max_value)
}

pub fn search_co_union_pair(n: u32) -> Result<SearchResult, SearchError> {
    if n < 2 {
        return Err(SearchError::Range { n, s: n.saturating_sub(1) });
    }
    Ok(SearchPlan::new(SearchKind::CoUnionPair, n, n - 1)?.run())
}
