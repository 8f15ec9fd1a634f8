//! The antichain enumeration shared by all searches, and one visitor per
//! search kind.

use super::{after, Raw, SearchPlan, Sink};
use crate::lattice::{bit, count, ranks, Cube, WidthCache};

/// Callbacks for a depth-first walk over antichains in rank order.
pub(super) trait Visitor {
    type State: Copy;

    /// State of the one-member antichain `{r}`; `None` kills the branch.
    fn start(&mut self, r: usize) -> Option<Self::State>;

    /// State after adding `r`; `None` kills the branch.
    fn extend(&mut self, st: Self::State, r: usize) -> Option<Self::State>;

    /// Ranks that may still join, given the state.
    fn admissible(&self, _st: Self::State) -> u64 {
        u64::MAX
    }

    /// Handles one antichain; `false` prunes all its extensions.
    fn visit(&mut self, chosen: u64, st: Self::State, cand: u64) -> bool;
}

fn dfs<V: Visitor>(v: &mut V, cube: &Cube, chosen: u64, st: V::State, cand: u64) {
    if !v.visit(chosen, st, cand) {
        return;
    }
    let mut rest = cand;
    while rest != 0 {
        let x = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if let Some(next) = v.extend(st, x) {
            let c = rest & !cube.comparable(x) & v.admissible(next);
            dfs(v, cube, chosen | bit(x), next, c);
        }
    }
}

/// One task: the node `{r1}` alone, or the whole subtree below `{r1, r2}`.
pub(super) fn run_task<V: Visitor>(
    v: &mut V,
    cube: &Cube,
    base: u64,
    r1: usize,
    r2: Option<usize>,
) {
    let Some(s1) = v.start(r1) else { return };
    let cand1 = base & after(r1) & !cube.comparable(r1) & v.admissible(s1);
    match r2 {
        None => {
            v.visit(bit(r1), s1, cand1);
        }
        Some(r2) => {
            if cand1 & bit(r2) == 0 {
                return;
            }
            let Some(s2) = v.extend(s1, r2) else { return };
            let cand2 = cand1 & after(r2) & !cube.comparable(r2) & v.admissible(s2);
            dfs(v, cube, bit(r1) | bit(r2), s2, cand2);
        }
    }
}

/// Every nonempty antichain inside `base`.
fn run_all<V: Visitor>(v: &mut V, cube: &Cube, base: u64) {
    for r in ranks(base) {
        if let Some(st) = v.start(r) {
            let cand = base & after(r) & !cube.comparable(r) & v.admissible(st);
            dfs(v, cube, bit(r), st, cand);
        }
    }
}

/// Pairs: `chosen` is `B`, the state is `D(B)`.
pub(super) struct PairVisitor<'a, 's> {
    plan: &'a SearchPlan,
    cache: &'a mut WidthCache,
    sink: &'a mut Sink<'s>,
    forbid_empty_singleton: bool,
    min_only: bool,
}

impl<'a, 's> PairVisitor<'a, 's> {
    pub(super) fn new(
        plan: &'a SearchPlan,
        cache: &'a mut WidthCache,
        sink: &'a mut Sink<'s>,
        forbid_empty_singleton: bool,
        min_only: bool,
    ) -> Self {
        PairVisitor { plan, cache, sink, forbid_empty_singleton, min_only }
    }
}

impl Visitor for PairVisitor<'_, '_> {
    type State = u64;

    fn start(&mut self, r: usize) -> Option<u64> {
        Some(self.plan.within[r]).filter(|&d| d != 0)
    }

    fn extend(&mut self, d: u64, r: usize) -> Option<u64> {
        Some(d & self.plan.within[r]).filter(|&d| d != 0)
    }

    fn visit(&mut self, b: u64, d: u64, _cand: u64) -> bool {
        let cube = &self.plan.cube;
        self.sink.node();
        let w = u64::from(self.cache.width(cube, d));
        let nb = u64::from(count(b));
        // Extensions only grow B and shrink D(B).
        if nb > w {
            return false;
        }
        let best = self.sink.best();
        if self.min_only {
            if w < best {
                return false;
            }
            self.sink.offer(nb);
            return true;
        }
        if 2 * w < best {
            return false;
        }
        let empty = bit(0);
        if self.forbid_empty_singleton && (b == empty || d == empty) {
            return d != empty;
        }
        let value = nb + w;
        if value >= best && self.sink.offer(value) {
            for a in self.cache.all_max_antichains(cube, d) {
                if self.forbid_empty_singleton && a == empty {
                    continue;
                }
                self.sink.push(value, Raw::Two(a, b));
            }
        }
        true
    }
}

/// Triples: outer walk over `C` with state `U(C) = {S : |S ∪ C| <= s ∀C}`.
pub(super) struct TripleVisitor<'a, 's> {
    plan: &'a SearchPlan,
    cache: &'a mut WidthCache,
    sink: &'a mut Sink<'s>,
}

impl<'a, 's> TripleVisitor<'a, 's> {
    pub(super) fn new(
        plan: &'a SearchPlan,
        cache: &'a mut WidthCache,
        sink: &'a mut Sink<'s>,
    ) -> Self {
        TripleVisitor { plan, cache, sink }
    }
}

impl Visitor for TripleVisitor<'_, '_> {
    type State = u64;

    fn start(&mut self, r: usize) -> Option<u64> {
        Some(self.plan.within[r]).filter(|&u| u != 0)
    }

    fn extend(&mut self, u: u64, r: usize) -> Option<u64> {
        Some(u & self.plan.within[r]).filter(|&u| u != 0)
    }

    fn visit(&mut self, c: u64, u: u64, _cand: u64) -> bool {
        let cube = &self.plan.cube;
        self.sink.node();
        // B and A both live in U, and |C| <= |B|.
        let w = u64::from(self.cache.width(cube, u));
        let nc = u64::from(count(c));
        if nc > w || 3 * w < self.sink.best() {
            return false;
        }
        let mut inner = InnerPair {
            cube,
            cache: &mut *self.cache,
            sink: &mut *self.sink,
            c,
            nc,
            u,
            links: [0; 64],
            have: 0,
        };
        run_all(&mut inner, cube, u);
        true
    }
}

/// Inner walk over `B ⊆ U` with state `V(B) = {S : S ∪ B ∈ U ∀B}`.
struct InnerPair<'a, 's> {
    cube: &'a Cube,
    cache: &'a mut WidthCache,
    sink: &'a mut Sink<'s>,
    c: u64,
    nc: u64,
    u: u64,
    links: [u64; 64],
    have: u64,
}

impl InnerPair<'_, '_> {
    fn link(&mut self, r: usize) -> u64 {
        if self.have & bit(r) == 0 {
            self.links[r] = self.cube.link_into(r, self.u);
            self.have |= bit(r);
        }
        self.links[r]
    }
}

impl Visitor for InnerPair<'_, '_> {
    type State = u64;

    fn start(&mut self, r: usize) -> Option<u64> {
        Some(self.link(r)).filter(|&v| v != 0)
    }

    fn extend(&mut self, v: u64, r: usize) -> Option<u64> {
        Some(v & self.link(r)).filter(|&v| v != 0)
    }

    fn admissible(&self, _v: u64) -> u64 {
        self.u
    }

    fn visit(&mut self, b: u64, v: u64, _cand: u64) -> bool {
        self.sink.node();
        let w = u64::from(self.cache.width(self.cube, v));
        let nb = u64::from(count(b));
        if nb > w || self.nc + 2 * w < self.sink.best() {
            return false;
        }
        if nb >= self.nc {
            let value = self.nc + nb + w;
            if value >= self.sink.best() && self.sink.offer(value) {
                for a in self.cache.all_max_antichains(self.cube, v) {
                    self.sink.push(value, Raw::Three(a, b, self.c));
                }
            }
        }
        true
    }
}

/// Pairs without the antichain condition: `chosen` is the antichain of
/// maximal elements of the down-set `B`; the state is `(D(B), B)`.
pub(super) struct GeneralPairVisitor<'a, 's> {
    plan: &'a SearchPlan,
    sink: &'a mut Sink<'s>,
}

impl<'a, 's> GeneralPairVisitor<'a, 's> {
    pub(super) fn new(plan: &'a SearchPlan, sink: &'a mut Sink<'s>) -> Self {
        GeneralPairVisitor { plan, sink }
    }
}

impl Visitor for GeneralPairVisitor<'_, '_> {
    type State = (u64, u64);

    fn start(&mut self, r: usize) -> Option<(u64, u64)> {
        let d = self.plan.within[r];
        (d != 0).then(|| (d, self.plan.cube.below(r) | bit(r)))
    }

    fn extend(&mut self, (d, down): (u64, u64), r: usize) -> Option<(u64, u64)> {
        // D is antitone in B, so the maximal elements determine D(B).
        let d = d & self.plan.within[r];
        (d != 0).then(|| (d, down | self.plan.cube.below(r) | bit(r)))
    }

    fn visit(&mut self, _m: u64, (d, down): (u64, u64), _cand: u64) -> bool {
        self.sink.node();
        let value = u64::from(count(d) + count(down));
        if self.sink.offer(value) {
            self.sink.push(value, Raw::Two(d, down));
        }
        true
    }
}

/// s-union antichains; the state is the set of ranks compatible with every
/// member.
pub(super) struct UnionAntichainVisitor<'a, 's> {
    plan: &'a SearchPlan,
    cache: &'a mut WidthCache,
    sink: &'a mut Sink<'s>,
}

impl<'a, 's> UnionAntichainVisitor<'a, 's> {
    pub(super) fn new(
        plan: &'a SearchPlan,
        cache: &'a mut WidthCache,
        sink: &'a mut Sink<'s>,
    ) -> Self {
        UnionAntichainVisitor { plan, cache, sink }
    }
}

impl Visitor for UnionAntichainVisitor<'_, '_> {
    type State = u64;

    fn start(&mut self, r: usize) -> Option<u64> {
        Some(self.plan.within[r])
    }

    fn extend(&mut self, allowed: u64, r: usize) -> Option<u64> {
        Some(allowed & self.plan.within[r])
    }

    fn admissible(&self, allowed: u64) -> u64 {
        allowed
    }

    fn visit(&mut self, f: u64, _allowed: u64, cand: u64) -> bool {
        self.sink.node();
        let nf = u64::from(count(f));
        let room = u64::from(self.cache.width(&self.plan.cube, cand));
        if nf + room < self.sink.best() {
            return false;
        }
        if self.sink.offer(nf) {
            self.sink.push(nf, Raw::One(f));
        }
        true
    }
}

/// s-union families, as down-closures of s-union antichains; the state is
/// `(compatible ranks, down-closure)`.
pub(super) struct UnionFamilyVisitor<'a, 's> {
    plan: &'a SearchPlan,
    sink: &'a mut Sink<'s>,
}

impl<'a, 's> UnionFamilyVisitor<'a, 's> {
    pub(super) fn new(plan: &'a SearchPlan, sink: &'a mut Sink<'s>) -> Self {
        UnionFamilyVisitor { plan, sink }
    }
}

impl Visitor for UnionFamilyVisitor<'_, '_> {
    type State = (u64, u64);

    fn start(&mut self, r: usize) -> Option<(u64, u64)> {
        Some((self.plan.within[r], self.plan.cube.below(r) | bit(r)))
    }

    fn extend(&mut self, (allowed, down): (u64, u64), r: usize) -> Option<(u64, u64)> {
        Some((allowed & self.plan.within[r], down | self.plan.cube.below(r) | bit(r)))
    }

    fn admissible(&self, (allowed, _): (u64, u64)) -> u64 {
        allowed
    }

    fn visit(&mut self, _m: u64, (_, down): (u64, u64), cand: u64) -> bool {
        self.sink.node();
        let reach = down | self.plan.cube.down_closure(cand);
        if u64::from(count(reach)) < self.sink.best() {
            return false;
        }
        let value = u64::from(count(down));
        if self.sink.offer(value) {
            self.sink.push(value, Raw::One(down));
        }
        true
    }
}
