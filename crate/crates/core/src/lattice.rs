//! Bitmask kernel for the subset lattice of `[n]`, `n <= 6`.
//!
//! The `2^n` subsets are numbered by their position ("rank") in canonical
//! order, so a family is a `u64` whose bit `r` marks the `r`-th subset. All
//! poset work (containment, union bounds, maximum antichains) runs on these
//! masks.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::family::SetFamily;
use crate::set::{ElementSet, GroundSet};

pub(crate) const MAX_CUBE: u32 = 6;
const NONE: u8 = u8::MAX;

#[inline]
pub(crate) fn bit(r: usize) -> u64 {
    1u64 << r
}

#[inline]
pub(crate) fn ranks(mut mask: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let r = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(r)
    })
}

#[inline]
pub(crate) fn count(mask: u64) -> u32 {
    mask.count_ones()
}

pub(crate) struct Cube {
    ground: GroundSet,
    sets: Vec<ElementSet>,
    rank: Vec<u8>,
    below: Vec<u64>,
    above: Vec<u64>,
}

impl Cube {
    pub(crate) fn new(ground: GroundSet) -> Cube {
        assert!(ground.n() <= MAX_CUBE, "rank space holds at most 64 subsets");
        let mut sets: Vec<ElementSet> = ground.subsets().collect();
        sets.sort_unstable();
        let size = sets.len();
        let mut rank = vec![0u8; size];
        for (r, s) in sets.iter().enumerate() {
            rank[s.bits() as usize] = r as u8;
        }
        let mut below = vec![0u64; size];
        let mut above = vec![0u64; size];
        for x in 0..size {
            for y in 0..size {
                if x != y && sets[x].is_subset_of(sets[y]) {
                    below[y] |= bit(x);
                    above[x] |= bit(y);
                }
            }
        }
        Cube { ground, sets, rank, below, above }
    }

    pub(crate) fn ground(&self) -> GroundSet {
        self.ground
    }

    pub(crate) fn size(&self) -> usize {
        self.sets.len()
    }

    #[cfg(test)]
    pub(crate) fn full(&self) -> u64 {
        if self.size() == 64 {
            u64::MAX
        } else {
            bit(self.size()) - 1
        }
    }

    #[cfg(test)]
    pub(crate) fn set(&self, r: usize) -> ElementSet {
        self.sets[r]
    }

    pub(crate) fn rank_of(&self, s: ElementSet) -> usize {
        self.rank[s.bits() as usize] as usize
    }

    pub(crate) fn len(&self, r: usize) -> u32 {
        self.sets[r].len()
    }

    /// Proper subsets of subset `r`.
    pub(crate) fn below(&self, r: usize) -> u64 {
        self.below[r]
    }

    pub(crate) fn comparable(&self, r: usize) -> u64 {
        self.below[r] | self.above[r]
    }

    /// Subsets of size at most `k`.
    pub(crate) fn up_to(&self, k: u32) -> u64 {
        (0..self.size()).filter(|&r| self.len(r) <= k).fold(0, |m, r| m | bit(r))
    }

    /// `within[x]` = subsets `y` with `|x ∪ y| <= s`.
    pub(crate) fn within(&self, s: u32) -> Vec<u64> {
        (0..self.size())
            .map(|x| {
                (0..self.size())
                    .filter(|&y| self.sets[x].union(self.sets[y]).len() <= s)
                    .fold(0, |m, y| m | bit(y))
            })
            .collect()
    }

    /// `{S : S ∪ b ∈ allowed}` for subset `b`.
    pub(crate) fn link_into(&self, b: usize, allowed: u64) -> u64 {
        let bs = self.sets[b];
        (0..self.size())
            .filter(|&x| allowed & bit(self.rank_of(self.sets[x].union(bs))) != 0)
            .fold(0, |m, x| m | bit(x))
    }

    pub(crate) fn down_closure(&self, mask: u64) -> u64 {
        ranks(mask).fold(mask, |m, r| m | self.below[r])
    }

    pub(crate) fn to_family(&self, mask: u64) -> SetFamily {
        SetFamily::from_unsorted(self.ground, ranks(mask).map(|r| self.sets[r]).collect())
    }

    fn matching(&self, mask: u64) -> ([u8; 64], u32) {
        // Left copy `x` is joined to right copy `y` when `x ⊂ y`.
        let mut match_r = [NONE; 64];
        let mut size = 0;
        for u in ranks(mask) {
            let mut visited = 0u64;
            if self.augment(u, mask, &mut visited, &mut match_r) {
                size += 1;
            }
        }
        (match_r, size)
    }

    fn augment(&self, u: usize, mask: u64, visited: &mut u64, match_r: &mut [u8; 64]) -> bool {
        loop {
            let cand = self.above[u] & mask & !*visited;
            if cand == 0 {
                return false;
            }
            let v = cand.trailing_zeros() as usize;
            *visited |= bit(v);
            let owner = match_r[v];
            if owner == NONE || self.augment(owner as usize, mask, visited, match_r) {
                match_r[v] = u as u8;
                return true;
            }
        }
    }

    /// Largest antichain size inside `mask` (any subposet, not only
    /// down-sets), as `|mask|` minus a maximum matching of the strict
    /// containment relation.
    pub(crate) fn width(&self, mask: u64) -> u32 {
        count(mask) - self.matching(mask).1
    }
}

/// Per-worker memo of [`Cube::width`].
pub(crate) struct WidthCache {
    memo: HashMap<u64, u32>,
    limit: usize,
}

impl WidthCache {
    pub(crate) fn new() -> Self {
        WidthCache { memo: HashMap::new(), limit: 1 << 22 }
    }

    pub(crate) fn width(&mut self, cube: &Cube, mask: u64) -> u32 {
        if let Some(&w) = self.memo.get(&mask) {
            return w;
        }
        let w = cube.width(mask);
        if self.memo.len() >= self.limit {
            self.memo.clear();
        }
        self.memo.insert(mask, w);
        w
    }

    /// Every maximum antichain inside `mask`, in increasing mask order of
    /// discovery (include-before-exclude on the lowest rank).
    pub(crate) fn all_max_antichains(&mut self, cube: &Cube, mask: u64) -> Vec<u64> {
        let target = self.width(cube, mask);
        let mut out = Vec::new();
        self.collect(cube, 0, mask, target, &mut out);
        out
    }

    fn collect(&mut self, cube: &Cube, chosen: u64, avail: u64, target: u32, out: &mut Vec<u64>) {
        if count(chosen) + self.width(cube, avail) < target {
            return;
        }
        if avail == 0 {
            out.push(chosen);
            return;
        }
        let x = avail.trailing_zeros() as usize;
        let rest = avail & !bit(x);
        self.collect(cube, chosen | bit(x), rest & !cube.comparable(x), target, out);
        self.collect(cube, chosen, rest, target, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::vec::Vec;

    fn cube(n: u32) -> Cube {
        Cube::new(GroundSet::new(n).unwrap())
    }

    fn is_antichain(c: &Cube, m: u64) -> bool {
        ranks(m).all(|r| c.comparable(r) & m == 0)
    }

    fn brute_antichains(c: &Cube, mask: u64) -> Vec<u64> {
        let elems: Vec<usize> = ranks(mask).collect();
        let mut out = Vec::new();
        for pick in 0u32..(1 << elems.len()) {
            let m = elems
                .iter()
                .enumerate()
                .filter(|(i, _)| pick & (1 << i) != 0)
                .fold(0, |m, (_, &r)| m | bit(r));
            if is_antichain(c, m) {
                out.push(m);
            }
        }
        out
    }

    #[test]
    fn ranks_follow_canonical_order() {
        let c = cube(3);
        assert_eq!(c.size(), 8);
        assert_eq!(c.set(0), ElementSet::EMPTY);
        assert_eq!(c.set(7), ElementSet::from_elements([1, 2, 3]));
        for r in 0..8 {
            assert_eq!(c.rank_of(c.set(r)), r);
        }
        assert_eq!(c.full(), 0xff);
        assert_eq!(cube(6).full(), u64::MAX);
    }

    #[test]
    fn widths_of_levels_and_cubes() {
        for n in 1..=6u32 {
            let c = cube(n);
            let mid = [1, 2, 3, 6, 10, 20][n as usize - 1];
            assert_eq!(c.width(c.full()), mid);
        }
        let c = cube(4);
        assert_eq!(c.width(c.up_to(2)), 6);
        assert_eq!(c.width(c.up_to(1)), 4);
        assert_eq!(c.width(1), 1);
    }

    #[test]
    fn width_matches_enumeration_on_random_masks() {
        let c = cube(4);
        let mut cache = WidthCache::new();
        let mut x = 0x9e37_79b9u64;
        for _ in 0..300 {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            let mask = x & c.full() & (x >> 16);
            let all = brute_antichains(&c, mask);
            let w = all.iter().map(|&m| count(m)).max().unwrap();
            assert_eq!(c.width(mask), w);
            let mut maxes: Vec<u64> = all.into_iter().filter(|&m| count(m) == w).collect();
            maxes.sort_unstable();
            let mut found = cache.all_max_antichains(&c, mask);
            found.sort_unstable();
            assert_eq!(found, maxes);
        }
    }

    #[test]
    fn link_into_is_the_union_preimage() {
        let c = cube(4);
        let within = c.within(3);
        let b = c.rank_of(ElementSet::from_elements([1, 2]));
        let l = c.link_into(b, within[0]);
        for x in 0..c.size() {
            let ok = c.set(x).union(c.set(b)).len() <= 3;
            assert_eq!(l & bit(x) != 0, ok);
        }
    }
}
