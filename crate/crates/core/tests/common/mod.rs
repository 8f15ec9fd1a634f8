//! Brute-force helpers shared by the integration tests. Everything here works
//! on raw `u32` bitmasks so that it shares no code with the search kernels.
#![allow(dead_code)]

use std::collections::BTreeSet;

use crossunion_core::search::Witness;
use crossunion_core::{ElementSet, GroundSet, SetFamily};

pub fn ground(n: u32) -> GroundSet {
    GroundSet::new(n).unwrap()
}

pub fn fam(n: u32, sets: &[&[u32]]) -> SetFamily {
    SetFamily::new(ground(n), sets.iter().map(|s| ElementSet::from_elements(s.iter().copied())))
        .unwrap()
}

pub fn from_bits(n: u32, sets: &[u32]) -> SetFamily {
    SetFamily::new(ground(n), sets.iter().map(|&b| ElementSet::from_bits(b))).unwrap()
}

pub fn level(n: u32, k: u32) -> SetFamily {
    SetFamily::full_level(ground(n), k)
}

pub fn empty_only(n: u32) -> SetFamily {
    SetFamily::empty_set_only(ground(n))
}

pub fn subset(a: u32, b: u32) -> bool {
    a & !b == 0
}

pub fn comparable(a: u32, b: u32) -> bool {
    subset(a, b) || subset(b, a)
}

/// All subsets of `[n]`, smallest cardinality first.
pub fn subsets(n: u32) -> Vec<u32> {
    let mut v: Vec<u32> = (0..1u32 << n).collect();
    v.sort_by_key(|&b| (b.count_ones(), b));
    v
}

/// Every nonempty antichain of `2^[n]` whose members satisfy `keep`.
pub fn antichains_where(n: u32, keep: impl Fn(u32) -> bool) -> Vec<Vec<u32>> {
    fn go(pool: &[u32], i: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == pool.len() {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        go(pool, i + 1, cur, out);
        if cur.iter().all(|&c| !comparable(c, pool[i])) {
            cur.push(pool[i]);
            go(pool, i + 1, cur, out);
            cur.pop();
        }
    }
    let pool: Vec<u32> = subsets(n).into_iter().filter(|&b| keep(b)).collect();
    let mut out = Vec::new();
    go(&pool, 0, &mut Vec::new(), &mut out);
    out
}

pub fn antichains(n: u32) -> Vec<Vec<u32>> {
    antichains_where(n, |_| true)
}

pub fn cross_union(a: &[u32], b: &[u32], s: u32) -> bool {
    a.iter().all(|&x| b.iter().all(|&y| (x | y).count_ones() <= s))
}

/// A family as its members' bitmasks in canonical order.
pub fn key(f: &SetFamily) -> Vec<u32> {
    f.iter().map(|m| m.bits()).collect()
}

pub fn sorted_key(v: &[u32]) -> Vec<u32> {
    let mut v = v.to_vec();
    v.sort_by_key(|&b| (b.count_ones(), b));
    v
}

/// Unordered collection of families, as sorted keys.
pub fn multiset(mut fams: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    fams.sort_by(|x, y| {
        let kx: Vec<_> = x.iter().map(|&b| (b.count_ones(), b)).collect();
        let ky: Vec<_> = y.iter().map(|&b| (b.count_ones(), b)).collect();
        kx.cmp(&ky)
    });
    fams
}

pub fn witness_keys(ws: &[Witness]) -> BTreeSet<Vec<Vec<u32>>> {
    ws.iter()
        .map(|w| multiset(w.families().into_iter().map(key).collect()))
        .collect()
}

/// Tiny deterministic generator for tests that do not want proptest.
pub struct XorShift(pub u64);

impl XorShift {
    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, m: u64) -> u64 {
        self.next() % m
    }
}
