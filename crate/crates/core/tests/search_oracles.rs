//! The search kernels against plain exhaustive enumeration.

mod common;

use std::collections::BTreeSet;

use common::*;
use crossunion_core::search::{
    search_union_family, search_max_pair_antichain, search_max_pair_general,
    search_max_triple_antichain, search_union_antichain, search_min_pair, search_co_union_pair, SearchError,
};
use crossunion_core::{max_antichain_in_downset, ElementSet, FamilyPair, SetFamily};

type Best = (u64, BTreeSet<Vec<Vec<u32>>>);

fn offer(best: &mut Best, value: u64, fams: Vec<Vec<u32>>) {
    if value > best.0 {
        *best = (value, BTreeSet::new());
    }
    if value == best.0 {
        best.1.insert(multiset(fams.into_iter().map(|f| sorted_key(&f)).collect()));
    }
}

fn brute_pairs(n: u32, s: u32, forbid_empty: bool) -> Best {
    let all = antichains(n);
    let mut best = (0, BTreeSet::new());
    for (i, a) in all.iter().enumerate() {
        for b in &all[i..] {
            if forbid_empty && (a == &[0] || b == &[0]) {
                continue;
            }
            if cross_union(a, b, s) {
                offer(&mut best, (a.len() + b.len()) as u64, vec![a.clone(), b.clone()]);
            }
        }
    }
    best
}

#[test]
fn antichain_pairs_match_enumeration() {
    for n in 2..=4 {
        for s in 1..n {
            for forbid in [false, true] {
                let got = search_max_pair_antichain(n, s, forbid).unwrap();
                let (max, ws) = brute_pairs(n, s, forbid);
                assert_eq!(got.max_value, max, "n={n} s={s} forbid={forbid}");
                assert_eq!(witness_keys(&got.witnesses), ws, "n={n} s={s} forbid={forbid}");
            }
        }
    }
}

#[test]
fn antichain_triples_match_enumeration() {
    for n in 2..=4 {
        for s in 1..n {
            let all = antichains(n);
            let mut best = (0, BTreeSet::new());
            for (i, c) in all.iter().enumerate() {
                for (j, b) in all.iter().enumerate().skip(i) {
                    if !cross_union(b, c, s) {
                        continue;
                    }
                    for a in &all[j..] {
                        let ok = a.iter().all(|&x| {
                            b.iter().all(|&y| c.iter().all(|&z| (x | y | z).count_ones() <= s))
                        });
                        if ok {
                            let v = (a.len() + b.len() + c.len()) as u64;
                            offer(&mut best, v, vec![a.clone(), b.clone(), c.clone()]);
                        }
                    }
                }
            }
            let got = search_max_triple_antichain(n, s).unwrap();
            assert_eq!(got.max_value, best.0, "n={n} s={s}");
            assert_eq!(witness_keys(&got.witnesses), best.1, "n={n} s={s}");
        }
    }
}

#[test]
fn general_pairs_match_enumeration() {
    for n in 2..=3u32 {
        let size = 1u32 << n;
        let fams: Vec<Vec<u32>> = (1u32..1 << size)
            .map(|m| (0..size).filter(|b| m & (1 << b) != 0).collect())
            .collect();
        for s in 1..n {
            let mut best = (0, BTreeSet::new());
            for (i, a) in fams.iter().enumerate() {
                for b in &fams[i..] {
                    if cross_union(a, b, s) {
                        offer(&mut best, (a.len() + b.len()) as u64, vec![a.clone(), b.clone()]);
                    }
                }
            }
            let got = search_max_pair_general(n, s).unwrap();
            assert_eq!(got.max_value, best.0, "n={n} s={s}");
            assert_eq!(witness_keys(&got.witnesses), best.1, "n={n} s={s}");
        }
    }
}

#[test]
fn single_family_searches_match_enumeration() {
    for n in 2..=5 {
        let all = antichains(n);
        for s in 1..n {
            let mut best = (0, BTreeSet::new());
            for f in &all {
                if cross_union(f, f, s) {
                    offer(&mut best, f.len() as u64, vec![f.clone()]);
                }
            }
            let got = search_union_antichain(n, s).unwrap();
            assert_eq!(got.max_value, best.0, "n={n} s={s}");
            assert_eq!(witness_keys(&got.witnesses), best.1, "n={n} s={s}");
        }
    }
    // s-union families with no antichain condition: every family of 2^[n].
    for n in 2..=4u32 {
        let size = 1u32 << n;
        for s in 1..n {
            let mut best = (0, BTreeSet::new());
            for m in 1u64..1 << size {
                let f: Vec<u32> = (0..size).filter(|b| m & (1 << b) != 0).collect();
                if cross_union(&f, &f, s) {
                    offer(&mut best, f.len() as u64, vec![f]);
                }
            }
            let got = search_union_family(n, s).unwrap();
            assert_eq!(got.max_value, best.0, "n={n} s={s}");
            assert_eq!(witness_keys(&got.witnesses), best.1, "n={n} s={s}");
        }
    }
}

#[test]
fn min_pair_and_top_union_match_enumeration() {
    for n in 2..=4 {
        let all = antichains(n);
        for s in 1..n {
            let mut best = 0;
            for a in &all {
                for b in &all {
                    if cross_union(a, b, s) {
                        best = best.max(a.len().min(b.len()) as u64);
                    }
                }
            }
            assert_eq!(search_min_pair(n, s).unwrap(), best, "n={n} s={s}");
        }
        let got = search_co_union_pair(n).unwrap();
        let (max, ws) = brute_pairs(n, n - 1, false);
        assert_eq!(got.max_value, max);
        assert_eq!(witness_keys(&got.witnesses), ws);
    }
}

#[test]
fn scale_and_range_are_errors() {
    assert!(matches!(search_max_pair_antichain(7, 3, false), Err(SearchError::Scale { .. })));
    assert!(matches!(search_max_pair_general(6, 3), Err(SearchError::Scale { .. })));
    assert!(matches!(search_co_union_pair(6), Err(SearchError::Scale { .. })));
    assert!(matches!(search_union_antichain(4, 4), Err(SearchError::Range { .. })));
    assert!(matches!(search_union_antichain(4, 0), Err(SearchError::Range { .. })));
    assert!(matches!(search_co_union_pair(1), Err(SearchError::Range { .. })));
}

fn random_downset(n: u32, rng: &mut XorShift) -> SetFamily {
    let tops = 1 + rng.below(4) as usize;
    let sets: Vec<ElementSet> =
        (0..tops).map(|_| ElementSet::from_bits(rng.below(1 << n) as u32)).collect();
    SetFamily::new(ground(n), sets).unwrap().down_closure()
}

#[test]
fn max_antichain_in_downset_matches_enumeration() {
    let mut rng = XorShift(0x5eed_1234_abcd_0001);
    for n in 1..=5u32 {
        let all = antichains(n);
        for _ in 0..60 {
            let d = random_downset(n, &mut rng);
            let inside: Vec<&Vec<u32>> = all
                .iter()
                .filter(|a| a.iter().all(|&m| d.contains(ElementSet::from_bits(m))))
                .collect();
            let width = inside.iter().map(|a| a.len()).max().unwrap();
            let (w, witness) = max_antichain_in_downset(&d).unwrap();
            assert_eq!(w, width);
            assert_eq!(witness.len(), w);
            assert!(witness.is_antichain());
            assert!(witness.iter().all(|&m| d.contains(m)));
            // Lowest: every maximum antichain sits above the witness.
            for a in inside.iter().filter(|a| a.len() == width) {
                for &m in a.iter() {
                    assert!(witness.iter().any(|x| subset(x.bits(), m)), "{d:?}");
                }
            }
        }
    }
}

#[test]
fn down_closure_keeps_cross_union() {
    let mut rng = XorShift(0x0dd_ba11);
    for _ in 0..2000 {
        let n = 2 + rng.below(6) as u32;
        let s = 1 + rng.below(u64::from(n - 1)) as u32;
        let pick = |rng: &mut XorShift| {
            let k = 1 + rng.below(5) as usize;
            let sets: Vec<ElementSet> =
                (0..k).map(|_| ElementSet::from_bits(rng.below(1 << n) as u32)).collect();
            SetFamily::new(ground(n), sets).unwrap()
        };
        let p = FamilyPair::new(pick(&mut rng), pick(&mut rng)).unwrap();
        if p.is_cross_s_union(s).unwrap() {
            let closed = FamilyPair::new(p.first.down_closure(), p.second.down_closure()).unwrap();
            assert!(closed.is_cross_s_union(s).unwrap());
        }
    }
}
