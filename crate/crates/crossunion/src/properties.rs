//! Operator property checks: exhaustive over small ground sets and seeded
//! random over larger ones.
//!
//! Each check takes one input and returns `Err(description)` on the first
//! violated property. The suites count cases and failures per property.

use crossunion_core::transforms::{
    compress_pair, is_shifted, lower_compress, make_shifted_pair, shade, shadow, upper_compress,
};
use crossunion_core::{ElementSet, FamilyPair, GroundSet, SetFamily};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default seed for the random suite.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Largest `n` covered exhaustively.
pub const EXHAUSTIVE_N: u32 = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckStats {
    pub property: &'static str,
    pub cases: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl CheckStats {
    pub fn new(property: &'static str) -> Self {
        CheckStats { property, cases: 0, failures: 0, first_failure: None }
    }

    pub fn record(&mut self, outcome: Result<(), String>) {
        self.cases += 1;
        if let Err(e) = outcome {
            self.failures += 1;
            self.first_failure.get_or_insert(e);
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

pub const LEVEL_RATIOS: &str = "level-ratios";
pub const COMPRESSION: &str = "compression-antichains";
pub const COMPRESS_PAIR: &str = "compress-pair";
pub const JOINT_SHIFT: &str = "joint-shifting";

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// For a nonempty `k`-uniform family: `|∂F|(n-k+1) >= |F|k` and
/// `|σF|(k+1) >= |F|(n-k)`, each with equality exactly for the full level.
pub fn check_level_ratios(f: &SetFamily) -> Result<(), String> {
    let k = f.uniform_size().ok_or("input is not uniform")?;
    let n = u64::from(f.n());
    let (k64, len, full) = (u64::from(k), f.len() as u64, f.is_full_level());
    if k >= 1 {
        let sh = shadow(f).map_err(|e| e.to_string())?.len() as u64;
        let (l, r) = (sh * (n - k64 + 1), len * k64);
        ensure(l >= r && (l == r) == full, || format!("shadow ratio fails on {f:?}"))?;
    }
    if k64 < n {
        let sd = shade(f).map_err(|e| e.to_string())?.len() as u64;
        let (l, r) = (sd * (k64 + 1), len * (n - k64));
        ensure(l >= r && (l == r) == full, || format!("shade ratio fails on {f:?}"))?;
    }
    Ok(())
}

/// For an antichain other than `{∅}` and `{X}`: both compressions are
/// antichains, the top drops by one and the bottom rises by one.
pub fn check_compressions(f: &SetFamily) -> Result<(), String> {
    let g = f.ground();
    if f.is_empty() || !f.is_antichain() {
        return Err(format!("input is not a nonempty antichain: {f:?}"));
    }
    if *f != SetFamily::empty_set_only(g) {
        let low = lower_compress(f).map_err(|e| e.to_string())?;
        ensure(low.is_antichain() && low.top().ok() == f.top().ok().map(|t| t - 1), || {
            format!("lower compression of {f:?} gave {low:?}")
        })?;
    }
    let whole = SetFamily::new(g, [g.full()]).map_err(|e| e.to_string())?;
    if *f != whole {
        let up = upper_compress(f).map_err(|e| e.to_string())?;
        ensure(up.is_antichain() && up.bottom().ok() == f.bottom().ok().map(|b| b + 1), || {
            format!("upper compression of {f:?} gave {up:?}")
        })?;
    }
    Ok(())
}

/// The four postconditions of the pair compression, plus strict growth on
/// every recorded step.
pub fn check_compress_pair(p: &FamilyPair, s: u32) -> Result<(), String> {
    let (out, trace) = compress_pair(p, s).map_err(|e| format!("{e} on {p:?}"))?;
    let (a, b) = (&out.first, &out.second);
    let top = |f: &SetFamily| f.top().unwrap_or(0);
    let fail = |what: &str| format!("{what}: s={s} {p:?} -> {out:?}");
    ensure(a.is_antichain() && b.is_antichain(), || fail("not antichains"))?;
    ensure(out.is_cross_s_union(s).unwrap_or(false), || fail("not cross s-union"))?;
    ensure(a.len() >= p.first.len() && b.len() >= p.second.len(), || fail("(i) sizes"))?;
    ensure(top(a) <= top(&p.first) && top(b) <= top(&p.second), || fail("(ii) tops"))?;
    ensure(top(a) + top(b) <= s, || fail("(iii) top sum"))?;
    let levels = p.first.is_full_level() && p.second.is_full_level();
    ensure(levels || out.total_len() > p.total_len(), || fail("(iv) strict growth"))?;
    ensure(!levels || out == *p, || fail("full levels changed"))?;
    for st in &trace.steps {
        let before = st.sizes_before.0 + st.sizes_before.1;
        let after = st.sizes_after.0 + st.sizes_after.1;
        ensure(
            st.sizes_after.0 >= st.sizes_before.0
                && st.sizes_after.1 >= st.sizes_before.1
                && after > before,
            || fail("trace step shrinks"),
        )?;
    }
    Ok(())
}

/// Joint shifting keeps both sizes and cross s-union, and ends shifted.
pub fn check_joint_shift(p: &FamilyPair, s: u32) -> Result<(), String> {
    let q = make_shifted_pair(p);
    let fail = |what: &str| format!("{what}: s={s} {p:?} -> {q:?}");
    ensure(q.first.len() == p.first.len() && q.second.len() == p.second.len(), || {
        fail("sizes changed")
    })?;
    let was = p.is_cross_s_union(s).map_err(|e| e.to_string())?;
    ensure(!was || q.is_cross_s_union(s).unwrap_or(false), || fail("cross s-union lost"))?;
    ensure(is_shifted(&q.first) && is_shifted(&q.second), || fail("not shifted"))?;
    Ok(())
}

fn ground(n: u32) -> GroundSet {
    GroundSet::new(n).expect("ground size within range")
}

/// A family given as a mask over raw subset bit patterns (`n <= 6`).
pub fn mask_family(n: u32, mask: u64) -> SetFamily {
    let sets = (0..1u32 << n).filter(|&b| mask & (1 << b) != 0).map(ElementSet::from_bits);
    SetFamily::new(ground(n), sets).expect("members lie in the ground set")
}

/// Every nonempty antichain of `2^[n]` (`n <= 6`), as masks over raw subset
/// bit patterns.
pub fn antichain_masks(n: u32) -> Vec<u64> {
    assert!(n <= 6);
    let size = 1usize << n;
    let comparable: Vec<u64> = (0..size)
        .map(|x| {
            (0..size)
                .filter(|&y| x & y == x || x & y == y)
                .fold(0u64, |m, y| m | 1 << y)
        })
        .collect();
    let mut out = Vec::new();
    fn go(i: usize, chosen: u64, blocked: u64, cmp: &[u64], out: &mut Vec<u64>) {
        if i == cmp.len() {
            if chosen != 0 {
                out.push(chosen);
            }
            return;
        }
        go(i + 1, chosen, blocked, cmp, out);
        if blocked & (1 << i) == 0 {
            go(i + 1, chosen | 1 << i, blocked | cmp[i], cmp, out);
        }
    }
    go(0, 0, 0, &comparable, &mut out);
    out
}

/// Every ordered nonempty cross s-union antichain pair over `[n]`, passed to
/// `f` as raw masks.
pub fn for_each_union_antichain_pair(n: u32, s: u32, mut f: impl FnMut(u64, u64)) {
    let all = antichain_masks(n);
    let size = 1u32 << n;
    let within: Vec<u64> = (0..size)
        .map(|x| (0..size).filter(|&y| (x | y).count_ones() <= s).fold(0u64, |m, y| m | 1 << y))
        .collect();
    for &b in &all {
        let allowed = (0..size)
            .filter(|&x| b & (1 << x) != 0)
            .fold(u64::MAX, |d, x| d & within[x as usize]);
        for &a in &all {
            if a & !allowed == 0 {
                f(a, b);
            }
        }
    }
}

/// Every nonempty uniform families over `[n]`.
pub fn uniform_families(n: u32, mut f: impl FnMut(SetFamily)) {
    let g = ground(n);
    for k in 0..=n {
        let level: Vec<ElementSet> = g.k_subsets(k).collect();
        for pick in 1u64..1 << level.len() {
            let sets = level.iter().enumerate().filter(|(i, _)| pick & (1 << i) != 0);
            f(SetFamily::new(g, sets.map(|(_, &x)| x)).expect("valid members"));
        }
    }
}

/// Every property over every admissible input with `n <= n_max`
/// (`n_max <= 5`). Joint shifting additionally covers all pairs of arbitrary
/// families for `n <= 3`.
pub fn exhaustive_suite(n_max: u32) -> Vec<CheckStats> {
    let n_max = n_max.min(EXHAUSTIVE_N);
    let mut ratios = CheckStats::new(LEVEL_RATIOS);
    let mut comp = CheckStats::new(COMPRESSION);
    let mut pair = CheckStats::new(COMPRESS_PAIR);
    let mut shift = CheckStats::new(JOINT_SHIFT);
    for n in 1..=n_max {
        uniform_families(n, |f| ratios.record(check_level_ratios(&f)));
        for m in antichain_masks(n) {
            comp.record(check_compressions(&mask_family(n, m)));
        }
        for s in 1..n {
            for_each_union_antichain_pair(n, s, |a, b| {
                let p = FamilyPair { first: mask_family(n, a), second: mask_family(n, b) };
                pair.record(check_compress_pair(&p, s));
                shift.record(check_joint_shift(&p, s));
            });
        }
    }
    for n in 2..=n_max.min(3) {
        let size = 1u32 << n;
        for a in 1u64..1 << size {
            for b in 1u64..1 << size {
                let p = FamilyPair { first: mask_family(n, a), second: mask_family(n, b) };
                for s in 1..n {
                    if p.is_cross_s_union(s).unwrap_or(false) {
                        shift.record(check_joint_shift(&p, s));
                    }
                }
            }
        }
    }
    vec![ratios, comp, pair, shift]
}

fn random_family(rng: &mut ChaCha8Rng, n: u32, max_len: usize) -> SetFamily {
    let len = rng.random_range(1..=max_len);
    let sets = (0..len).map(|_| ElementSet::from_bits(rng.random_range(0..1u32 << n)));
    SetFamily::new(ground(n), sets).expect("valid members")
}

fn maximal(f: &SetFamily) -> SetFamily {
    f.filter(|m| !f.iter().any(|&x| x != m && m.is_subset_of(x)))
}

pub fn random_uniform(rng: &mut ChaCha8Rng, n: u32) -> SetFamily {
    let g = ground(n);
    let k = rng.random_range(0..=n);
    let level: Vec<ElementSet> = g.k_subsets(k).collect();
    let p: f64 = rng.random_range(0.05..=1.0);
    let mut sets: Vec<ElementSet> = level.iter().copied().filter(|_| rng.random_bool(p)).collect();
    if sets.is_empty() {
        sets.push(level[rng.random_range(0..level.len())]);
    }
    SetFamily::new(g, sets).expect("valid members")
}

/// A random nonempty cross s-union antichain pair over `[n]`.
pub fn random_union_pair(rng: &mut ChaCha8Rng, n: u32, s: u32) -> FamilyPair {
    let g = ground(n);
    let b_len = rng.random_range(1..=8);
    let mut b: Vec<ElementSet> = (0..b_len)
        .map(|_| ElementSet::from_bits(rng.random_range(0..1u32 << n)))
        .filter(|x| x.len() <= s)
        .collect();
    if b.is_empty() {
        // A random s-set keeps a partner available.
        let mut x = ElementSet::EMPTY;
        while x.len() < s {
            x = x.with(rng.random_range(1..=n));
        }
        b.push(x);
    }
    let b = maximal(&SetFamily::new(g, b).expect("valid members"));
    let allowed: Vec<ElementSet> =
        g.subsets().filter(|x| b.iter().all(|y| x.union(*y).len() <= s)).collect();
    let a_len = rng.random_range(1..=12);
    let a = (0..a_len).map(|_| allowed[rng.random_range(0..allowed.len())]);
    let a = maximal(&SetFamily::new(g, a).expect("valid members"));
    if rng.random_bool(0.5) {
        FamilyPair { first: a, second: b }
    } else {
        FamilyPair { first: b, second: a }
    }
}

/// `cases` random inputs per property with `n <= n_max`, from `seed`.
pub fn random_suite(seed: u64, cases: u64, n_max: u32) -> Vec<CheckStats> {
    let n_max = n_max.clamp(2, 20);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ratios = CheckStats::new(LEVEL_RATIOS);
    let mut comp = CheckStats::new(COMPRESSION);
    let mut pair = CheckStats::new(COMPRESS_PAIR);
    let mut shift = CheckStats::new(JOINT_SHIFT);
    for _ in 0..cases {
        let n = rng.random_range(1..=n_max.min(12));
        ratios.record(check_level_ratios(&random_uniform(&mut rng, n)));

        let n = rng.random_range(1..=n_max);
        let f = maximal(&random_family(&mut rng, n, 12));
        comp.record(check_compressions(&f));

        let n = rng.random_range(2..=n_max);
        let s = rng.random_range(1..n);
        let p = random_union_pair(&mut rng, n, s);
        pair.record(check_compress_pair(&p, s));

        // Shifting does not need antichains.
        let n = rng.random_range(2..=n_max);
        let s = rng.random_range(1..n);
        let p = if rng.random_bool(0.5) {
            random_union_pair(&mut rng, n, s)
        } else {
            let a = random_family(&mut rng, n, 10);
            let b = random_family(&mut rng, n, 10);
            FamilyPair { first: a.down_closure().filter(|x| x.len() <= s), second: b }
        };
        if !p.first.is_empty() && p.is_cross_s_union(s).unwrap_or(false) {
            shift.record(check_joint_shift(&p, s));
        } else {
            let q = random_union_pair(&mut rng, n, s);
            shift.record(check_joint_shift(&q, s));
        }
    }
    vec![ratios, comp, pair, shift]
}
