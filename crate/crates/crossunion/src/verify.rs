//! Batch verification: each claim is recomputed by an exhaustive search or
//! an exhaustive check and compared with its closed form.
//!
//! For claims about values, `formula_value` is the closed form and
//! `oracle_value` the searched maximum. For claims about operators and
//! inequalities, `formula_value` counts the inputs checked and
//! `oracle_value` the inputs on which the claim held.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crossunion_core::bounds::{
    admissible_params, binom, check_inequality, union_family_bound, maximal_pairs, union_sum_bound,
    BoundValue, Inequality,
};
use crossunion_core::search::{SearchError, SearchKind, Witness, MAX_ANTICHAIN_N, MAX_GENERAL_N};
use crossunion_core::{FamilyPair, FamilyTriple, GroundSet, SetFamily};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::parallel;
use crate::properties::{self, antichain_masks, mask_family, CheckStats, EXHAUSTIVE_N};
use crate::table::format_pairs;

/// The verifiable claims, by their command-line ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClaimId {
    /// Pair compression to full levels (`thm1.2`).
    CompressionToLevels,
    /// Largest antichain pair sum (`cor1.3i`).
    PairAntichainBound,
    /// Pair sum with `{∅}` excluded (`cor1.3ii`).
    PairWithoutEmptyBound,
    /// Which level pairs are maximal (`prop1.4`).
    MaximalPairs,
    /// Largest antichain triple sum (`thm1.5`).
    TripleBound,
    /// Largest pair sum without the antichain condition (`thm1.6`).
    GeneralPairBound,
    /// Largest s-union antichain (`milner`).
    UnionAntichain,
    /// Largest `min(|A|, |B|)` (`frankl1.9`).
    MinPairBound,
    /// Antichain pair sum at `s = n - 1` (`wongtay`).
    CoUnionPair,
    /// Largest s-union family (`katona`).
    UnionFamily,
    /// Shadow and shade ratio inequalities (`sperner-ratios`).
    LevelRatios,
    /// The binomial inequality registry (`lemmas`).
    Inequalities,
}

impl ClaimId {
    pub const ALL: [ClaimId; 12] = [
        ClaimId::CompressionToLevels,
        ClaimId::PairAntichainBound,
        ClaimId::PairWithoutEmptyBound,
        ClaimId::MaximalPairs,
        ClaimId::TripleBound,
        ClaimId::GeneralPairBound,
        ClaimId::UnionAntichain,
        ClaimId::MinPairBound,
        ClaimId::CoUnionPair,
        ClaimId::UnionFamily,
        ClaimId::LevelRatios,
        ClaimId::Inequalities,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ClaimId::CompressionToLevels => "thm1.2",
            ClaimId::PairAntichainBound => "cor1.3i",
            ClaimId::PairWithoutEmptyBound => "cor1.3ii",
            ClaimId::MaximalPairs => "prop1.4",
            ClaimId::TripleBound => "thm1.5",
            ClaimId::GeneralPairBound => "thm1.6",
            ClaimId::UnionAntichain => "milner",
            ClaimId::MinPairBound => "frankl1.9",
            ClaimId::CoUnionPair => "wongtay",
            ClaimId::UnionFamily => "katona",
            ClaimId::LevelRatios => "sperner-ratios",
            ClaimId::Inequalities => "lemmas",
        }
    }

    /// Whether `(n, s)` lies in the claim's hypothesis. `s` is ignored by
    /// claims that only depend on `n`.
    pub fn admits(self, n: u32, s: u32) -> bool {
        let basic = (1..=20).contains(&n) && 0 < s && s < n;
        match self {
            ClaimId::PairWithoutEmptyBound | ClaimId::TripleBound => basic && n >= 2 * s,
            ClaimId::MaximalPairs => 0 < s && 2 * s <= n && n <= 40,
            ClaimId::CoUnionPair => n >= 2 && s == n - 1,
            ClaimId::LevelRatios => (1..=20).contains(&n),
            ClaimId::Inequalities => n <= 40 && s <= 20,
            _ => basic,
        }
    }

    fn hypothesis(self) -> &'static str {
        match self {
            ClaimId::PairWithoutEmptyBound | ClaimId::TripleBound => "n >= 2s >= 2",
            ClaimId::MaximalPairs => "40 >= n >= 2s >= 2",
            ClaimId::CoUnionPair => "s = n - 1",
            ClaimId::LevelRatios => "1 <= n <= 20",
            ClaimId::Inequalities => "n <= 40, s <= 20",
            _ => "0 < s < n <= 20",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ClaimId {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, VerifyError> {
        ClaimId::ALL
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or_else(|| VerifyError::UnknownId(s.to_string()))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown claim id {0:?}")]
    UnknownId(String),
    #[error("{id} is only claimed for {hypothesis}; got n={n}, s={s}")]
    Hypothesis { id: ClaimId, hypothesis: &'static str, n: u32, s: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Confirmed,
    Mismatch,
    SkippedScale,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Confirmed => "confirmed",
            Status::Mismatch => "mismatch",
            Status::SkippedScale => "skipped-scale",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub theorem_id: String,
    pub n: u32,
    pub s: u32,
    #[serde(serialize_with = "exact")]
    pub formula_value: BoundValue,
    pub oracle_value: Option<u64>,
    /// `None` when the claim characterizes no witnesses.
    pub witnesses_expected: Option<usize>,
    pub witnesses_found: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// A number when it fits in `u64`, a decimal string otherwise.
fn exact<S: serde::Serializer>(v: &BoundValue, ser: S) -> Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(x) => ser.serialize_u64(x),
        None => ser.serialize_str(&v.to_string()),
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<15} n={:<2} s={:<2} {:<13}", self.theorem_id, self.n, self.s, self.status)?;
        write!(f, " formula={}", self.formula_value)?;
        match self.oracle_value {
            Some(v) => write!(f, " oracle={v}")?,
            None => write!(f, " oracle=-")?,
        }
        match self.witnesses_expected {
            Some(e) => write!(f, " witnesses={}/{}", self.witnesses_found, e)?,
            None => write!(f, " witnesses={}", self.witnesses_found)?,
        }
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Mismatch
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub threads: usize,
    pub seed: u64,
    /// Random cases used above the exhaustive range.
    pub random_cases: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { threads: 1, seed: properties::DEFAULT_SEED, random_cases: 10_000 }
    }
}

fn ground(n: u32) -> GroundSet {
    GroundSet::new(n).expect("ground size checked")
}

fn level(n: u32, k: u32) -> SetFamily {
    SetFamily::full_level(ground(n), k)
}

fn level_pair(n: u32, i: u32, j: u32) -> Witness {
    Witness::Pair(FamilyPair { first: level(n, i), second: level(n, j) }.canonical())
}

fn level_triple(n: u32, k: [u32; 3]) -> Witness {
    Witness::Triple(FamilyTriple { families: k.map(|k| level(n, k)) }.canonical())
}

enum WitnessCheck {
    /// The claim characterizes no witnesses.
    Unchecked { found: usize },
    Sets { expected: BTreeSet<Witness>, found: Vec<Witness> },
    /// A characterization compared outside the witness type.
    Counted { expected: usize, found: usize, ok: bool },
}

struct Outcome {
    formula: BoundValue,
    oracle: u64,
    witnesses: WitnessCheck,
    /// Whether the oracle value only has to respect the formula as a bound.
    bound_only: bool,
    detail: Option<String>,
}

impl Outcome {
    fn value(formula: BoundValue, oracle: u64, found: Vec<Witness>) -> Self {
        let witnesses = WitnessCheck::Unchecked { found: found.len() };
        Outcome { formula, oracle, witnesses, bound_only: false, detail: None }
    }

    fn expecting(formula: BoundValue, oracle: u64, found: Vec<Witness>, expected: impl IntoIterator<Item = Witness>) -> Self {
        let witnesses = WitnessCheck::Sets { expected: expected.into_iter().collect(), found };
        Outcome { formula, oracle, witnesses, bound_only: false, detail: None }
    }

    fn counts(stats: &[CheckStats]) -> Self {
        let cases: u64 = stats.iter().map(|s| s.cases).sum();
        let failures: u64 = stats.iter().map(|s| s.failures).sum();
        let mut out = Outcome::value(BoundValue::from(cases), cases - failures, Vec::new());
        out.detail = stats.iter().find_map(|s| s.first_failure.clone());
        out
    }

    fn into_report(self, id: ClaimId, n: u32, s: u32) -> VerificationReport {
        let attained = self.formula == self.oracle;
        let value_ok = attained || (self.bound_only && self.formula.to_u64().is_none_or(|f| f > self.oracle));
        let (expected, found, witnesses_ok) = match &self.witnesses {
            WitnessCheck::Unchecked { found } => (None, *found, true),
            WitnessCheck::Counted { expected, found, ok } => (Some(*expected), *found, *ok),
            WitnessCheck::Sets { expected, found } => {
                let got: BTreeSet<Witness> = found.iter().cloned().collect();
                // A bound that is attained must be attained by the named
                // configurations; an exact claim names all of them.
                let ok = if self.bound_only {
                    !attained || expected.is_subset(&got)
                } else {
                    *expected == got
                };
                (Some(expected.len()), found.len(), ok)
            }
        };
        VerificationReport {
            theorem_id: id.id().to_string(),
            n,
            s,
            formula_value: self.formula,
            oracle_value: Some(self.oracle),
            witnesses_expected: expected,
            witnesses_found: found,
            status: if value_ok && witnesses_ok { Status::Confirmed } else { Status::Mismatch },
            detail: self.detail,
        }
    }
}

fn skipped(id: ClaimId, n: u32, s: u32, formula: BoundValue, why: String) -> VerificationReport {
    VerificationReport {
        theorem_id: id.id().to_string(),
        n,
        s,
        formula_value: formula,
        oracle_value: None,
        witnesses_expected: None,
        witnesses_found: 0,
        status: Status::SkippedScale,
        detail: Some(why),
    }
}

fn search(kind: SearchKind, n: u32, s: u32, opts: &VerifyOptions) -> Result<(u64, Vec<Witness>), SearchError> {
    let r = parallel::search(kind, n, s, opts.threads)?.result;
    Ok((r.max_value, r.witnesses))
}

/// Down-set pairs `{A, 2^X \ A^c}` with both sides nonempty.
fn complement_pairs(n: u32) -> BTreeSet<Witness> {
    let g = ground(n);
    let mut downsets: Vec<SetFamily> =
        antichain_masks(n).into_iter().map(|m| mask_family(n, m).down_closure()).collect();
    downsets.sort();
    downsets.dedup();
    downsets
        .iter()
        .filter_map(|a| {
            let b = SetFamily::new(g, g.subsets().filter(|x| !a.contains(x.complement(g))))
                .expect("valid members");
            (!b.is_empty()).then(|| Witness::Pair(FamilyPair { first: a.clone(), second: b }.canonical()))
        })
        .collect()
}

fn predicted_maximal_pairs(n: u32, s: u32) -> Vec<(u32, u32)> {
    match (n, s) {
        (4, 2) => vec![(1, 1)],
        (6, 3) => vec![(0, 3), (1, 2)],
        _ => vec![(0, s)],
    }
}

fn verify_search(
    id: ClaimId,
    n: u32,
    s: u32,
    opts: &VerifyOptions,
) -> Result<Outcome, (SearchError, BoundValue)> {
    let with = |formula: BoundValue, kind| {
        search(kind, n, s, opts).map_err(|e| (e, formula.clone())).map(|(v, w)| (formula, v, w))
    };
    Ok(match id {
        ClaimId::PairAntichainBound => {
            let m = maximal_pairs(n, s).expect("range checked");
            let expected: Vec<Witness> = m.pairs.iter().map(|&(i, j)| level_pair(n, i, j)).collect();
            let (f, v, w) = with(m.value, SearchKind::PairAntichain { forbid_empty_singleton: false })?;
            Outcome::expecting(f, v, w, expected)
        }
        ClaimId::PairWithoutEmptyBound => {
            let formula = binom(n, 1) + binom(n, i64::from(s) - 1);
            let (f, v, w) = with(formula, SearchKind::PairAntichain { forbid_empty_singleton: true })?;
            // At s = 1 the bound is not attained and names no configuration.
            let mut out = if s >= 2 {
                Outcome::expecting(f, v, w, [level_pair(n, 1, s - 1)])
            } else {
                Outcome::value(f, v, w)
            };
            out.bound_only = true;
            out
        }
        ClaimId::TripleBound => {
            let (formula, expected) = if (n, s) == (4, 2) {
                (BoundValue::from(9), vec![level_triple(4, [1, 1, 0])])
            } else if (n, s) == (6, 3) {
                (binom(n, s.into()) + 2, vec![level_triple(6, [3, 0, 0]), level_triple(6, [2, 1, 0])])
            } else {
                (binom(n, s.into()) + 2, vec![level_triple(n, [s, 0, 0])])
            };
            let (f, v, w) = with(formula, SearchKind::TripleAntichain)?;
            Outcome::expecting(f, v, w, expected)
        }
        ClaimId::GeneralPairBound => {
            let formula = union_sum_bound(n, s).expect("range checked");
            if n > MAX_GENERAL_N {
                return Err((
                    SearchError::Scale { kind: "general pair", n, max: MAX_GENERAL_N },
                    formula,
                ));
            }
            let (f, v, w) = with(formula, SearchKind::PairGeneral)?;
            let expected = if s + 1 < n {
                let g = ground(n);
                let only = FamilyPair {
                    first: SetFamily::empty_set_only(g),
                    second: SetFamily::up_to_level(g, s),
                };
                BTreeSet::from([Witness::Pair(only.canonical())])
            } else {
                complement_pairs(n)
            };
            Outcome::expecting(f, v, w, expected)
        }
        ClaimId::UnionAntichain => {
            let (f, v, w) = with(binom(n, (s / 2).into()), SearchKind::UnionAntichain)?;
            Outcome::value(f, v, w)
        }
        ClaimId::MinPairBound => {
            let (f, v, _) = with(binom(n, (s / 2).into()), SearchKind::MinPair)?;
            Outcome::value(f, v, Vec::new())
        }
        ClaimId::CoUnionPair => {
            let (lo, hi) = ((n - 1) / 2, n / 2);
            let formula = binom(n, lo.into()) + binom(n, hi.into());
            if n > MAX_GENERAL_N {
                let e = SearchError::Scale { kind: "(n-1)-union antichain pair", n, max: MAX_GENERAL_N };
                return Err((e, formula));
            }
            let (f, v, w) = with(formula, SearchKind::CoUnionPair)?;
            Outcome::expecting(f, v, w, [level_pair(n, lo, hi)])
        }
        ClaimId::UnionFamily => {
            let (f, v, w) = with(union_family_bound(n, s).expect("range checked"), SearchKind::UnionFamily)?;
            Outcome::value(f, v, w)
        }
        _ => unreachable!("not a search claim"),
    })
}

fn verify_maximal_pairs(n: u32, s: u32) -> Outcome {
    let m = maximal_pairs(n, s).expect("range checked");
    let predicted = predicted_maximal_pairs(n, s);
    let (i, j) = predicted[0];
    let formula = binom(n, i.into()) + binom(n, j.into());
    let oracle = m.value.to_u64().expect("table values fit in u64");
    let witnesses = WitnessCheck::Counted {
        expected: predicted.len(),
        found: m.pairs.len(),
        ok: m.pairs == predicted,
    };
    let detail = Some(format!("pairs {}", format_pairs(&m.pairs)));
    Outcome { formula, oracle, witnesses, bound_only: false, detail }
}

fn verify_compression(n: u32, s: u32, opts: &VerifyOptions) -> Outcome {
    let mut stats = CheckStats::new(properties::COMPRESS_PAIR);
    if n <= EXHAUSTIVE_N {
        properties::for_each_union_antichain_pair(n, s, |a, b| {
            let p = FamilyPair { first: mask_family(n, a), second: mask_family(n, b) };
            stats.record(properties::check_compress_pair(&p, s));
        });
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..opts.random_cases {
            let p = properties::random_union_pair(&mut rng, n, s);
            stats.record(properties::check_compress_pair(&p, s));
        }
    }
    Outcome::counts(&[stats])
}

fn verify_level_ratios(n: u32, opts: &VerifyOptions) -> Outcome {
    let mut stats = CheckStats::new(properties::LEVEL_RATIOS);
    if n <= EXHAUSTIVE_N {
        properties::uniform_families(n, |f| stats.record(properties::check_level_ratios(&f)));
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..opts.random_cases {
            let f = properties::random_uniform(&mut rng, n);
            stats.record(properties::check_level_ratios(&f));
        }
    }
    Outcome::counts(&[stats])
}

fn verify_inequalities(n: u32, s: u32) -> Outcome {
    let mut stats = CheckStats::new("inequalities");
    for ineq in Inequality::ALL {
        for p in admissible_params(ineq, n, s) {
            let outcome = match check_inequality(ineq, p) {
                Ok(c) if c.holds => Ok(()),
                Ok(c) => Err(format!("{ineq} fails at {p:?}: {} vs {}", c.lhs, c.rhs)),
                Err(e) => Err(e.to_string()),
            };
            stats.record(outcome);
        }
    }
    Outcome::counts(&[stats])
}

/// Verifies one claim at one parameter point.
pub fn cmd_verify(
    id: ClaimId,
    n: u32,
    s: u32,
    opts: &VerifyOptions,
) -> Result<VerificationReport, VerifyError> {
    if !id.admits(n, s) {
        return Err(VerifyError::Hypothesis { id, hypothesis: id.hypothesis(), n, s });
    }
    let outcome = match id {
        ClaimId::CompressionToLevels => verify_compression(n, s, opts),
        ClaimId::MaximalPairs => verify_maximal_pairs(n, s),
        ClaimId::LevelRatios => verify_level_ratios(n, opts),
        ClaimId::Inequalities => verify_inequalities(n, s),
        _ => match verify_search(id, n, s, opts) {
            Ok(o) => o,
            Err((SearchError::Scale { kind, max, .. }, formula)) => {
                let why = format!("{kind} search is capped at n <= {max}");
                return Ok(skipped(id, n, s, formula, why));
            }
            Err((e, _)) => unreachable!("parameters were admitted: {e}"),
        },
    };
    Ok(outcome.into_report(id, n, s))
}

/// Parameter points covered by `verify --all`: search-backed claims at every
/// admissible `(n, s)` with `n <= n_max`, the maximal-pair table for
/// `n <= 40`, and the inequality registry once over `n <= 40, s <= 20`.
pub fn all_points(n_max: u32) -> Vec<(ClaimId, u32, u32)> {
    let mut out = Vec::new();
    for id in ClaimId::ALL {
        match id {
            ClaimId::Inequalities => out.push((id, 40, 20)),
            ClaimId::MaximalPairs => {
                for n in 2..=40 {
                    for s in 1..=n / 2 {
                        out.push((id, n, s));
                    }
                }
            }
            ClaimId::LevelRatios => out.extend((1..=n_max).map(|n| (id, n, 0))),
            _ => {
                for n in 2..=n_max {
                    for s in 1..n {
                        if id.admits(n, s) {
                            out.push((id, n, s));
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn verify_all(n_max: u32, opts: &VerifyOptions) -> Vec<VerificationReport> {
    all_points(n_max)
        .into_iter()
        .map(|(id, n, s)| cmd_verify(id, n, s, opts).expect("points are admissible"))
        .collect()
}

/// Largest `n` at which each search-backed claim runs.
pub fn search_cap(id: ClaimId) -> Option<u32> {
    match id {
        ClaimId::GeneralPairBound | ClaimId::CoUnionPair => Some(MAX_GENERAL_N),
        ClaimId::PairAntichainBound
        | ClaimId::PairWithoutEmptyBound
        | ClaimId::TripleBound
        | ClaimId::UnionAntichain
        | ClaimId::MinPairBound
        | ClaimId::UnionFamily => Some(MAX_ANTICHAIN_N),
        _ => None,
    }
}

/// Exit code for a batch: 0 when nothing mismatched, 1 otherwise.
pub fn exit_code(reports: &[VerificationReport]) -> i32 {
    if reports.iter().all(VerificationReport::passed) {
        0
    } else {
        1
    }
}
