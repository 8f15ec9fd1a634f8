//! Exact integer arithmetic for the binomial bounds: `C(n, k)`, the level
//! gaps `C(n, r) - C(n, r - 1)`, the s-union family bound, the maximal-pair
//! table, the union-sum bound for arbitrary pairs, and a registry of the
//! auxiliary binomial inequalities.
//!
//! Nothing here uses floating point. Inequalities with fractional sides are
//! scaled to integers before comparing.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Sub};
use core::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("need 0 < s < n, got n={n}, s={s}")]
    UnionRange { n: u32, s: u32 },
    #[error("need 1 <= r <= n/2, got n={n}, r={r}")]
    GapRange { n: u32, r: u32 },
    #[error("unknown inequality id {0:?}")]
    UnknownInequality(alloc::string::String),
    #[error("{ineq} is only claimed for {hypothesis}")]
    Hypothesis { ineq: Inequality, hypothesis: &'static str },
}

/// An exact non-negative integer produced by a binomial formula.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BoundValue(BigUint);

impl BoundValue {
    pub fn zero() -> Self {
        BoundValue(BigUint::ZERO)
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        u64::try_from(&self.0).ok()
    }
}

impl From<u64> for BoundValue {
    fn from(v: u64) -> Self {
        BoundValue(BigUint::from(v))
    }
}

impl From<BigUint> for BoundValue {
    fn from(v: BigUint) -> Self {
        BoundValue(v)
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Add for BoundValue {
    type Output = BoundValue;
    fn add(self, rhs: BoundValue) -> BoundValue {
        BoundValue(self.0 + rhs.0)
    }
}

impl Add<u64> for BoundValue {
    type Output = BoundValue;
    fn add(self, rhs: u64) -> BoundValue {
        BoundValue(self.0 + rhs)
    }
}

/// Saturates at zero.
impl Sub for BoundValue {
    type Output = BoundValue;
    fn sub(self, rhs: BoundValue) -> BoundValue {
        if rhs.0 >= self.0 {
            BoundValue::zero()
        } else {
            BoundValue(self.0 - rhs.0)
        }
    }
}

impl Mul for BoundValue {
    type Output = BoundValue;
    fn mul(self, rhs: BoundValue) -> BoundValue {
        BoundValue(self.0 * rhs.0)
    }
}

impl Mul<u64> for BoundValue {
    type Output = BoundValue;
    fn mul(self, rhs: u64) -> BoundValue {
        BoundValue(self.0 * rhs)
    }
}

impl core::iter::Sum for BoundValue {
    fn sum<I: Iterator<Item = BoundValue>>(iter: I) -> Self {
        iter.fold(BoundValue::zero(), Add::add)
    }
}

impl PartialEq<u64> for BoundValue {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

/// `C(n, k)`; zero when `k < 0` or `k > n`.
pub fn binom(n: u32, k: i64) -> BoundValue {
    if k < 0 || k > i64::from(n) {
        return BoundValue::zero();
    }
    let k = (k as u32).min(n - k as u32);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    BoundValue(acc)
}

fn c(n: u32, k: u32) -> BoundValue {
    binom(n, i64::from(k))
}

fn check_union_range(n: u32, s: u32) -> Result<(), BoundsError> {
    if s == 0 || s >= n {
        return Err(BoundsError::UnionRange { n, s });
    }
    Ok(())
}

/// `C(n, r) - C(n, r - 1)` for `1 <= r <= n/2`.
pub fn level_gap(n: u32, r: u32) -> Result<BoundValue, BoundsError> {
    if r == 0 || 2 * r > n {
        return Err(BoundsError::GapRange { n, r });
    }
    Ok(c(n, r) - c(n, r - 1))
}

/// Upper bound on the size of an s-union family: `Σ_{i<=r} C(n, i)` for `s = 2r`,
/// `2 Σ_{i<=r} C(n-1, i)` for `s = 2r + 1`.
pub fn union_family_bound(n: u32, s: u32) -> Result<BoundValue, BoundsError> {
    check_union_range(n, s)?;
    let r = s / 2;
    Ok(if s.is_multiple_of(2) {
        (0..=r).map(|i| c(n, i)).sum()
    } else {
        (0..=r).map(|i| c(n - 1, i)).sum::<BoundValue>() * 2
    })
}

/// `1 + Σ_{i<=s} C(n, i)`, the largest `|A| + |B|` for nonempty cross
/// s-union families.
pub fn union_sum_bound(n: u32, s: u32) -> Result<BoundValue, BoundsError> {
    check_union_range(n, s)?;
    Ok((0..=s).map(|i| c(n, i)).sum::<BoundValue>() + 1)
}

/// The indices `i <= s/2` maximising `C(n, i) + C(n, s - i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalPairReport {
    pub n: u32,
    pub s: u32,
    /// `(i, s - i)` pairs in increasing `i`.
    pub pairs: Vec<(u32, u32)>,
    pub value: BoundValue,
}

/// Direct argmax over `0 <= i <= s/2`.
pub fn maximal_pairs(n: u32, s: u32) -> Result<MaximalPairReport, BoundsError> {
    check_union_range(n, s)?;
    let mut best = BoundValue::zero();
    let mut pairs = Vec::new();
    for i in 0..=s / 2 {
        let v = c(n, i) + c(n, s - i);
        match v.cmp(&best) {
            Ordering::Greater => {
                best = v;
                pairs.clear();
                pairs.push((i, s - i));
            }
            Ordering::Equal => pairs.push((i, s - i)),
            Ordering::Less => {}
        }
    }
    Ok(MaximalPairReport { n, s, pairs, value: best })
}

/// Auxiliary binomial inequalities, each with its own hypothesis range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Inequality {
    /// `C(n, 3) > n²/2` for `n >= 12`.
    CubeOverSquare,
    /// `C(n, 5) > n³/3` for `n >= 12`.
    FifthOverCube,
    /// `C(2s-1, 1) + C(2s-1, s-2) < C(2s-1, s-1)` for `s >= 4`.
    OddMiddle,
    /// `C(n, i) + C(n, s-i) < C(n, 1) + C(n, s-1)` for `n >= 2s`, `1 < i <= s/2`.
    InnerPairBelowNearEdge,
    /// `C(n, 1) + C(n, s-1) < C(n, 0) + C(n, s)` for `n >= 12`, `2 <= s <= n/2`.
    NearEdgeBelowEdge,
    /// `3 C(s, ⌊s/2⌋) < 2 + C(n, s)` for `n >= 2s >= 2`.
    TripleMiddle,
    /// `1 + C(s, ⌊s/2⌋) + C(n, s-1) < 2 + C(n, s)` for `n >= 2s >= 2`.
    MiddlePlusLower,
    /// `C(n, 1) + C(n, s-2) + C(n, ⌊(s-1)/2⌋) < 2 + C(n, s)` for `n >= 2s`, `s >= 3`.
    ThreeLevels,
    /// `Σ_i C(s, i) C(s, s-i) = C(2s, s)`.
    Convolution,
}

impl Inequality {
    pub const ALL: [Inequality; 9] = [
        Inequality::CubeOverSquare,
        Inequality::FifthOverCube,
        Inequality::OddMiddle,
        Inequality::InnerPairBelowNearEdge,
        Inequality::NearEdgeBelowEdge,
        Inequality::TripleMiddle,
        Inequality::MiddlePlusLower,
        Inequality::ThreeLevels,
        Inequality::Convolution,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Inequality::CubeOverSquare => "cube-over-square",
            Inequality::FifthOverCube => "fifth-over-cube",
            Inequality::OddMiddle => "odd-middle",
            Inequality::InnerPairBelowNearEdge => "inner-pair-below-near-edge",
            Inequality::NearEdgeBelowEdge => "near-edge-below-edge",
            Inequality::TripleMiddle => "triple-middle",
            Inequality::MiddlePlusLower => "middle-plus-lower",
            Inequality::ThreeLevels => "three-levels",
            Inequality::Convolution => "convolution",
        }
    }

    fn hypothesis(self) -> &'static str {
        match self {
            Inequality::CubeOverSquare | Inequality::FifthOverCube => "n >= 12",
            Inequality::OddMiddle => "s >= 4",
            Inequality::InnerPairBelowNearEdge => "n >= 2s and 1 < i <= s/2",
            Inequality::NearEdgeBelowEdge => "n >= 12 and 2 <= s <= n/2",
            Inequality::TripleMiddle | Inequality::MiddlePlusLower => "n >= 2s >= 2",
            Inequality::ThreeLevels => "n >= 2s and s >= 3",
            Inequality::Convolution => "s >= 0",
        }
    }

    /// Whether `params` satisfy this inequality's hypothesis.
    pub fn admits(self, p: InequalityParams) -> bool {
        let InequalityParams { n, s, i } = p;
        match self {
            Inequality::CubeOverSquare | Inequality::FifthOverCube => n >= 12,
            Inequality::OddMiddle => s >= 4,
            Inequality::InnerPairBelowNearEdge => n >= 2 * s && i > 1 && 2 * i <= s,
            Inequality::NearEdgeBelowEdge => n >= 12 && s >= 2 && 2 * s <= n,
            Inequality::TripleMiddle | Inequality::MiddlePlusLower => s >= 1 && n >= 2 * s,
            Inequality::ThreeLevels => s >= 3 && n >= 2 * s,
            Inequality::Convolution => true,
        }
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Inequality {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Inequality::ALL
            .into_iter()
            .find(|q| q.id() == s)
            .ok_or_else(|| BoundsError::UnknownInequality(s.into()))
    }
}

/// Parameters for [`check_inequality`]; each inequality reads the ones it
/// needs and ignores the rest.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct InequalityParams {
    pub n: u32,
    pub s: u32,
    pub i: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Less,
    Greater,
    Equal,
}

/// Exact sides of one instance. `holds` means `lhs relation rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityCheck {
    pub holds: bool,
    pub relation: Relation,
    pub lhs: BoundValue,
    pub rhs: BoundValue,
}

/// Evaluates one instance exactly. Parameters outside the hypothesis are an
/// error, not a failed check.
///
/// The two polynomial comparisons are scaled to stay integral:
/// `C(n,3) > n²/2` is evaluated as `2 C(n,3) > n²` and `C(n,5) > n³/3` as
/// `3 C(n,5) > n³`; `lhs`/`rhs` carry the scaled sides.
pub fn check_inequality(
    ineq: Inequality,
    params: InequalityParams,
) -> Result<InequalityCheck, BoundsError> {
    if !ineq.admits(params) {
        return Err(BoundsError::Hypothesis { ineq, hypothesis: ineq.hypothesis() });
    }
    let InequalityParams { n, s, i } = params;
    let big = |v: u64| BoundValue::from(v);
    let (relation, lhs, rhs) = match ineq {
        Inequality::CubeOverSquare => {
            (Relation::Greater, c(n, 3) * 2, big(u64::from(n) * u64::from(n)))
        }
        Inequality::FifthOverCube => {
            let n = u64::from(n);
            (Relation::Greater, c(n as u32, 5) * 3, big(n * n * n))
        }
        Inequality::OddMiddle => {
            let m = 2 * s - 1;
            (Relation::Less, c(m, 1) + c(m, s - 2), c(m, s - 1))
        }
        Inequality::InnerPairBelowNearEdge => {
            (Relation::Less, c(n, i) + c(n, s - i), c(n, 1) + c(n, s - 1))
        }
        Inequality::NearEdgeBelowEdge => {
            (Relation::Less, c(n, 1) + c(n, s - 1), c(n, 0) + c(n, s))
        }
        Inequality::TripleMiddle => (Relation::Less, c(s, s / 2) * 3, c(n, s) + 2),
        Inequality::MiddlePlusLower => {
            (Relation::Less, c(s, s / 2) + c(n, s - 1) + 1, c(n, s) + 2)
        }
        Inequality::ThreeLevels => (
            Relation::Less,
            c(n, 1) + c(n, s - 2) + c(n, (s - 1) / 2),
            c(n, s) + 2,
        ),
        Inequality::Convolution => (
            Relation::Equal,
            (0..=s).map(|k| c(s, k) * c(s, s - k)).sum(),
            c(2 * s, s),
        ),
    };
    let holds = match relation {
        Relation::Less => lhs < rhs,
        Relation::Greater => lhs > rhs,
        Relation::Equal => lhs == rhs,
    };
    Ok(InequalityCheck { holds, relation, lhs, rhs })
}

/// Every admissible parameter tuple for `ineq` with `n <= n_max` and
/// `s <= s_max`. Inequalities that ignore `n` get `n = 0`; those that ignore
/// `i` get `i = 0`.
pub fn admissible_params(ineq: Inequality, n_max: u32, s_max: u32) -> Vec<InequalityParams> {
    let mut out = Vec::new();
    let uses_n = !matches!(ineq, Inequality::OddMiddle | Inequality::Convolution);
    let uses_s = !matches!(ineq, Inequality::CubeOverSquare | Inequality::FifthOverCube);
    let uses_i = ineq == Inequality::InnerPairBelowNearEdge;
    let ns = if uses_n { 0..=n_max } else { 0..=0 };
    for n in ns {
        let ss = if uses_s { 0..=s_max } else { 0..=0 };
        for s in ss {
            let is = if uses_i { 0..=s } else { 0..=0 };
            for i in is {
                let p = InequalityParams { n, s, i };
                if ineq.admits(p) {
                    out.push(p);
                }
            }
        }
    }
    out
}
