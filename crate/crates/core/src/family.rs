//! Canonical set families over `[n]` and the predicates everything else is
//! phrased in: antichains, s-union and cross s-union, cross t-intersecting,
//! duals, top/bottom sizes and level slices.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::set::{ElementSet, GroundSet};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("ground set size {0} outside 1..=20")]
    GroundOutOfRange(u32),
    #[error("element {element} outside the ground set [1, {n}]")]
    ElementOutOfRange { element: u32, n: u32 },
    #[error("set {set} is not a subset of [{n}]")]
    SetOutOfRange { set: ElementSet, n: u32 },
    #[error("duplicate set {0}")]
    Duplicate(ElementSet),
    #[error("parameter {name}={value} outside 0..={max}")]
    ParameterOutOfRange { name: &'static str, value: u32, max: u32 },
    #[error("operation needs a nonempty family")]
    EmptyFamily,
    #[error("families live on different ground sets ({0} vs {1})")]
    GroundMismatch(u32, u32),
}

/// A duplicate-free family of subsets of `[n]`, kept in canonical order
/// (cardinality, then bit value).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetFamily {
    ground: GroundSet,
    members: Vec<ElementSet>,
}

impl SetFamily {
    /// Builds a family, sorting into canonical order and dropping repeats.
    pub fn new<I>(ground: GroundSet, members: I) -> Result<Self, FamilyError>
    where
        I: IntoIterator<Item = ElementSet>,
    {
        let mut members: Vec<ElementSet> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&m| !ground.admits(m)) {
            return Err(FamilyError::SetOutOfRange { set: bad, n: ground.n() });
        }
        members.sort_unstable();
        members.dedup();
        Ok(SetFamily { ground, members })
    }

    /// Like [`SetFamily::new`] but rejects repeated members instead of
    /// merging them.
    pub fn new_strict<I>(ground: GroundSet, members: I) -> Result<Self, FamilyError>
    where
        I: IntoIterator<Item = ElementSet>,
    {
        let mut members: Vec<ElementSet> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&m| !ground.admits(m)) {
            return Err(FamilyError::SetOutOfRange { set: bad, n: ground.n() });
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(FamilyError::Duplicate(w[0]));
        }
        Ok(SetFamily { ground, members })
    }

    /// Caller guarantees every member is admitted by `ground`.
    pub(crate) fn from_unsorted(ground: GroundSet, mut members: Vec<ElementSet>) -> Self {
        debug_assert!(members.iter().all(|&m| ground.admits(m)));
        members.sort_unstable();
        members.dedup();
        SetFamily { ground, members }
    }

    pub fn empty(ground: GroundSet) -> Self {
        SetFamily { ground, members: Vec::new() }
    }

    /// `{∅}`.
    pub fn empty_set_only(ground: GroundSet) -> Self {
        SetFamily { ground, members: alloc::vec![ElementSet::EMPTY] }
    }

    /// The full level `(X choose k)`; empty when `k > n`.
    pub fn full_level(ground: GroundSet, k: u32) -> Self {
        Self::from_unsorted(ground, ground.k_subsets(k).collect())
    }

    /// All sets of size at most `k`.
    pub fn up_to_level(ground: GroundSet, k: u32) -> Self {
        Self::from_unsorted(ground, ground.subsets().filter(|s| s.len() <= k).collect())
    }

    pub fn power_set(ground: GroundSet) -> Self {
        Self::from_unsorted(ground, ground.subsets().collect())
    }

    #[inline]
    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.ground.n()
    }

    #[inline]
    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    pub fn iter(&self) -> core::slice::Iter<'_, ElementSet> {
        self.members.iter()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: ElementSet) -> bool {
        self.members.binary_search(&set).is_ok()
    }

    /// True iff no member is contained in a different member.
    pub fn is_antichain(&self) -> bool {
        // Canonical order puts every proper subset before its supersets.
        self.members.iter().enumerate().all(|(i, &a)| {
            self.members[i + 1..]
                .iter()
                .all(|&b| a.len() == b.len() || !a.is_subset_of(b))
        })
    }

    /// True iff `|A ∪ A'| <= s` for all members, including `A = A'`.
    pub fn is_s_union(&self, s: u32) -> Result<bool, FamilyError> {
        self.check_param("s", s)?;
        Ok(self.members.iter().enumerate().all(|(i, &a)| {
            self.members[i..].iter().all(|&b| a.union(b).len() <= s)
        }))
    }

    /// True iff every subset of a member is a member.
    pub fn is_down_closed(&self) -> bool {
        self.members.iter().all(|&m| {
            m.elements().all(|e| self.contains(m.without(e)))
        })
    }

    /// `{X \ A : A ∈ F}`.
    pub fn dual(&self) -> SetFamily {
        let g = self.ground;
        Self::from_unsorted(g, self.members.iter().map(|m| m.complement(g)).collect())
    }

    /// Largest member size `t(F)`.
    pub fn top(&self) -> Result<u32, FamilyError> {
        self.members.last().map(|m| m.len()).ok_or(FamilyError::EmptyFamily)
    }

    /// Smallest member size `b(F)`.
    pub fn bottom(&self) -> Result<u32, FamilyError> {
        self.members.first().map(|m| m.len()).ok_or(FamilyError::EmptyFamily)
    }

    /// Members of size exactly `k`.
    pub fn slice(&self, k: u32) -> SetFamily {
        SetFamily {
            ground: self.ground,
            members: self.members.iter().copied().filter(|m| m.len() == k).collect(),
        }
    }

    /// Common member size, if the family is nonempty and uniform.
    pub fn uniform_size(&self) -> Option<u32> {
        let k = self.members.first()?.len();
        (self.members.last()?.len() == k).then_some(k)
    }

    /// True iff the family is `(X choose k)` for its own member size `k`.
    pub fn is_full_level(&self) -> bool {
        match self.uniform_size() {
            Some(k) => self.len() == self.ground.k_subsets(k).count(),
            None => false,
        }
    }

    /// All subsets of members.
    pub fn down_closure(&self) -> SetFamily {
        let mut out = Vec::new();
        for &m in &self.members {
            let mut sub = m.bits();
            loop {
                out.push(ElementSet::from_bits(sub));
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & m.bits();
            }
        }
        Self::from_unsorted(self.ground, out)
    }

    /// Members that `keep` accepts.
    pub fn filter<P: FnMut(ElementSet) -> bool>(&self, mut keep: P) -> SetFamily {
        SetFamily {
            ground: self.ground,
            members: self.members.iter().copied().filter(|&m| keep(m)).collect(),
        }
    }

    fn check_param(&self, name: &'static str, value: u32) -> Result<(), FamilyError> {
        if value > self.n() {
            return Err(FamilyError::ParameterOutOfRange { name, value, max: self.n() });
        }
        Ok(())
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[n={}]", self.n())?;
        f.debug_set().entries(self.members.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a ElementSet;
    type IntoIter = core::slice::Iter<'a, ElementSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

fn shared_ground(families: &[&SetFamily]) -> Result<GroundSet, FamilyError> {
    let g = families[0].ground();
    for f in &families[1..] {
        if f.ground() != g {
            return Err(FamilyError::GroundMismatch(g.n(), f.n()));
        }
    }
    Ok(g)
}

/// Two families on a common ground set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FamilyPair {
    pub first: SetFamily,
    pub second: SetFamily,
}

impl FamilyPair {
    pub fn new(first: SetFamily, second: SetFamily) -> Result<Self, FamilyError> {
        shared_ground(&[&first, &second])?;
        Ok(FamilyPair { first, second })
    }

    pub fn ground(&self) -> GroundSet {
        self.first.ground()
    }

    /// `|A ∪ B| <= s` for every `A` in the first family and `B` in the second.
    pub fn is_cross_s_union(&self, s: u32) -> Result<bool, FamilyError> {
        self.first.check_param("s", s)?;
        Ok(self
            .first
            .iter()
            .all(|&a| self.second.iter().all(|&b| a.union(b).len() <= s)))
    }

    /// `|A ∩ B| >= t` for every cross pair.
    pub fn is_cross_t_intersecting(&self, t: u32) -> Result<bool, FamilyError> {
        self.first.check_param("t", t)?;
        Ok(self
            .first
            .iter()
            .all(|&a| self.second.iter().all(|&b| a.intersection(b).len() >= t)))
    }

    pub fn dual(&self) -> FamilyPair {
        FamilyPair { first: self.first.dual(), second: self.second.dual() }
    }

    pub fn swapped(&self) -> FamilyPair {
        FamilyPair { first: self.second.clone(), second: self.first.clone() }
    }

    /// The same unordered pair with the smaller family (canonical order)
    /// first.
    pub fn canonical(mut self) -> FamilyPair {
        if self.second < self.first {
            core::mem::swap(&mut self.first, &mut self.second);
        }
        self
    }

    pub fn total_len(&self) -> usize {
        self.first.len() + self.second.len()
    }
}

/// Three families on a common ground set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FamilyTriple {
    pub families: [SetFamily; 3],
}

impl FamilyTriple {
    pub fn new(a: SetFamily, b: SetFamily, c: SetFamily) -> Result<Self, FamilyError> {
        shared_ground(&[&a, &b, &c])?;
        Ok(FamilyTriple { families: [a, b, c] })
    }

    pub fn ground(&self) -> GroundSet {
        self.families[0].ground()
    }

    /// `|A ∪ B ∪ C| <= s` for every choice of one member from each family.
    pub fn is_cross_s_union(&self, s: u32) -> Result<bool, FamilyError> {
        self.families[0].check_param("s", s)?;
        let [a, b, c] = &self.families;
        Ok(a.iter().all(|&x| {
            b.iter().all(|&y| {
                let xy = x.union(y);
                c.iter().all(|&z| xy.union(z).len() <= s)
            })
        }))
    }

    /// The same unordered triple with families in canonical order.
    pub fn canonical(mut self) -> FamilyTriple {
        self.families.sort();
        self
    }

    pub fn total_len(&self) -> usize {
        self.families.iter().map(SetFamily::len).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: u32) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    fn fam(n: u32, sets: &[&[u32]]) -> SetFamily {
        SetFamily::new(g(n), sets.iter().map(|s| ElementSet::from_elements(s.iter().copied())))
            .unwrap()
    }

    #[test]
    fn canonical_order_and_dedup() {
        let f = fam(4, &[&[1, 2], &[3], &[], &[3]]);
        assert_eq!(f.len(), 3);
        assert_eq!(f.members()[0], ElementSet::EMPTY);
        assert_eq!(f.members()[2], ElementSet::from_elements([1, 2]));
        let strict = SetFamily::new_strict(g(4), [ElementSet::EMPTY, ElementSet::EMPTY]);
        assert_eq!(strict, Err(FamilyError::Duplicate(ElementSet::EMPTY)));
        assert!(SetFamily::new(g(2), [ElementSet::from_elements([3])]).is_err());
    }

    #[test]
    fn antichain_examples() {
        assert!(SetFamily::full_level(g(4), 2).is_antichain());
        assert!(!fam(3, &[&[1], &[1, 2]]).is_antichain());
        assert!(fam(4, &[&[1, 2], &[3], &[2, 4]]).is_antichain());
        assert!(SetFamily::empty_set_only(g(3)).is_antichain());
        assert!(!fam(3, &[&[], &[2]]).is_antichain());
    }

    #[test]
    fn s_union_examples() {
        assert_eq!(SetFamily::empty_set_only(g(3)).is_s_union(0), Ok(true));
        assert_eq!(fam(2, &[&[1], &[2]]).is_s_union(1), Ok(false));
        assert_eq!(SetFamily::up_to_level(g(4), 1).is_s_union(2), Ok(true));
        assert_eq!(fam(4, &[&[1, 2, 3]]).is_s_union(2), Ok(false));
        assert!(matches!(
            fam(3, &[&[1]]).is_s_union(4),
            Err(FamilyError::ParameterOutOfRange { name: "s", .. })
        ));
    }

    #[test]
    fn cross_union_examples() {
        for s in 0..=5 {
            let p = FamilyPair::new(
                SetFamily::empty_set_only(g(5)),
                SetFamily::full_level(g(5), s),
            )
            .unwrap();
            assert_eq!(p.is_cross_s_union(s), Ok(true));
        }
        let p = FamilyPair::new(fam(4, &[&[1, 2]]), fam(4, &[&[3, 4]])).unwrap();
        assert_eq!(p.is_cross_s_union(3), Ok(false));
        let p = FamilyPair::new(SetFamily::full_level(g(6), 1), SetFamily::full_level(g(6), 2))
            .unwrap();
        assert_eq!(p.is_cross_s_union(3), Ok(true));
        assert_eq!(p.is_cross_s_union(2), Ok(false));
        assert!(p.is_cross_s_union(7).is_err());
    }

    #[test]
    fn cross_intersecting_examples() {
        let p = FamilyPair::new(fam(3, &[&[1, 2]]), fam(3, &[&[1, 3]])).unwrap();
        assert_eq!(p.is_cross_t_intersecting(1), Ok(true));
        let p = FamilyPair::new(fam(2, &[&[1]]), fam(2, &[&[2]])).unwrap();
        assert_eq!(p.is_cross_t_intersecting(1), Ok(false));
        assert!(p.is_cross_t_intersecting(3).is_err());
    }

    #[test]
    fn triple_union() {
        let t = FamilyTriple::new(
            SetFamily::full_level(g(6), 2),
            SetFamily::full_level(g(6), 1),
            SetFamily::empty_set_only(g(6)),
        )
        .unwrap();
        assert_eq!(t.is_cross_s_union(3), Ok(true));
        assert_eq!(t.is_cross_s_union(2), Ok(false));
        let t = FamilyTriple::new(fam(4, &[&[1]]), fam(4, &[&[2]]), fam(4, &[&[3]])).unwrap();
        assert_eq!(t.is_cross_s_union(2), Ok(false));
        assert_eq!(t.is_cross_s_union(3), Ok(true));
    }

    #[test]
    fn dual_examples() {
        let d = SetFamily::empty_set_only(g(3)).dual();
        assert_eq!(d, fam(3, &[&[1, 2, 3]]));
        assert_eq!(SetFamily::full_level(g(4), 1).dual(), SetFamily::full_level(g(4), 3));
    }

    #[test]
    fn top_bottom_slice() {
        assert_eq!(SetFamily::empty_set_only(g(3)).top(), Ok(0));
        assert_eq!(fam(3, &[&[1], &[2, 3]]).bottom(), Ok(1));
        assert_eq!(SetFamily::empty(g(3)).top(), Err(FamilyError::EmptyFamily));
        assert_eq!(SetFamily::empty(g(3)).bottom(), Err(FamilyError::EmptyFamily));
        let f = fam(3, &[&[1], &[2, 3], &[1, 3]]);
        assert_eq!(f.slice(2), fam(3, &[&[2, 3], &[1, 3]]));
    }

    #[test]
    fn closure_and_levels() {
        let f = fam(3, &[&[1, 2]]);
        assert_eq!(f.down_closure(), fam(3, &[&[], &[1], &[2], &[1, 2]]));
        assert!(f.down_closure().is_down_closed());
        assert!(!f.is_down_closed());
        assert!(SetFamily::full_level(g(4), 2).is_full_level());
        assert!(!fam(4, &[&[1, 2]]).is_full_level());
        assert_eq!(SetFamily::up_to_level(g(4), 2).len(), 11);
    }

    #[test]
    fn ground_mismatch() {
        let r = FamilyPair::new(SetFamily::empty(g(3)), SetFamily::empty(g(4)));
        assert_eq!(r, Err(FamilyError::GroundMismatch(3, 4)));
    }
}
