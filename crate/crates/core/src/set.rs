use core::fmt;

use crate::family::FamilyError;

/// Largest supported ground set. Every oracle indexes tables by subsets of
/// the ground set, so `2^n` entries must stay small.
pub const MAX_GROUND: u8 = 20;

/// The ground set `X = {1, ..., n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundSet(u8);

impl GroundSet {
    pub fn new(n: u32) -> Result<Self, FamilyError> {
        if n == 0 || n > u32::from(MAX_GROUND) {
            return Err(FamilyError::GroundOutOfRange(n));
        }
        Ok(GroundSet(n as u8))
    }

    #[inline]
    pub fn n(self) -> u32 {
        u32::from(self.0)
    }

    /// The whole ground set `X`.
    #[inline]
    pub fn full(self) -> ElementSet {
        ElementSet((1u32 << self.0) - 1)
    }

    #[inline]
    pub fn admits(self, set: ElementSet) -> bool {
        set.0 & !self.full().0 == 0
    }

    /// All `2^n` subsets of `X`, by increasing bit value.
    pub fn subsets(self) -> impl Iterator<Item = ElementSet> {
        (0..=self.full().0).map(ElementSet)
    }

    /// All `k`-subsets of `X`, by increasing bit value.
    pub fn k_subsets(self, k: u32) -> impl Iterator<Item = ElementSet> {
        self.subsets().filter(move |s| s.len() == k)
    }
}

/// A subset of the ground set. Element `i` (1-based) lives in bit `i - 1`.
///
/// Sets order by cardinality first and numeric bit value second; this is the
/// canonical order used by every family and every witness list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElementSet(u32);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    #[inline]
    pub const fn from_bits(bits: u32) -> Self {
        ElementSet(bits)
    }

    /// Builds a set from 1-based elements.
    ///
    /// Panics if an element is 0 or above [`MAX_GROUND`]; use
    /// [`ElementSet::try_from_elements`] for untrusted input.
    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Self {
        match Self::try_from_elements(elements) {
            Ok(set) => set,
            Err(e) => panic!("invalid element set: {e}"),
        }
    }

    pub fn try_from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Result<Self, FamilyError> {
        let mut bits = 0u32;
        for e in elements {
            if e == 0 || e > u32::from(MAX_GROUND) {
                return Err(FamilyError::ElementOutOfRange { element: e, n: u32::from(MAX_GROUND) });
            }
            bits |= 1 << (e - 1);
        }
        Ok(ElementSet(bits))
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, element: u32) -> bool {
        (1..=32).contains(&element) && self.0 & (1 << (element - 1)) != 0
    }

    /// Elements in increasing order.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    /// Largest element, if any.
    pub fn max_element(self) -> Option<u32> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros())
    }

    #[inline]
    pub fn is_subset_of(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn union(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 & !other.0)
    }

    #[inline]
    pub fn with(self, element: u32) -> ElementSet {
        ElementSet(self.0 | 1 << (element - 1))
    }

    #[inline]
    pub fn without(self, element: u32) -> ElementSet {
        ElementSet(self.0 & !(1 << (element - 1)))
    }

    #[inline]
    pub fn complement(self, ground: GroundSet) -> ElementSet {
        ElementSet(ground.full().0 & !self.0)
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.len(), self.0).cmp(&(other.len(), other.0))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// Iterator over the elements of an [`ElementSet`].
#[derive(Clone, Debug)]
pub struct Elements(u32);

impl Iterator for Elements {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() + 1;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Elements {}
