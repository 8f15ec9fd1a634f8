//! Family operators: immediate shadow and shade, the lower and upper
//! compressions built on them, shifting, link/deletion, and the pair
//! compression procedure that pushes a cross s-union antichain pair down to
//! uniform levels.

use alloc::vec::Vec;

use thiserror::Error;

use crate::family::{FamilyError, FamilyPair, SetFamily};

mod compress;
mod shift;

pub use compress::{compress_pair, CompressionStep, CompressionTrace, Side, StepKind};
pub use shift::{is_shifted, link_and_delete, make_shifted, make_shifted_pair, shift_ij};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("family is not uniform")]
    NotUniform,
    #[error("family is empty")]
    Empty,
    #[error("shadow of the level-0 family is undefined")]
    ShadowOfEmptySet,
    #[error("shade of the full set is undefined")]
    ShadeOfFullSet,
    #[error("lower compression needs a family other than {{∅}}")]
    OnlyEmptySet,
    #[error("upper compression needs a family other than {{X}}")]
    OnlyFullSet,
    #[error("shift indices must satisfy 1 <= i < j <= n, got ({i}, {j})")]
    BadShift { i: u32, j: u32 },
    #[error("link/deletion needs n >= 2")]
    GroundTooSmall,
    #[error("{0} is not an antichain")]
    NotAntichain(&'static str),
    #[error("pair is not cross {0}-union")]
    NotCrossUnion(u32),
    #[error("need 0 < s < n, got s={s}, n={n}")]
    UnionBound { s: u32, n: u32 },
    #[error("top slices are not cross {0}-intersecting")]
    TopsNotIntersecting(u32),
    #[error("intersection parameter must be at least 1")]
    ZeroIntersection,
    #[error("no size-preserving compression exists at tops ({0}, {1})")]
    NoProgress(u32, u32),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Immediate shadow: all `(k-1)`-subsets of members of a `k`-uniform family.
pub fn shadow(f: &SetFamily) -> Result<SetFamily, TransformError> {
    let k = uniform(f)?;
    if k == 0 {
        return Err(TransformError::ShadowOfEmptySet);
    }
    let mut out = Vec::with_capacity(f.len() * k as usize);
    for &m in f {
        out.extend(m.elements().map(|e| m.without(e)));
    }
    Ok(SetFamily::from_unsorted(f.ground(), out))
}

/// Immediate shade: all `(k+1)`-supersets of members of a `k`-uniform family.
pub fn shade(f: &SetFamily) -> Result<SetFamily, TransformError> {
    let k = uniform(f)?;
    let g = f.ground();
    if k == g.n() {
        return Err(TransformError::ShadeOfFullSet);
    }
    let mut out = Vec::with_capacity(f.len() * (g.n() - k) as usize);
    for &m in f {
        out.extend(m.complement(g).elements().map(|e| m.with(e)));
    }
    Ok(SetFamily::from_unsorted(g, out))
}

fn uniform(f: &SetFamily) -> Result<u32, TransformError> {
    if f.is_empty() {
        return Err(TransformError::Empty);
    }
    f.uniform_size().ok_or(TransformError::NotUniform)
}

/// `F_*`: the top slice is replaced by its shadow.
pub fn lower_compress(f: &SetFamily) -> Result<SetFamily, TransformError> {
    let t = f.top().map_err(|_| TransformError::Empty)?;
    if t == 0 {
        return Err(TransformError::OnlyEmptySet);
    }
    let below = shadow(&f.slice(t))?;
    let mut out: Vec<_> = f.iter().copied().filter(|m| m.len() != t).collect();
    out.extend_from_slice(below.members());
    Ok(SetFamily::from_unsorted(f.ground(), out))
}

/// `F^*`: the bottom slice is replaced by its shade.
pub fn upper_compress(f: &SetFamily) -> Result<SetFamily, TransformError> {
    let b = f.bottom().map_err(|_| TransformError::Empty)?;
    if b == f.n() {
        return Err(TransformError::OnlyFullSet);
    }
    let above = shade(&f.slice(b))?;
    let mut out: Vec<_> = f.iter().copied().filter(|m| m.len() != b).collect();
    out.extend_from_slice(above.members());
    Ok(SetFamily::from_unsorted(f.ground(), out))
}

/// Which lower compression enlarges its family, measured directly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthOutcome {
    /// `|A_*| > |A|` (reported even if the second family also grows).
    FirstGrows,
    /// `|B_*| > |B|` and `|A_*| <= |A|`.
    SecondGrows,
    /// `r = 1` and both compressions preserve size exactly.
    BothEqualAtOne,
    /// None of the above; the expected disjunction failed on this input.
    Neither,
}

/// For antichains whose top slices are cross `r`-intersecting, measures
/// whether lowering the top slice enlarges the first family, the second, or
/// (only possible for `r = 1`) neither while keeping both sizes.
pub fn lower_compression_growth(pair: &FamilyPair, r: u32) -> Result<GrowthOutcome, TransformError> {
    if r == 0 {
        return Err(TransformError::ZeroIntersection);
    }
    let (a, b) = (&pair.first, &pair.second);
    if !a.is_antichain() {
        return Err(TransformError::NotAntichain("first family"));
    }
    if !b.is_antichain() {
        return Err(TransformError::NotAntichain("second family"));
    }
    let tops = FamilyPair::new(a.slice(a.top()?), b.slice(b.top()?))?;
    if !tops.is_cross_t_intersecting(r)? {
        return Err(TransformError::TopsNotIntersecting(r));
    }
    let a_low = lower_compress(a)?.len();
    let b_low = lower_compress(b)?.len();
    Ok(if a_low > a.len() {
        GrowthOutcome::FirstGrows
    } else if b_low > b.len() {
        GrowthOutcome::SecondGrows
    } else if r == 1 && a_low == a.len() && b_low == b.len() {
        GrowthOutcome::BothEqualAtOne
    } else {
        GrowthOutcome::Neither
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::{ElementSet, GroundSet};

    fn g(n: u32) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    fn fam(n: u32, sets: &[&[u32]]) -> SetFamily {
        SetFamily::new(g(n), sets.iter().map(|s| ElementSet::from_elements(s.iter().copied())))
            .unwrap()
    }

    #[test]
    fn shadow_examples() {
        assert_eq!(shadow(&fam(3, &[&[1, 2]])).unwrap(), fam(3, &[&[1], &[2]]));
        assert_eq!(
            shadow(&SetFamily::full_level(g(4), 2)).unwrap(),
            SetFamily::full_level(g(4), 1)
        );
        assert_eq!(
            shadow(&fam(4, &[&[1, 2], &[3, 4]])).unwrap(),
            fam(4, &[&[1], &[2], &[3], &[4]])
        );
        assert_eq!(shadow(&fam(3, &[&[1], &[1, 2]])), Err(TransformError::NotUniform));
        assert_eq!(
            shadow(&SetFamily::empty_set_only(g(3))),
            Err(TransformError::ShadowOfEmptySet)
        );
        assert_eq!(shadow(&SetFamily::empty(g(3))), Err(TransformError::Empty));
    }

    #[test]
    fn shade_examples() {
        assert_eq!(shade(&fam(3, &[&[1]])).unwrap(), fam(3, &[&[1, 2], &[1, 3]]));
        assert_eq!(
            shade(&SetFamily::empty_set_only(g(4))).unwrap(),
            SetFamily::full_level(g(4), 1)
        );
        assert_eq!(
            shade(&SetFamily::full_level(g(4), 1)).unwrap(),
            SetFamily::full_level(g(4), 2)
        );
        assert_eq!(shade(&fam(2, &[&[1, 2]])), Err(TransformError::ShadeOfFullSet));
    }

    #[test]
    fn lower_compress_examples() {
        assert_eq!(
            lower_compress(&SetFamily::full_level(g(4), 2)).unwrap(),
            SetFamily::full_level(g(4), 1)
        );
        let out = lower_compress(&fam(5, &[&[1, 2, 3], &[4, 5]])).unwrap();
        assert_eq!(out, fam(5, &[&[4, 5], &[1, 2], &[1, 3], &[2, 3]]));
        assert!(out.is_antichain());
        assert_eq!(lower_compress(&fam(3, &[&[1], &[2, 3]])).unwrap(), fam(3, &[&[1], &[2], &[3]]));
        assert_eq!(
            lower_compress(&SetFamily::empty_set_only(g(3))),
            Err(TransformError::OnlyEmptySet)
        );
        assert_eq!(lower_compress(&SetFamily::empty(g(3))), Err(TransformError::Empty));
    }

    #[test]
    fn upper_compress_examples() {
        assert_eq!(
            upper_compress(&SetFamily::empty_set_only(g(3))).unwrap(),
            SetFamily::full_level(g(3), 1)
        );
        assert_eq!(
            upper_compress(&fam(3, &[&[1], &[2, 3]])).unwrap(),
            fam(3, &[&[2, 3], &[1, 2], &[1, 3]])
        );
        assert_eq!(
            upper_compress(&SetFamily::full_level(g(4), 1)).unwrap(),
            SetFamily::full_level(g(4), 2)
        );
        assert_eq!(upper_compress(&fam(2, &[&[1, 2]])), Err(TransformError::OnlyFullSet));
    }

    #[test]
    fn growth_examples() {
        let p = FamilyPair::new(fam(4, &[&[1, 2, 3]]), fam(4, &[&[1, 2, 3]])).unwrap();
        assert_eq!(lower_compression_growth(&p, 3), Ok(GrowthOutcome::FirstGrows));
        let p = FamilyPair::new(fam(3, &[&[1, 2]]), fam(3, &[&[1, 2]])).unwrap();
        assert_eq!(lower_compression_growth(&p, 2), Ok(GrowthOutcome::FirstGrows));
        // Two full 2-levels of [4] contain disjoint sets, so they are not
        // cross 1-intersecting at all.
        let l2 = SetFamily::full_level(g(4), 2);
        let p = FamilyPair::new(l2.clone(), l2).unwrap();
        assert_eq!(lower_compression_growth(&p, 1), Err(TransformError::TopsNotIntersecting(1)));
        // {{1}} lowers to {∅}: both sizes are kept.
        let single = fam(3, &[&[1]]);
        let p = FamilyPair::new(single.clone(), single).unwrap();
        assert_eq!(lower_compression_growth(&p, 1), Ok(GrowthOutcome::BothEqualAtOne));
        let p = FamilyPair::new(fam(3, &[&[1]]), fam(3, &[&[1], &[2]])).unwrap();
        assert_eq!(lower_compression_growth(&p, 1), Err(TransformError::TopsNotIntersecting(1)));
        assert_eq!(lower_compression_growth(&p, 0), Err(TransformError::ZeroIntersection));
    }
}
