use alloc::vec::Vec;

use super::TransformError;
use crate::family::{FamilyPair, SetFamily};
use crate::set::{ElementSet, GroundSet};

/// Standard `S_ij` shift: each member containing `j` but not `i` has `j`
/// replaced by `i`, unless the shifted set is already a member.
pub fn shift_ij(f: &SetFamily, i: u32, j: u32) -> Result<SetFamily, TransformError> {
    check_indices(f.ground(), i, j)?;
    Ok(shift_unchecked(f, i, j).0)
}

fn check_indices(g: GroundSet, i: u32, j: u32) -> Result<(), TransformError> {
    if i == 0 || i >= j || j > g.n() {
        return Err(TransformError::BadShift { i, j });
    }
    Ok(())
}

fn shift_unchecked(f: &SetFamily, i: u32, j: u32) -> (SetFamily, bool) {
    let mut changed = false;
    let out: Vec<ElementSet> = f
        .iter()
        .map(|&m| {
            if m.contains(j) && !m.contains(i) {
                let moved = m.without(j).with(i);
                if !f.contains(moved) {
                    changed = true;
                    return moved;
                }
            }
            m
        })
        .collect();
    (SetFamily::from_unsorted(f.ground(), out), changed)
}

fn shift_pairs(n: u32) -> impl Iterator<Item = (u32, u32)> {
    (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

/// Applies `S_ij` for all `i < j` in lexicographic order until nothing moves.
pub fn make_shifted(f: &SetFamily) -> SetFamily {
    let mut cur = f.clone();
    loop {
        let mut moved = false;
        for (i, j) in shift_pairs(f.n()) {
            let (next, changed) = shift_unchecked(&cur, i, j);
            moved |= changed;
            cur = next;
        }
        if !moved {
            return cur;
        }
    }
}

/// Shifts both families with the same `(i, j)` at every step until both are
/// fixed. Sizes are kept and cross s-union is preserved.
pub fn make_shifted_pair(pair: &FamilyPair) -> FamilyPair {
    let (mut a, mut b) = (pair.first.clone(), pair.second.clone());
    loop {
        let mut moved = false;
        for (i, j) in shift_pairs(a.n()) {
            let (na, ca) = shift_unchecked(&a, i, j);
            let (nb, cb) = shift_unchecked(&b, i, j);
            moved |= ca | cb;
            a = na;
            b = nb;
        }
        if !moved {
            return FamilyPair { first: a, second: b };
        }
    }
}

/// True iff the family is closed under the shifting order: whenever `F` is
/// a member, so is every `G` of the same size with `g_i <= f_i` for all `i`.
///
/// That order is generated by the moves "swap element `e` for `e - 1` when
/// `e - 1` is absent", so checking those moves is enough.
pub fn is_shifted(f: &SetFamily) -> bool {
    f.iter().all(|&m| {
        m.elements()
            .filter(|&e| e > 1 && !m.contains(e - 1))
            .all(|e| f.contains(m.without(e).with(e - 1)))
    })
}

/// Splits `F` by the last element `n`: `(F(n̄), F(n))` where `F(n̄)` keeps the
/// members avoiding `n` and `F(n)` strips `n` from the members containing it.
/// Both come back over `[n - 1]`.
pub fn link_and_delete(f: &SetFamily) -> Result<(SetFamily, SetFamily), TransformError> {
    let n = f.n();
    if n < 2 {
        return Err(TransformError::GroundTooSmall);
    }
    let g = GroundSet::new(n - 1)?;
    let (with_n, without_n): (Vec<ElementSet>, Vec<ElementSet>) =
        f.iter().copied().partition(|m| m.contains(n));
    let link = with_n.into_iter().map(|m| m.without(n)).collect();
    Ok((SetFamily::from_unsorted(g, without_n), SetFamily::from_unsorted(g, link)))
}
