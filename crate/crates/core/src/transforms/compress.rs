use alloc::vec::Vec;

use super::{lower_compress, upper_compress, TransformError};
use crate::family::{FamilyPair, SetFamily};

/// Which family of the pair a step acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    /// `A -> A_*`.
    LowerA,
    /// `B -> B_*`.
    LowerB,
    /// `(A, B) -> (A^*, B_*)`.
    UpperA,
    /// `(A, B) -> (A_*, B^*)`.
    UpperB,
    /// `side` becomes the full level at its own top size; when
    /// `lower_other` is set the other family is lowered in the same step.
    FillToFullLevel { side: Side, lower_other: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CompressionStep {
    pub kind: StepKind,
    pub sizes_before: (usize, usize),
    pub sizes_after: (usize, usize),
    pub tops_after: (u32, u32),
}

/// Ordered log of the replacements made by [`compress_pair`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompressionTrace {
    pub steps: Vec<CompressionStep>,
}

impl CompressionTrace {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }
}

struct State {
    a: SetFamily,
    b: SetFamily,
}

impl State {
    fn get(&self, side: Side) -> &SetFamily {
        match side {
            Side::A => &self.a,
            Side::B => &self.b,
        }
    }

    fn set(&mut self, side: Side, f: SetFamily) {
        match side {
            Side::A => self.a = f,
            Side::B => self.b = f,
        }
    }

    fn sizes(&self) -> (usize, usize) {
        (self.a.len(), self.b.len())
    }

    fn tops(&self) -> (u32, u32) {
        // Both families stay nonempty throughout.
        (self.a.top().unwrap_or(0), self.b.top().unwrap_or(0))
    }
}

/// Replaces a cross s-union antichain pair `(A, B)` by `(Ã, B̃)` with
/// `|Ã| >= |A|`, `|B̃| >= |B|`, `t(Ã) <= t(A)`, `t(B̃) <= t(B)` and
/// `t(Ã) + t(B̃) <= s`, still cross s-union antichains. Unless both inputs
/// are already full levels the total size strictly increases.
///
/// Every step strictly increases `|A| + |B|`:
/// * while `t(A) + t(B) > s`, lower whichever family grows under its shadow
///   (preferring the larger top, then `B`); if neither grows at
///   `t(A) + t(B) = s + 1`, let `S` be the family with the smaller top (`A` on
///   ties) and `L` the other: `S` non-uniform gives `(S^*, L_*)`, `S` uniform
///   gives `((X choose t(S)), L_*)`;
/// * once `t(A) + t(B) <= s`, fill `S` to its full level, then fill `L` to its
///   full level if `t(L) <= (n+1)/2` or lower it otherwise, until both are
///   full levels.
pub fn compress_pair(
    pair: &FamilyPair,
    s: u32,
) -> Result<(FamilyPair, CompressionTrace), TransformError> {
    let n = pair.ground().n();
    if s == 0 || s >= n {
        return Err(TransformError::UnionBound { s, n });
    }
    for (f, name) in [(&pair.first, "first family"), (&pair.second, "second family")] {
        if f.is_empty() {
            return Err(TransformError::Empty);
        }
        if !f.is_antichain() {
            return Err(TransformError::NotAntichain(name));
        }
    }
    if !pair.is_cross_s_union(s)? {
        return Err(TransformError::NotCrossUnion(s));
    }

    let mut st = State { a: pair.first.clone(), b: pair.second.clone() };
    let mut trace = CompressionTrace::default();
    loop {
        let before = st.sizes();
        let (ta, tb) = st.tops();
        let kind = if ta + tb > s {
            step_over(&mut st, s)?
        } else {
            match step_within(&mut st, n) {
                Some(kind) => kind,
                None => break,
            }
        };
        debug_assert!(st.a.len() + st.b.len() > before.0 + before.1);
        trace.steps.push(CompressionStep {
            kind,
            sizes_before: before,
            sizes_after: st.sizes(),
            tops_after: st.tops(),
        });
    }
    Ok((FamilyPair { first: st.a, second: st.b }, trace))
}

fn lowered(f: &SetFamily) -> Option<SetFamily> {
    // A family at top 0 is {∅}; it has no lower compression.
    lower_compress(f).ok()
}

/// One step while `t(A) + t(B) >= s + 1`.
fn step_over(st: &mut State, s: u32) -> Result<StepKind, TransformError> {
    let (ta, tb) = st.tops();
    let a_low = lowered(&st.a);
    let b_low = lowered(&st.b);
    let a_grows = a_low.as_ref().is_some_and(|f| f.len() > st.a.len());
    let b_grows = b_low.as_ref().is_some_and(|f| f.len() > st.b.len());

    let pick = match (a_grows, b_grows) {
        (true, true) => Some(if ta > tb { Side::A } else { Side::B }),
        (true, false) => Some(Side::A),
        (false, true) => Some(Side::B),
        (false, false) => None,
    };
    match (pick, a_low, b_low) {
        (Some(Side::A), Some(a), _) => {
            st.a = a;
            Ok(StepKind::LowerA)
        }
        (Some(Side::B), _, Some(b)) => {
            st.b = b;
            Ok(StepKind::LowerB)
        }
        (None, Some(a), Some(b))
            if ta + tb == s + 1 && a.len() == st.a.len() && b.len() == st.b.len() =>
        {
            let small = if ta <= tb { Side::A } else { Side::B };
            let large = small.other();
            let large_low = if large == Side::A { a } else { b };
            let small_f = st.get(small);
            let (small_new, kind) = if small_f.uniform_size().is_none() {
                let kind = if small == Side::A { StepKind::UpperA } else { StepKind::UpperB };
                (upper_compress(small_f)?, kind)
            } else {
                let k = small_f.top()?;
                let full = SetFamily::full_level(small_f.ground(), k);
                (full, StepKind::FillToFullLevel { side: small, lower_other: true })
            };
            st.set(small, small_new);
            st.set(large, large_low);
            Ok(kind)
        }
        _ => Err(TransformError::NoProgress(ta, tb)),
    }
}

/// One step once `t(A) + t(B) <= s`; `None` when both are full levels.
fn step_within(st: &mut State, n: u32) -> Option<StepKind> {
    let (ta, tb) = st.tops();
    let small = if ta <= tb { Side::A } else { Side::B };
    let large = small.other();
    for side in [small, large] {
        let f = st.get(side);
        if f.is_full_level() {
            continue;
        }
        let t = f.top().ok()?;
        if side == small || 2 * t <= n + 1 {
            let full = SetFamily::full_level(f.ground(), t);
            st.set(side, full);
            return Some(StepKind::FillToFullLevel { side, lower_other: false });
        }
        let low = lowered(f)?;
        st.set(side, low);
        return Some(if side == Side::A { StepKind::LowerA } else { StepKind::LowerB });
    }
    None
}
