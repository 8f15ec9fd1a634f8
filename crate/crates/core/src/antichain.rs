//! Maximum antichains inside down-closed families of any supported size.
//!
//! The width of a finite poset is `|P| - ν`, where `ν`
//! is a maximum matching in the bipartite graph joining `x` (left) to `y`
//! (right) whenever `x ⊂ y`. The full containment relation is used, not only
//! the cover relation: chain covers may skip elements that another chain
//! uses.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use thiserror::Error;

use crate::family::SetFamily;
use crate::set::ElementSet;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DownsetError {
    #[error("family is not down-closed: {missing} is missing below {member}")]
    NotDownClosed { member: ElementSet, missing: ElementSet },
}

const FREE: usize = usize::MAX;

struct Graph {
    /// `up[x]` = indices of proper supersets of member `x`.
    up: Vec<Vec<usize>>,
    /// `down[y]` = indices of proper subsets of member `y`.
    down: Vec<Vec<usize>>,
}

impl Graph {
    fn new(members: &[ElementSet], index: &HashMap<u32, usize>) -> Graph {
        let mut up = vec![Vec::new(); members.len()];
        let mut down = vec![Vec::new(); members.len()];
        for (y, &m) in members.iter().enumerate() {
            // Every proper subset of a member is a member.
            let bits = m.bits();
            let mut sub = bits;
            while sub != 0 {
                sub = (sub - 1) & bits;
                let x = index[&sub];
                up[x].push(y);
                down[y].push(x);
            }
        }
        Graph { up, down }
    }

    /// Hopcroft–Karp; returns `match_l[x]` = right partner of `x`.
    fn max_matching(&self) -> (Vec<usize>, Vec<usize>, usize) {
        let n = self.up.len();
        let mut match_l = vec![FREE; n];
        let mut match_r = vec![FREE; n];
        let mut dist = vec![0u32; n];
        let mut size = 0;
        loop {
            // Layer the free left vertices.
            let mut queue = VecDeque::new();
            for x in 0..n {
                if match_l[x] == FREE {
                    dist[x] = 0;
                    queue.push_back(x);
                } else {
                    dist[x] = u32::MAX;
                }
            }
            let mut found = false;
            while let Some(x) = queue.pop_front() {
                for &y in &self.up[x] {
                    let w = match_r[y];
                    if w == FREE {
                        found = true;
                    } else if dist[w] == u32::MAX {
                        dist[w] = dist[x] + 1;
                        queue.push_back(w);
                    }
                }
            }
            if !found {
                return (match_l, match_r, size);
            }
            let mut cursor = vec![0usize; n];
            for x in 0..n {
                if match_l[x] == FREE
                    && self.augment(x, &mut match_l, &mut match_r, &mut dist, &mut cursor)
                {
                    size += 1;
                }
            }
        }
    }

    fn augment(
        &self,
        root: usize,
        match_l: &mut [usize],
        match_r: &mut [usize],
        dist: &mut [u32],
        cursor: &mut [usize],
    ) -> bool {
        // Iterative DFS along the layered graph.
        let mut stack = vec![root];
        while let Some(&x) = stack.last() {
            if cursor[x] == self.up[x].len() {
                dist[x] = u32::MAX;
                stack.pop();
                continue;
            }
            let y = self.up[x][cursor[x]];
            let w = match_r[y];
            if w == FREE {
                // Flip the path recorded on the stack.
                for &u in stack.iter().rev() {
                    let v = self.up[u][cursor[u]];
                    match_l[u] = v;
                    match_r[v] = u;
                }
                return true;
            }
            if dist[w] == dist[x] + 1 {
                stack.push(w);
            } else {
                cursor[x] += 1;
            }
        }
        false
    }
}

/// Size and one witness of a maximum antichain inside the down-closed family
/// `allowed`.
///
/// The witness is the lowest maximum antichain: every maximum antichain lies
/// in its up-closure. For example all of `2^[3]` gives the singletons, not
/// the pairs.
pub fn max_antichain_in_downset(allowed: &SetFamily) -> Result<(usize, SetFamily), DownsetError> {
    let members = allowed.members();
    let index: HashMap<u32, usize> =
        members.iter().enumerate().map(|(i, m)| (m.bits(), i)).collect();
    for &m in members {
        for e in m.elements() {
            let missing = m.without(e);
            if !index.contains_key(&missing.bits()) {
                return Err(DownsetError::NotDownClosed { member: m, missing });
            }
        }
    }
    if members.is_empty() {
        return Ok((0, allowed.clone()));
    }
    let graph = Graph::new(members, &index);
    let (match_l, match_r, size) = graph.max_matching();

    // Alternate from unmatched right copies: right -> left along
    // non-matching edges, left -> right along the matching.
    let n = members.len();
    let mut reach_r = vec![false; n];
    let mut reach_l = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&y| match_r[y] == FREE).collect();
    for &y in &queue {
        reach_r[y] = true;
    }
    while let Some(y) = queue.pop_front() {
        for &x in &graph.down[y] {
            if reach_l[x] || match_l[x] == y {
                continue;
            }
            reach_l[x] = true;
            let w = match_l[x];
            if w != FREE && !reach_r[w] {
                reach_r[w] = true;
                queue.push_back(w);
            }
        }
    }
    let witness: Vec<ElementSet> =
        (0..n).filter(|&i| reach_r[i] && !reach_l[i]).map(|i| members[i]).collect();
    debug_assert_eq!(witness.len(), n - size);
    Ok((n - size, SetFamily::from_unsorted(allowed.ground(), witness)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::GroundSet;

    fn g(n: u32) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    #[test]
    fn examples() {
        let (w, a) = max_antichain_in_downset(&SetFamily::up_to_level(g(4), 2)).unwrap();
        assert_eq!(w, 6);
        assert_eq!(a, SetFamily::full_level(g(4), 2));

        let (w, a) = max_antichain_in_downset(&SetFamily::empty_set_only(g(4))).unwrap();
        assert_eq!(w, 1);
        assert_eq!(a, SetFamily::empty_set_only(g(4)));

        let (w, a) = max_antichain_in_downset(&SetFamily::power_set(g(3))).unwrap();
        assert_eq!(w, 3);
        assert_eq!(a, SetFamily::full_level(g(3), 1));

        let (w, _) = max_antichain_in_downset(&SetFamily::empty(g(3))).unwrap();
        assert_eq!(w, 0);
    }

    #[test]
    fn middle_level_on_whole_cubes() {
        for n in 1..=12u32 {
            let (w, a) = max_antichain_in_downset(&SetFamily::power_set(g(n))).unwrap();
            assert_eq!(w, a.len());
            assert_eq!(a, SetFamily::full_level(g(n), n / 2));
        }
    }

    #[test]
    fn skipping_chains_are_needed() {
        // down({123, 4}) over [4]: the singletons beat every level of 123.
        let f = SetFamily::new(
            g(4),
            [ElementSet::from_elements([1, 2, 3]), ElementSet::from_elements([4])],
        )
        .unwrap()
        .down_closure();
        let (w, a) = max_antichain_in_downset(&f).unwrap();
        assert_eq!(w, 4);
        assert_eq!(a, SetFamily::full_level(g(4), 1));
    }

    #[test]
    fn rejects_non_downsets() {
        let f = SetFamily::new(g(3), [ElementSet::from_elements([1, 2])]).unwrap();
        assert!(matches!(
            max_antichain_in_downset(&f),
            Err(DownsetError::NotDownClosed { .. })
        ));
    }
}
