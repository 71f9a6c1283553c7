//! Coding groups: subspaces of `GF(2)^n` whose nonzero elements are all super-graph
//! vertices.
//!
//! Each subspace is enumerated once through its reduced echelon basis: pivots are the
//! highest set bits, strictly decreasing, and every basis vector is zero at the other
//! pivots.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::{check_args, purity_set, uncoverable_set, Bits, CodingClique, ConditionChecker, SearchLimits};
use crate::error::{Error, Result};
use crate::gf2::VertexSet;
use crate::graph::Graph;

#[derive(Clone, Debug)]
pub struct GroupSearch {
    /// Sorted by member list.
    pub groups: Vec<CodingClique>,
    pub complete: bool,
}

pub fn find_coding_groups(g: &Graph, d: usize, k: usize) -> Result<Vec<CodingClique>> {
    Ok(find_coding_groups_with(g, d, k, SearchLimits::default())?.groups)
}

struct Ctx<'a> {
    allowed: &'a Bits,
    /// Candidates sorted by decreasing bitmask (so by decreasing pivot).
    candidates: &'a [u64],
    k: usize,
    deadline: Option<Instant>,
    max_results: Option<usize>,
    stop: &'a AtomicBool,
    truncated: &'a AtomicBool,
}

fn lead(v: u64) -> u32 {
    63 - v.leading_zeros()
}

impl Ctx<'_> {
    fn dfs(&self, basis: &mut Vec<u64>, span: &mut Vec<u64>, pivots: u64, from: usize, out: &mut Vec<Vec<u64>>, nodes: &mut u64) {
        if basis.len() == self.k {
            out.push(basis.clone());
            if self.max_results.is_some_and(|cap| out.len() >= cap) {
                self.truncated.store(true, Ordering::Relaxed);
                self.stop.store(true, Ordering::Relaxed);
            }
            return;
        }
        *nodes += 1;
        if *nodes % 256 == 1 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.truncated.store(true, Ordering::Relaxed);
                    self.stop.store(true, Ordering::Relaxed);
                }
            }
        }
        let last_lead = basis.last().map(|&b| lead(b));
        let need = self.k - basis.len();
        for (pos, &c) in self.candidates.iter().enumerate().skip(from) {
            if self.stop.load(Ordering::Relaxed) {
                return;
            }
            let l = lead(c);
            // remaining pivots must fit below this one
            if (l as usize) + 1 < need {
                break;
            }
            if last_lead.is_some_and(|ll| l >= ll) || c & pivots != 0 || basis.iter().any(|&b| b >> l & 1 == 1) {
                continue;
            }
            if !span.iter().all(|&s| self.allowed.contains((s ^ c) as usize)) {
                continue;
            }
            let old = span.len();
            for i in 0..old {
                let s = span[i] ^ c;
                span.push(s);
            }
            basis.push(c);
            self.dfs(basis, span, pivots | 1 << l, pos + 1, out, nodes);
            basis.pop();
            span.truncate(old);
        }
    }
}

/// Every coding group of dimension `2^k` on `(g, d)`, deduplicated by member set.
pub fn find_coding_groups_with(g: &Graph, d: usize, k: usize, limits: SearchLimits) -> Result<GroupSearch> {
    check_args(g, d)?;
    let n = g.n();
    if k > n {
        return Err(Error::Unsupported { what: "group dimension", n: k, max: n });
    }
    let purity = purity_set(g, d)?;
    let uncoverable = uncoverable_set(g, d)?;
    let mut allowed = Bits::empty(1 << n);
    let mut candidates = Vec::new();
    for c in uncoverable.members() {
        if !c.is_empty() && purity.admits(c) {
            allowed.insert(c.bits() as usize);
            candidates.push(c.bits());
        }
    }
    allowed.insert(0);
    candidates.sort_unstable_by(|a, b| b.cmp(a));

    let stop = AtomicBool::new(false);
    let truncated = AtomicBool::new(false);
    let ctx = Ctx {
        allowed: &allowed,
        candidates: &candidates,
        k,
        deadline: limits.deadline,
        max_results: limits.max_results,
        stop: &stop,
        truncated: &truncated,
    };
    let raw: Vec<Vec<u64>> = if k == 0 {
        vec![vec![]]
    } else {
        (0..candidates.len())
            .into_par_iter()
            .flat_map_iter(|first| {
                let c = candidates[first];
                let mut out = Vec::new();
                let mut nodes = 0;
                if (lead(c) as usize) + 1 >= k {
                    let mut basis = vec![c];
                    let mut span = vec![0, c];
                    ctx.dfs(&mut basis, &mut span, 1 << lead(c), first + 1, &mut out, &mut nodes);
                }
                out
            })
            .collect()
    };
    let checker = ConditionChecker::new(g, d)?;
    let mut groups = Vec::with_capacity(raw.len());
    for basis in raw {
        let gens: Vec<VertexSet> = basis.iter().map(|&b| VertexSet::raw(n, b)).collect();
        let members = crate::gf2::span(&gens, n);
        let clique = CodingClique::from_parts_unchecked(g.clone(), d, members, Some(gens));
        if let Err(fail) = checker.check(&clique.members) {
            return Err(Error::Verification(format!("group search produced an invalid group: {fail}")));
        }
        if clique.members.len() != 1 << k || !clique.is_closed() {
            return Err(Error::Verification("group search produced a non-group".into()));
        }
        groups.push(clique);
    }
    groups.sort_by(|a, b| a.members.cmp(&b.members));
    if let Some(cap) = limits.max_results {
        groups.truncate(cap);
    }
    Ok(GroupSearch { groups, complete: !truncated.load(Ordering::Relaxed) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codesearch::{build_super_graph, find_cliques, CliqueMode};
    use crate::graph::Family;

    #[test]
    fn trivial_group() {
        let g = Graph::family(Family::Loop, 5).unwrap();
        let groups = find_coding_groups(&g, 3, 0).unwrap();
        assert_eq!(groups.len(), 1);
        assert_eq!(groups[0].members, vec![VertexSet::empty(5)]);
    }

    #[test]
    fn pentagon_has_a_distance_three_group() {
        let g = Graph::family(Family::Loop, 5).unwrap();
        let groups = find_coding_groups(&g, 3, 1).unwrap();
        assert!(!groups.is_empty());
        assert!(groups.iter().any(|c| c.members.contains(&VertexSet::full(5))));
    }

    #[test]
    fn groups_are_exactly_the_closed_cliques() {
        for (g, d) in [
            (Graph::family(Family::Loop, 6).unwrap(), 2),
            (Graph::family(Family::Complete, 5).unwrap(), 2),
            (Graph::family(Family::Star, 6).unwrap(), 2),
            (Graph::family(Family::Loop, 7).unwrap(), 3),
        ] {
            let sg = build_super_graph(&g, d).unwrap();
            for k in 0..=3 {
                let ours: Vec<_> = find_coding_groups(&g, d, k).unwrap().into_iter().map(|c| c.members).collect();
                let expected: Vec<_> = find_cliques(&sg, CliqueMode::Exhaustive(1 << k))
                    .unwrap()
                    .into_iter()
                    .filter(|c| c.is_closed())
                    .map(|c| c.members)
                    .collect();
                assert_eq!(ours, expected, "{g:?} d={d} k={k}");
            }
        }
    }
}
