//! Equivalence classes of graphs under local complementation and relabelling.

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;

use super::{canonical_form, canonical_key, Graph};
use crate::error::{Error, Result};

pub const ORBIT_MAX_VERTICES: usize = 8;

/// One canonical graph per isomorphism class on `n` vertices, sorted by canonical key.
///
/// Built by vertex augmentation: every graph on `n` vertices is some graph on `n - 1`
/// vertices plus one vertex with an arbitrary neighbourhood.
pub fn all_graphs_up_to_isomorphism(n: usize) -> Result<Vec<Graph>> {
    if n > ORBIT_MAX_VERTICES {
        return Err(Error::Unsupported { what: "graph enumeration", n, max: ORBIT_MAX_VERTICES });
    }
    Ok(classes_with_keys(n).into_iter().map(|(_, g)| g).collect())
}

fn classes_with_keys(n: usize) -> Vec<(u128, Graph)> {
    if n == 0 {
        return vec![(0, Graph::empty(0))];
    }
    let smaller = classes_with_keys(n - 1);
    let mut found: Vec<(u128, Graph)> = smaller
        .par_iter()
        .flat_map_iter(|(_, h)| {
            (0..1u64 << (n - 1)).map(move |mask| {
                let mut adj: Vec<u64> = h.adj_bits().to_vec();
                for (v, row) in adj.iter_mut().enumerate() {
                    *row |= (mask >> v & 1) << (n - 1);
                }
                adj.push(mask);
                let cf = canonical_form(&Graph::from_adjacency_unchecked(adj)).expect("n within range");
                (cf.key, cf.graph)
            })
        })
        .collect();
    found.sort_by_key(|(k, _)| *k);
    found.dedup_by_key(|(k, _)| *k);
    found
}

struct DisjointSets(Vec<usize>);

impl DisjointSets {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// One representative per class of graphs on `n` vertices under local complementation
/// plus isomorphism, including disconnected graphs. Each representative is the class
/// member with the fewest edges (ties broken by canonical key); output sorted by key.
pub fn lc_orbit_representatives_all(n: usize) -> Result<Vec<Graph>> {
    if n > ORBIT_MAX_VERTICES {
        return Err(Error::Unsupported { what: "LC orbit enumeration", n, max: ORBIT_MAX_VERTICES });
    }
    let graphs = classes_with_keys(n);
    let index: HashMap<u128, usize> = graphs.iter().enumerate().map(|(i, (k, _))| (*k, i)).collect();
    let moves: Vec<Vec<usize>> = graphs
        .par_iter()
        .map(|(_, g)| {
            (0..n)
                .map(|v| {
                    let h = g.local_complement(v).expect("vertex in range");
                    index[&canonical_key(&h).expect("n within range")]
                })
                .collect()
        })
        .collect();
    let mut sets = DisjointSets((0..graphs.len()).collect());
    for (i, targets) in moves.iter().enumerate() {
        for &j in targets {
            sets.union(i, j);
        }
    }
    let mut best: HashMap<usize, usize> = HashMap::new();
    for i in 0..graphs.len() {
        let root = sets.find(i);
        let rank = |j: usize| (graphs[j].1.edge_count(), graphs[j].0);
        best.entry(root)
            .and_modify(|b| {
                if rank(i) < rank(*b) {
                    *b = i
                }
            })
            .or_insert(i);
    }
    let mut reps: Vec<&(u128, Graph)> = best.values().map(|&i| &graphs[i]).collect();
    reps.sort_by_key(|(k, _)| *k);
    Ok(reps.into_iter().map(|(_, g)| g.clone()).collect())
}

/// Representatives of the connected classes (1, 1, 1, 2, 4, 11, 26, 101 for n = 1..8).
pub fn lc_orbit_representatives(n: usize) -> Result<Vec<Graph>> {
    Ok(lc_orbit_representatives_all(n)?.into_iter().filter(Graph::is_connected).collect())
}

/// Canonical keys of every graph reachable from `g` by local complementations.
pub fn lc_orbit_closure(g: &Graph) -> Result<HashSet<u128>> {
    let start = canonical_form(g)?;
    let mut seen = HashSet::from([start.key]);
    let mut queue = VecDeque::from([start.graph]);
    while let Some(h) = queue.pop_front() {
        for v in 0..h.n() {
            let cf = canonical_form(&h.local_complement(v)?)?;
            if seen.insert(cf.key) {
                queue.push_back(cf.graph);
            }
        }
    }
    Ok(seen)
}
