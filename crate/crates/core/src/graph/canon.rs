//! Canonical labelling for small graphs.
//!
//! Search over vertex orderings with equitable partition refinement. The canonical
//! graph is the relabelling, among the leaves of the refinement tree, whose
//! upper-triangle bit string (read column by column) is smallest. Subtrees are pruned when their fixed prefix already
//! exceeds the best string, and among twin vertices (same neighbourhood apart from each
//! other) only one is individualized, since swapping twins is an automorphism.

use super::Graph;
use crate::error::{Error, Result};

pub const CANON_MAX_VERTICES: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub graph: Graph,
    /// `labeling[v]` is the position of input vertex `v` in the canonical graph.
    pub labeling: Vec<usize>,
    /// Upper-triangle bit string of the canonical graph; equal keys iff isomorphic (same n).
    pub key: u128,
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    let n = g.n();
    if n > CANON_MAX_VERTICES {
        return Err(Error::Unsupported { what: "canonical_form", n, max: CANON_MAX_VERTICES });
    }
    let (key, order) = search(g);
    let mut labeling = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        labeling[v] = pos;
    }
    Ok(CanonicalForm { graph: g.permute(&labeling), labeling, key })
}

pub fn canonical_key(g: &Graph) -> Result<u128> {
    if g.n() > CANON_MAX_VERTICES {
        return Err(Error::Unsupported { what: "canonical_form", n: g.n(), max: CANON_MAX_VERTICES });
    }
    Ok(search(g).0)
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    total_bits: u32,
    best: Option<(u128, Vec<usize>)>,
}

fn search(g: &Graph) -> (u128, Vec<usize>) {
    let n = g.n();
    if n <= 1 {
        return (0, (0..n).collect());
    }
    let mut s = Search { adj: g.adj_bits(), n, total_bits: (n * (n - 1) / 2) as u32, best: None };
    let mut cells = vec![crate::gf2::low_mask(n)];
    s.refine(&mut cells);
    s.descend(cells);
    s.best.expect("search visits at least one leaf")
}

impl Search<'_> {
    fn refine(&self, cells: &mut Vec<u64>) {
        'outer: loop {
            for w in 0..cells.len() {
                let splitter = cells[w];
                for x in 0..cells.len() {
                    let cell = cells[x];
                    if cell.count_ones() == 1 {
                        continue;
                    }
                    let mut groups: [u64; 64] = [0; 64];
                    let mut seen = 0u64;
                    let mut bits = cell;
                    while bits != 0 {
                        let v = bits.trailing_zeros() as usize;
                        let c = (self.adj[v] & splitter).count_ones() as usize;
                        groups[c] |= 1 << v;
                        seen |= 1 << c;
                        bits &= bits - 1;
                    }
                    if seen.count_ones() > 1 {
                        let mut parts = Vec::with_capacity(seen.count_ones() as usize);
                        let mut s = seen;
                        while s != 0 {
                            parts.push(groups[s.trailing_zeros() as usize]);
                            s &= s - 1;
                        }
                        cells.splice(x..=x, parts);
                        continue 'outer;
                    }
                }
            }
            return;
        }
    }

    fn prefix_key(&self, order: &[usize]) -> u128 {
        let mut key = 0u128;
        for j in 1..order.len() {
            let row = self.adj[order[j]];
            for &vi in &order[..j] {
                key = key << 1 | (row >> vi & 1) as u128;
            }
        }
        key
    }

    fn descend(&mut self, cells: Vec<u64>) {
        let fixed: Vec<usize> = cells.iter().take_while(|c| c.count_ones() == 1).map(|c| c.trailing_zeros() as usize).collect();
        if fixed.len() == self.n {
            let key = self.prefix_key(&fixed);
            if self.best.as_ref().is_none_or(|(b, _)| key < *b) {
                self.best = Some((key, fixed));
            }
            return;
        }
        if let Some((best, _)) = &self.best {
            let m = fixed.len();
            let bits = (m * m.saturating_sub(1) / 2) as u32;
            if bits > 0 {
                let prefix = self.prefix_key(&fixed);
                let best_prefix = best >> (self.total_bits - bits);
                if prefix > best_prefix {
                    return;
                }
            }
        }
        let target = cells.iter().position(|c| c.count_ones() > 1).expect("non-discrete partition");
        let cell = cells[target];
        let mut tried: Vec<usize> = Vec::new();
        let mut bits = cell;
        while bits != 0 {
            let u = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if tried.iter().any(|&w| self.twins(u, w)) {
                continue;
            }
            tried.push(u);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(1 << u);
            next.push(cell & !(1 << u));
            next.extend_from_slice(&cells[target + 1..]);
            self.refine(&mut next);
            self.descend(next);
        }
    }

    #[inline]
    fn twins(&self, u: usize, w: usize) -> bool {
        let mask = !((1u64 << u) | (1u64 << w));
        self.adj[u] & mask == self.adj[w] & mask
    }
}
