//! Simple undirected graphs on at most 64 vertices.
//!
//! Row `a` of the adjacency matrix is stored as the bitmask of the neighbourhood `N_a`.

mod canon;
mod graph6;
mod orbits;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{VertexSet, MAX_VERTICES};

pub use canon::{canonical_form, canonical_key, CanonicalForm, CANON_MAX_VERTICES};
pub use graph6::{from_graph6, to_graph6};
pub use orbits::{
    all_graphs_up_to_isomorphism, lc_orbit_closure, lc_orbit_representatives, lc_orbit_representatives_all, ORBIT_MAX_VERTICES,
};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices");
        Self { n, adj: vec![0; n] }
    }

    /// From 0-indexed edges. Self-loops are rejected, repeated edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Unsupported { what: "Graph", n, max: MAX_VERTICES });
        }
        let mut g = Self::empty(n);
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(Error::Parse(format!("self-loop at vertex {}", a + 1)));
            }
            g.adj[a] |= 1 << b;
            g.adj[b] |= 1 << a;
        }
        Ok(g)
    }

    /// From neighbourhood bitmasks; checks symmetry and the zero diagonal.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        if n > MAX_VERTICES {
            return Err(Error::Unsupported { what: "Graph", n, max: MAX_VERTICES });
        }
        for (a, &row) in adj.iter().enumerate() {
            if row >> a & 1 == 1 {
                return Err(Error::Parse(format!("self-loop at vertex {}", a + 1)));
            }
            if row & !crate::gf2::low_mask(n) != 0 {
                return Err(Error::VertexOutOfRange { vertex: 63 - row.leading_zeros() as usize, n });
            }
            for b in VertexSet::raw(n, row).iter() {
                if adj[b] >> a & 1 == 0 {
                    return Err(Error::Parse(format!("adjacency not symmetric at ({}, {})", a + 1, b + 1)));
                }
            }
        }
        Ok(Self { n, adj })
    }

    pub(crate) fn from_adjacency_unchecked(adj: Vec<u64>) -> Self {
        Self { n: adj.len(), adj }
    }

    pub fn family(kind: Family, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidFamily(format!("{kind}:0")));
        }
        let edges: Vec<(usize, usize)> = match kind {
            Family::Empty => vec![],
            Family::Complete => (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect(),
            Family::Star => (0..n - 1).map(|leaf| (leaf, n - 1)).collect(),
            Family::Loop => match n {
                1 => vec![],
                2 => vec![(0, 1)],
                _ => (0..n).map(|a| (a, (a + 1) % n)).collect(),
            },
        };
        Self::from_edges(n, &edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn neighborhood(&self, v: usize) -> VertexSet {
        VertexSet::raw(self.n, self.adj[v])
    }

    #[inline]
    pub(crate) fn adj_bits(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// 0-indexed edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for a in 0..self.n {
            for b in VertexSet::raw(self.n, self.adj[a] & !crate::gf2::low_mask(a + 1)).iter() {
                out.push((a, b));
            }
        }
        out
    }

    /// `N_S`: symmetric difference of the neighbourhoods of the vertices in `s`.
    pub fn neighborhood_set(&self, s: VertexSet) -> VertexSet {
        assert_eq!(s.n(), self.n, "vertex set dimension mismatch");
        VertexSet::raw(self.n, self.neighborhood_bits(s.bits()))
    }

    #[inline]
    pub(crate) fn neighborhood_bits(&self, mut s: u64) -> u64 {
        let mut acc = 0;
        while s != 0 {
            acc ^= self.adj[s.trailing_zeros() as usize];
            s &= s - 1;
        }
        acc
    }

    /// Toggles every edge inside `N_v`.
    pub fn local_complement(&self, v: usize) -> Result<Graph> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let mut g = self.clone();
        g.local_complement_in_place(v);
        Ok(g)
    }

    pub(crate) fn local_complement_in_place(&mut self, v: usize) {
        let nv = self.adj[v];
        let mut bits = nv;
        while bits != 0 {
            let a = bits.trailing_zeros() as usize;
            self.adj[a] ^= nv & !(1 << a);
            bits &= bits - 1;
        }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for a in 0..self.n {
            for b in self.neighborhood(a).iter() {
                adj[perm[a]] |= 1 << perm[b];
            }
        }
        Graph { n: self.n, adj }
    }

    /// Vertex sets of connected components, ordered by their lowest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                let mut f = frontier;
                while f != 0 {
                    next |= self.adj[f.trailing_zeros() as usize];
                    f &= f - 1;
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(VertexSet::raw(self.n, comp));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Disjoint union; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::Unsupported { what: "Graph", n, max: MAX_VERTICES });
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|r| r << self.n));
        Ok(Graph { n, adj })
    }

    /// Adjacency matrix as a 0/1 table.
    pub fn adjacency_table(&self) -> Vec<Vec<u8>> {
        (0..self.n).map(|a| (0..self.n).map(|b| self.has_edge(a, b) as u8).collect()).collect()
    }

    pub fn to_json_form(&self) -> EdgeList {
        EdgeList { n: self.n, edges: self.edges().into_iter().map(|(a, b)| [a + 1, b + 1]).collect() }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, g6={})", self.n, to_graph6(self))
    }
}

/// The JSON edge-list form `{"n": 5, "edges": [[1,2],[2,3],...]}`, 1-indexed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl TryFrom<&EdgeList> for Graph {
    type Error = Error;

    fn try_from(form: &EdgeList) -> Result<Graph> {
        let mut edges = Vec::with_capacity(form.edges.len());
        for &[a, b] in &form.edges {
            if a == 0 || b == 0 || a > form.n || b > form.n {
                return Err(Error::VertexOutOfRange { vertex: a.max(b), n: form.n });
            }
            edges.push((a - 1, b - 1));
        }
        Graph::from_edges(form.n, &edges)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Loop,
    Star,
    Complete,
    Empty,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "loop" => Ok(Family::Loop),
            "star" => Ok(Family::Star),
            "complete" => Ok(Family::Complete),
            "empty" => Ok(Family::Empty),
            other => Err(Error::InvalidFamily(other.to_string())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Loop => "loop",
            Family::Star => "star",
            Family::Complete => "complete",
            Family::Empty => "empty",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(n: usize, labels: &[usize]) -> VertexSet {
        VertexSet::from_labels(n, labels).unwrap()
    }

    pub(crate) fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for a in 0..n {
                    for b in a + 1..n {
                        if bits[k] {
                            edges.push((a, b));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, &edges).unwrap()
            })
        })
    }

    fn is_valid(g: &Graph) -> bool {
        (0..g.n()).all(|a| !g.has_edge(a, a) && (0..g.n()).all(|b| g.has_edge(a, b) == g.has_edge(b, a)))
    }

    #[test]
    fn neighborhood_examples() {
        let l5 = Graph::family(Family::Loop, 5).unwrap();
        assert_eq!(l5.neighborhood_set(set(5, &[1])), set(5, &[2, 5]));
        assert!(l5.neighborhood_set(VertexSet::empty(5)).is_empty());
        assert_eq!(l5.neighborhood_set(set(5, &[1, 2])), set(5, &[1, 2, 3, 5]));
    }

    #[test]
    fn local_complement_examples() {
        let l5 = Graph::family(Family::Loop, 5).unwrap();
        let g = l5.local_complement(0).unwrap();
        let mut expected = l5.edges();
        expected.push((1, 4));
        expected.sort();
        assert_eq!(g.edges(), expected);
        assert_eq!(g.local_complement(0).unwrap(), l5);
        assert!(matches!(l5.local_complement(5), Err(Error::VertexOutOfRange { .. })));

        let star = Graph::family(Family::Star, 5).unwrap();
        let lc = star.local_complement(4).unwrap();
        assert_eq!(lc, Graph::family(Family::Complete, 5).unwrap());
    }

    #[test]
    fn families() {
        let l5 = Graph::family(Family::Loop, 5).unwrap();
        assert_eq!(l5.edges(), vec![(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]);
        let star = Graph::family(Family::Star, 5).unwrap();
        assert_eq!(star.degree(4), 4);
        assert!((0..4).all(|leaf| star.degree(leaf) == 1));
        assert_eq!(Graph::family(Family::Complete, 3).unwrap().edges(), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(Graph::family(Family::Loop, 0).is_err());
        assert!("wheel".parse::<Family>().is_err());
    }

    #[test]
    fn components_of_disjoint_union() {
        let g = Graph::family(Family::Loop, 5).unwrap().disjoint_union(&Graph::family(Family::Complete, 2).unwrap()).unwrap();
        assert_eq!(g.components(), vec![set(7, &[1, 2, 3, 4, 5]), set(7, &[6, 7])]);
        assert!(!g.is_connected());
    }

    #[test]
    fn json_edge_list() {
        let l5 = Graph::family(Family::Loop, 5).unwrap();
        let json = serde_json::to_string(&l5.to_json_form()).unwrap();
        assert_eq!(json, r#"{"n":5,"edges":[[1,2],[1,5],[2,3],[3,4],[4,5]]}"#);
        let back: EdgeList = serde_json::from_str(&json).unwrap();
        assert_eq!(Graph::try_from(&back).unwrap(), l5);
        let bad = EdgeList { n: 3, edges: vec![[1, 4]] };
        assert!(Graph::try_from(&bad).is_err());
    }

    #[test]
    fn from_adjacency_rejects_asymmetry() {
        assert!(Graph::from_adjacency(vec![0b10, 0b00]).is_err());
        assert!(Graph::from_adjacency(vec![0b01]).is_err());
        assert!(Graph::from_adjacency(vec![0b10, 0b01]).is_ok());
    }

    proptest! {
        #[test]
        fn local_complement_preserves_validity(g in arb_graph(9), v in 0usize..9) {
            let v = v % g.n();
            let h = g.local_complement(v).unwrap();
            prop_assert!(is_valid(&h));
            prop_assert_eq!(h.neighborhood(v), g.neighborhood(v));
            let nv = g.neighborhood(v);
            for a in 0..g.n() {
                for b in 0..g.n() {
                    if a != b {
                        let inside = nv.contains(a) && nv.contains(b);
                        prop_assert_eq!(h.has_edge(a, b), g.has_edge(a, b) ^ inside);
                    }
                }
            }
            prop_assert_eq!(h.local_complement(v).unwrap(), g);
        }
    }
}
