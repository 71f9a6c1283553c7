//! Coding-clique search: purity and uncoverable sets, the super graph, clique and
//! coding-group enumeration, and transport of cliques along local complementation.

mod bits;
mod clique;
mod groups;

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::VertexSet;
use crate::graph::Graph;

pub use clique::{find_cliques, find_cliques_with, CliqueMode, CliqueSearch, SearchLimits};
pub use groups::{find_coding_groups, find_coding_groups_with, GroupSearch};

use bits::Bits;

/// Largest `n` for which the `2^n` subset tables are built.
pub const SEARCH_MAX_VERTICES: usize = 20;

fn check_args(g: &Graph, d: usize) -> Result<()> {
    if g.n() > SEARCH_MAX_VERTICES {
        return Err(Error::Unsupported { what: "subset enumeration", n: g.n(), max: SEARCH_MAX_VERTICES });
    }
    if d == 0 {
        return Err(Error::Parse("distance must be at least 1".into()));
    }
    Ok(())
}

/// Nonempty `S` with `|S ∪ N_S| < d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuritySet {
    pub n: usize,
    pub d: usize,
    pub members: Vec<VertexSet>,
}

impl PuritySet {
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Condition 1: `|C ∩ S|` even for every member `S`.
    pub fn admits(&self, c: VertexSet) -> bool {
        self.members.iter().all(|&s| !c.odd_overlap(s))
    }
}

pub fn purity_set(g: &Graph, d: usize) -> Result<PuritySet> {
    check_args(g, d)?;
    let n = g.n();
    let members = (1..1u64 << n)
        .filter(|&s| ((s | g.neighborhood_bits(s)).count_ones() as usize) < d)
        .map(|s| VertexSet::raw(n, s))
        .collect();
    Ok(PuritySet { n, d, members })
}

/// Subsets `C` admitting no cover `C = δ △ N_ω` with `|δ ∪ ω| < d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UncoverableSet {
    pub n: usize,
    pub d: usize,
    bits: Bits,
}

impl UncoverableSet {
    pub fn contains(&self, c: VertexSet) -> bool {
        self.contains_bits(c.bits())
    }

    #[inline]
    pub(crate) fn contains_bits(&self, c: u64) -> bool {
        self.bits.contains(c as usize)
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Members in increasing bitmask order.
    pub fn members(&self) -> Vec<VertexSet> {
        self.bits.iter().map(|c| VertexSet::raw(self.n, c as u64)).collect()
    }
}

/// Every cover image `δ △ N_ω` with `|δ ∪ ω| = p`, for `p < d`.
pub(crate) fn for_each_cover(g: &Graph, d: usize, mut f: impl FnMut(u64)) {
    let n = g.n();
    for p in 0..d.min(n + 1) {
        for u in crate::graphstate::supports_of_size(n, p) {
            let u = u.bits();
            // ω ⊆ u, δ = (u \ ω) ∪ t for t ⊆ ω
            let mut omega = u;
            loop {
                let image_base = (u & !omega) ^ g.neighborhood_bits(omega);
                let mut t = omega;
                loop {
                    f(image_base ^ t);
                    if t == 0 {
                        break;
                    }
                    t = (t - 1) & omega;
                }
                if omega == 0 {
                    break;
                }
                omega = (omega - 1) & u;
            }
        }
    }
}

pub fn uncoverable_set(g: &Graph, d: usize) -> Result<UncoverableSet> {
    check_args(g, d)?;
    let n = g.n();
    let mut bits = Bits::full(1 << n);
    for_each_cover(g, d, |c| bits.remove(c as usize));
    Ok(UncoverableSet { n, d, bits })
}

/// Vertices are `∅` followed by the Condition-1 members of `D_d` in lexicographic
/// order; `C ~ C'` iff `C △ C' ∈ D_d`.
#[derive(Clone, Debug)]
pub struct SuperGraph {
    graph: Graph,
    d: usize,
    purity: PuritySet,
    uncoverable: UncoverableSet,
    vertices: Vec<VertexSet>,
    adj: Vec<Bits>,
}

impl SuperGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn vertices(&self) -> &[VertexSet] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn purity(&self) -> &PuritySet {
        &self.purity
    }

    pub fn uncoverable(&self) -> &UncoverableSet {
        &self.uncoverable
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Bits::count).sum::<usize>() / 2
    }

    pub(crate) fn adjacency(&self) -> &[Bits] {
        &self.adj
    }

    /// Index of `c` among the vertices.
    pub fn index_of(&self, c: VertexSet) -> Option<usize> {
        self.vertices.binary_search(&c).ok()
    }
}

pub fn build_super_graph(g: &Graph, d: usize) -> Result<SuperGraph> {
    let purity = purity_set(g, d)?;
    let uncoverable = uncoverable_set(g, d)?;
    let n = g.n();
    let mut vertices = vec![VertexSet::empty(n)];
    vertices.extend(uncoverable.members().into_iter().filter(|&c| !c.is_empty() && purity.admits(c)));
    vertices.sort();
    let m = vertices.len();
    let mut adj = vec![Bits::empty(m); m];
    for i in 0..m {
        for j in i + 1..m {
            if uncoverable.contains_bits(vertices[i].bits() ^ vertices[j].bits()) {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    Ok(SuperGraph { graph: g.clone(), d, purity, uncoverable, vertices, adj })
}

/// A family of vertex subsets satisfying Conditions 0–2 for `(graph, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CodingClique {
    pub graph: Graph,
    pub d: usize,
    /// Sorted lexicographically; `∅` first.
    pub members: Vec<VertexSet>,
    pub is_group: bool,
    pub generators: Option<Vec<VertexSet>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionFailure {
    /// Condition 0: `∅` is not a member.
    MissingEmpty,
    /// A member repeats.
    Duplicate(VertexSet),
    /// Condition 1: `|C ∩ S|` is odd.
    OddPurityOverlap { member: VertexSet, purity: VertexSet },
    /// Condition 2: `C △ C'` is coverable.
    Coverable { a: VertexSet, b: VertexSet },
    /// Claimed group is not closed under `△`.
    NotClosed,
}

impl fmt::Display for ConditionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MissingEmpty => write!(f, "condition 0: empty set missing"),
            Self::Duplicate(c) => write!(f, "duplicate member {c}"),
            Self::OddPurityOverlap { member, purity } => {
                write!(f, "condition 1: {member} meets purity element {purity} oddly")
            }
            Self::Coverable { a, b } => write!(f, "condition 2: {a} and {b} differ by a coverable set"),
            Self::NotClosed => write!(f, "members are not closed under symmetric difference"),
        }
    }
}

/// Independent re-check of Conditions 0–2, with its own purity and cover tables.
pub struct ConditionChecker {
    n: usize,
    purity: Vec<u64>,
    covered: std::collections::HashSet<u64>,
}

impl ConditionChecker {
    pub fn new(g: &Graph, d: usize) -> Result<Self> {
        check_args(g, d)?;
        let n = g.n();
        let purity = (1..1u64 << n).filter(|&s| ((s | g.neighborhood_bits(s)).count_ones() as usize) < d).collect();
        let mut covered = std::collections::HashSet::new();
        for_each_cover(g, d, |c| {
            covered.insert(c);
        });
        Ok(Self { n, purity, covered })
    }

    pub fn check(&self, members: &[VertexSet]) -> std::result::Result<(), ConditionFailure> {
        let n = self.n;
        let mut seen = std::collections::HashSet::with_capacity(members.len());
        for &c in members {
            if !seen.insert(c.bits()) {
                return Err(ConditionFailure::Duplicate(c));
            }
        }
        if !seen.contains(&0) {
            return Err(ConditionFailure::MissingEmpty);
        }
        for &s in &self.purity {
            if let Some(&c) = members.iter().find(|c| (c.bits() & s).count_ones() % 2 == 1) {
                return Err(ConditionFailure::OddPurityOverlap { member: c, purity: VertexSet::raw(n, s) });
            }
        }
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if self.covered.contains(&(a.bits() ^ b.bits())) {
                    return Err(ConditionFailure::Coverable { a, b });
                }
            }
        }
        Ok(())
    }
}

/// Checks Conditions 0–2 from scratch.
pub fn check_conditions(g: &Graph, d: usize, members: &[VertexSet]) -> Result<std::result::Result<(), ConditionFailure>> {
    for c in members {
        if c.n() != g.n() {
            return Err(Error::DimensionMismatch { left: c.n(), right: g.n() });
        }
    }
    Ok(ConditionChecker::new(g, d)?.check(members))
}

impl CodingClique {
    /// Validates and normalizes `members` into a coding clique.
    pub fn new(graph: Graph, d: usize, mut members: Vec<VertexSet>) -> Result<Self> {
        if let Err(fail) = check_conditions(&graph, d, &members)? {
            return Err(Error::Verification(fail.to_string()));
        }
        members.sort();
        Ok(Self { graph, d, members, is_group: false, generators: None })
    }

    /// A coding group given by generators; the members are their span.
    pub fn from_generators(graph: Graph, d: usize, generators: Vec<VertexSet>) -> Result<Self> {
        let n = graph.n();
        let members = crate::gf2::span(&generators, n);
        if members.len() != 1 << generators.len() {
            return Err(Error::DependentRows);
        }
        let mut clique = Self::new(graph, d, members)?;
        clique.is_group = true;
        clique.generators = Some(generators);
        Ok(clique)
    }

    pub(crate) fn from_parts_unchecked(
        graph: Graph,
        d: usize,
        mut members: Vec<VertexSet>,
        generators: Option<Vec<VertexSet>>,
    ) -> Self {
        members.sort();
        Self { graph, d, members, is_group: generators.is_some(), generators }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Code dimension `K`.
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn revalidate(&self) -> Result<std::result::Result<(), ConditionFailure>> {
        let basic = check_conditions(&self.graph, self.d, &self.members)?;
        if basic.is_err() || !self.is_group {
            return Ok(basic);
        }
        let set: std::collections::HashSet<u64> = self.members.iter().map(|c| c.bits()).collect();
        let closed = self.members.iter().all(|a| self.members.iter().all(|b| set.contains(&(a.bits() ^ b.bits()))));
        Ok(if closed { Ok(()) } else { Err(ConditionFailure::NotClosed) })
    }

    /// True iff `members` is closed under `△`.
    pub fn is_closed(&self) -> bool {
        let set: std::collections::HashSet<u64> = self.members.iter().map(|c| c.bits()).collect();
        self.members.iter().all(|a| self.members.iter().all(|b| set.contains(&(a.bits() ^ b.bits()))))
    }

    /// The local-complementation rule `C_v = C` if `v ∉ C`, `C △ N_v` otherwise, attached to
    /// the locally complemented graph.
    pub fn lc_transport(&self, v: usize) -> Result<CodingClique> {
        let g_v = self.graph.local_complement(v)?;
        let nv = self.graph.neighborhood(v);
        let map = |c: &VertexSet| if c.contains(v) { *c ^ nv } else { *c };
        let members = self.members.iter().map(map).collect();
        let generators = self.generators.as_ref().map(|gens| gens.iter().map(map).collect());
        Ok(Self::from_parts_unchecked(g_v, self.d, members, generators))
    }
}

/// Free-function form of [`CodingClique::lc_transport`].
pub fn lc_transport(clique: &CodingClique, v: usize) -> Result<CodingClique> {
    clique.lc_transport(v)
}
