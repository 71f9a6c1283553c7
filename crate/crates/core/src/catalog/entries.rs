//! Named codes. Every entry is rebuilt and re-verified (Conditions 0–2 and
//! Knill–Laflamme at the exact claimed distance) each time it is loaded.

use std::collections::HashSet;

use serde::Serialize;

use super::format::CodeJson;
use crate::codesearch::{build_super_graph, find_cliques, CliqueMode, CodingClique};
use crate::error::{Error, Result};
use crate::gf2::{span, VertexSet};
use crate::graph::{Family, Graph};
use crate::graphstate::{certified_distance, kl_verify};
use crate::stabilizer::{stabilizer_to_graph, CheckMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CodeKind {
    Clique,
    Group,
}

#[derive(Clone, Debug)]
pub struct CodeDescriptor {
    pub name: String,
    pub n: usize,
    /// Claimed code dimension `K`.
    pub dimension: usize,
    pub d: usize,
    pub kind: CodeKind,
    pub clique: CodingClique,
    pub provenance: String,
}

impl CodeDescriptor {
    fn new(name: String, dimension: usize, d: usize, clique: CodingClique, provenance: &str) -> Result<Self> {
        let kind = if clique.is_group { CodeKind::Group } else { CodeKind::Clique };
        let desc = Self { name, n: clique.n(), dimension, d, kind, clique, provenance: provenance.to_string() };
        desc.verify()?;
        Ok(desc)
    }

    /// Re-checks the claimed `((n, K, d))` from scratch.
    pub fn verify(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Verification(format!("{}: {msg}", self.name)));
        if self.clique.n() != self.n || self.clique.size() != self.dimension || self.clique.d != self.d {
            return fail(format!(
                "claimed ((n={}, K={}, d={})) but clique has n={}, K={}, d={}",
                self.n,
                self.dimension,
                self.d,
                self.clique.n(),
                self.clique.size(),
                self.clique.d
            ));
        }
        if let Err(e) = self.clique.revalidate()? {
            return fail(e.to_string());
        }
        if self.dimension >= 2 {
            let exact = certified_distance(&self.clique.graph, &self.clique.members)?;
            if exact != Some(self.d) {
                return fail(format!("Knill-Laflamme distance is {exact:?}"));
            }
        } else if !kl_verify(&self.clique.graph, &self.clique.members, self.d)?.is_accepted() {
            return fail("Knill-Laflamme check rejected".into());
        }
        Ok(())
    }

    pub fn to_json(&self) -> CodeJson {
        CodeJson::from_clique(&self.name, &self.clique)
    }
}

/// Names accepted by [`catalog_entry`], with the default family instances.
pub fn catalog_names() -> Vec<String> {
    let mut names: Vec<String> = ["l5_662", "pentagon_513", "steane_713", "l9_1233"].iter().map(|s| s.to_string()).collect();
    for n in 1..=2 {
        names.push(format!("star_family({n})"));
        names.push(format!("star_family_plus({n})"));
    }
    for m in 2..=3 {
        names.push(format!("rains_family({m})"));
    }
    names
}

fn parse_call(name: &str) -> Option<(&str, usize)> {
    let (head, rest) = name.split_once('(')?;
    let arg = rest.strip_suffix(')')?.trim().parse().ok()?;
    Some((head.trim(), arg))
}

pub fn catalog_entry(name: &str) -> Result<CodeDescriptor> {
    match name {
        "l5_662" => l5_662(),
        "pentagon_513" => pentagon_513(),
        "steane_713" => steane_713(),
        "l9_1233" => l9_1233(),
        "g10_2433" => {
            Err(Error::UnknownEntry("g10_2433 (no 10-vertex witness graph has been found; see the candidate search)".into()))
        }
        _ => match parse_call(name) {
            Some(("star_family", n)) => star_family(n),
            Some(("star_family_plus", n)) => star_family_plus(n),
            Some(("rains_family", m)) => rains_family(m),
            _ => Err(Error::UnknownEntry(name.to_string())),
        },
    }
}

fn sets(n: usize, lists: &[&[usize]]) -> Result<Vec<VertexSet>> {
    lists.iter().map(|l| VertexSet::from_labels(n, l)).collect()
}

fn l5_members() -> Vec<VertexSet> {
    sets(5, &[&[], &[2, 3, 5], &[3, 4, 1], &[4, 5, 2], &[5, 1, 3], &[1, 2, 4]]).expect("labels in range")
}

pub fn l5_662() -> Result<CodeDescriptor> {
    let g = Graph::family(Family::Loop, 5)?;
    let clique = CodingClique::new(g, 2, l5_members())?;
    CodeDescriptor::new("l5_662".into(), 6, 2, clique, "loop graph L5 with the six-member clique C_i = {i+1, i+2, i+4}")
}

pub fn pentagon_513() -> Result<CodeDescriptor> {
    let g = Graph::family(Family::Loop, 5)?;
    let clique = CodingClique::from_generators(g, 3, vec![VertexSet::full(5)])?;
    CodeDescriptor::new("pentagon_513".into(), 2, 3, clique, "loop graph L5 with the coding group {∅, V}")
}

pub fn steane_713() -> Result<CodeDescriptor> {
    let cm = CheckMatrix::parse_text("IIIXXXX\nIXXIIXX\nXIXIXIX\nIIIZZZZ\nIZZIIZZ\nZIZIZIZ")?;
    let code = stabilizer_to_graph(&cm)?;
    CodeDescriptor::new("steane_713".into(), 2, 3, code.group, "graph form of the Hamming-code CSS check matrix")
}

pub fn l9_1233() -> Result<CodeDescriptor> {
    let g = Graph::family(Family::Loop, 9)?;
    let sg = build_super_graph(&g, 3)?;
    let clique = find_cliques(&sg, CliqueMode::Max)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Verification("l9_1233: clique search returned nothing".into()))?;
    CodeDescriptor::new("l9_1233".into(), 12, 3, clique, "derived by search, matches the ((9,12,3)) claim")
}

pub const STAR_FAMILY_MAX: usize = 3;

/// `M_n = 2^{4n-1} - C(4n, 2n) / 2`.
pub fn star_dimension(n: usize) -> usize {
    let leaves = 4 * n;
    let mut binom: usize = 1;
    for i in 0..2 * n {
        binom = binom * (leaves - i) / (i + 1);
    }
    (1 << (leaves - 1)) - binom / 2
}

fn check_star_arg(n: usize) -> Result<()> {
    if n == 0 || n > STAR_FAMILY_MAX {
        return Err(Error::Unsupported { what: "star family parameter", n, max: STAR_FAMILY_MAX });
    }
    Ok(())
}

/// Leaves `0..4n`, centre `4n`: subsets of leaves with `|C| = 2l` or `|C| = 2n + 2l + 1`,
/// `0 ≤ l ≤ n - 1`.
fn star_members(n: usize) -> Vec<VertexSet> {
    let total = 4 * n + 1;
    let leaves = 4 * n;
    let admissible = |s: usize| (s.is_multiple_of(2) && s < 2 * n) || (s % 2 == 1 && s > 2 * n && s < leaves);
    (0u64..1 << leaves)
        .filter(|c| admissible(c.count_ones() as usize))
        .map(|c| VertexSet::from_bits(total, c).expect("fits"))
        .collect()
}

pub fn star_family(n: usize) -> Result<CodeDescriptor> {
    check_star_arg(n)?;
    let g = Graph::family(Family::Star, 4 * n + 1)?;
    let clique = CodingClique::new(g, 2, star_members(n))?;
    CodeDescriptor::new(
        format!("star_family({n})"),
        star_dimension(n),
        2,
        clique,
        "star graph with leaves 1..4n and centre 4n+1; members avoid the centre and have size 2l or 2n+2l+1",
    )
}

/// The centre together with leaves `4l-2, 4l-1` (1-indexed), `l = 1..n`.
fn star_extra_member(n: usize) -> VertexSet {
    let total = 4 * n + 1;
    let mut bits = 1u64 << (4 * n);
    for l in 1..=n {
        bits |= 1 << (4 * l - 3) | 1 << (4 * l - 2);
    }
    VertexSet::from_bits(total, bits).expect("fits")
}

struct LeafSearch<'a> {
    leaves: usize,
    centre: u64,
    extra: u64,
    members: &'a HashSet<u64>,
    /// Leaf-leaf adjacency being built.
    adj: Vec<u64>,
}

impl LeafSearch<'_> {
    /// With row `v` final, the weight-one covers at `v` must not reach any member from `extra`.
    fn local_ok(&self, v: usize) -> bool {
        let nv = self.adj[v] | self.centre;
        !self.members.contains(&(self.extra ^ nv)) && !self.members.contains(&(self.extra ^ nv ^ 1 << v))
    }

    fn dfs(&mut self, v: usize, accept: &mut dyn FnMut(&[u64]) -> bool) -> bool {
        if v == self.leaves {
            return accept(&self.adj);
        }
        let higher: Vec<usize> = (v + 1..self.leaves).collect();
        for mask in 0u64..1 << higher.len() {
            for (i, &w) in higher.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    self.adj[v] |= 1 << w;
                    self.adj[w] |= 1 << v;
                }
            }
            if self.local_ok(v) && self.dfs(v + 1, accept) {
                return true;
            }
            for &w in &higher {
                self.adj[v] &= !(1 << w);
                self.adj[w] &= !(1 << v);
            }
        }
        false
    }
}

/// The star family plus the extra member; leaf-leaf edges are found by backtracking.
pub fn star_family_plus(n: usize) -> Result<CodeDescriptor> {
    check_star_arg(n)?;
    let total = 4 * n + 1;
    let leaves = 4 * n;
    let mut members = star_members(n);
    let extra = star_extra_member(n);
    let member_bits: HashSet<u64> = members.iter().map(|c| c.bits()).collect();
    members.push(extra);
    let mut search = LeafSearch { leaves, centre: 1 << leaves, extra: extra.bits(), members: &member_bits, adj: vec![0; leaves] };
    let mut found = None;
    search.dfs(0, &mut |adj| {
        let mut full: Vec<u64> = adj.iter().map(|&row| row | 1 << leaves).collect();
        full.push((1 << leaves) - 1);
        let g = Graph::from_adjacency(full).expect("symmetric");
        match CodingClique::new(g, 2, members.clone()) {
            Ok(c) => {
                found = Some(c);
                true
            }
            Err(_) => false,
        }
    });
    let clique = found.ok_or_else(|| Error::Verification(format!("star_family_plus({n}): no leaf augmentation found")))?;
    debug_assert_eq!(clique.n(), total);
    CodeDescriptor::new(
        format!("star_family_plus({n})"),
        star_dimension(n) + 1,
        2,
        clique,
        "star graph plus leaf-leaf edges derived by search; clique adds the centre with leaves 4l-2, 4l-1",
    )
}

pub const RAINS_FAMILY_MAX: usize = 4;

/// `L5` on `1..5` plus pairs `(a_j, b_j)` at `6 + 2(j-1)`, `7 + 2(j-1)`, each pair joined by
/// an edge. Members are `C_i △ U` with `U` in the span of `{2, a_j}` and `{5, b_j}`.
pub fn rains_family(m: usize) -> Result<CodeDescriptor> {
    if m == 0 || m > RAINS_FAMILY_MAX {
        return Err(Error::Unsupported { what: "Rains family parameter", n: m, max: RAINS_FAMILY_MAX });
    }
    let n = 2 * m + 3;
    let dimension = 6 << (2 * (m - 1));
    let name = format!("rains_family({m})");
    let mut gens = Vec::new();
    for j in 0..m - 1 {
        gens.push(VertexSet::from_elements(n, [1, 5 + 2 * j])?);
        gens.push(VertexSet::from_elements(n, [4, 6 + 2 * j])?);
    }
    let shifts = span(&gens, n);
    let base: Vec<VertexSet> = l5_members().iter().map(|c| VertexSet::from_bits(n, c.bits()).expect("fits")).collect();
    let members: Vec<VertexSet> = base.iter().flat_map(|&c| shifts.iter().map(move |&u| c ^ u)).collect();

    // one attachment pattern (to L5) shared by every a_j and every b_j
    let mut patterns: Vec<(bool, u32, u32)> = (0u32..1 << 10)
        .map(|mask| {
            let g = rains_graph(m, mask);
            (!g.is_connected(), mask.count_ones(), mask)
        })
        .collect();
    patterns.sort_unstable();
    for (_, _, mask) in patterns {
        if let Ok(clique) = CodingClique::new(rains_graph(m, mask), 2, members.clone()) {
            return CodeDescriptor::new(
                name,
                dimension,
                2,
                clique,
                "L5 plus joined pairs (a_j, b_j); attachment edges derived by search, matches the ((2m+3, 6*4^(m-1), 2)) claim",
            );
        }
    }
    Err(Error::Verification(format!("{name}: no attachment pattern found")))
}

/// Bits `0..5` of `mask` join each `a_j` to L5, bits `5..10` each `b_j`.
fn rains_graph(m: usize, mask: u32) -> Graph {
    let n = 2 * m + 3;
    let mut edges: Vec<(usize, usize)> = (0..5).map(|v| (v, (v + 1) % 5)).collect();
    for j in 0..m - 1 {
        let (a, b) = (5 + 2 * j, 6 + 2 * j);
        edges.push((a, b));
        for v in 0..5 {
            if mask >> v & 1 == 1 {
                edges.push((v, a));
            }
            if mask >> (v + 5) & 1 == 1 {
                edges.push((v, b));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("in range")
}
