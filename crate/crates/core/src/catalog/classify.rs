//! Exhaustive classification of stabilizer codes on small graphs.
//!
//! Every LC orbit (connected or not) contributes its coding groups; codes are bucketed
//! by their invariants, and for `n ≤ WITNESS_CLASSIFY_MAX` each bucket is split further
//! by explicit local-Clifford-plus-permutation witnesses.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::format::{graph_to_edges, EdgesJson};
use crate::codesearch::{find_coding_groups, CodingClique};
use crate::error::{Error, Result};
use crate::graph::{lc_orbit_representatives_all, to_graph6, Graph, ORBIT_MAX_VERTICES};
use crate::graphstate::{code_invariants, format_rational, is_pure, weight_signature, CodeInvariants, Rational};
use crate::stabilizer::{find_equivalence_witness, group_to_stabilizer};

pub const WITNESS_CLASSIFY_MAX: usize = 7;

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    /// Keep codes on disconnected graphs that leave a whole component untouched, i.e.
    /// a smaller code with a graph state appended.
    pub include_decomposable: bool,
    pub witnesses: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self { include_decomposable: false, witnesses: true }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassMember {
    /// Index into the list of LC-orbit representatives.
    pub graph_index: usize,
    pub graph6: String,
    pub graph: EdgesJson,
    pub connected: bool,
    pub generators: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CodeClass {
    /// Position of the weight distribution in descending `(A_1, A_2, ...)` order.
    pub distribution: usize,
    pub signature: String,
    pub weights: Vec<String>,
    pub pure: bool,
    pub from_disconnected_graph: bool,
    /// Number of witnessed equivalence classes inside this fingerprint class, when checked.
    pub witnessed_classes: Option<usize>,
    pub fingerprint: CodeInvariants,
    pub codes: Vec<ClassMember>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub graphs_searched: usize,
    pub codes_found: usize,
    pub decomposable_excluded: usize,
    pub distributions: usize,
    pub classes: Vec<CodeClass>,
}

impl Classification {
    pub fn to_table(&self) -> String {
        let mut out = format!(
            "[[{},{},{}]]: {} graphs, {} codes ({} decomposable excluded), {} weight distributions, {} classes\n",
            self.n,
            self.k,
            self.d,
            self.graphs_searched,
            self.codes_found,
            self.decomposable_excluded,
            self.distributions,
            self.classes.len()
        );
        for (i, c) in self.classes.iter().enumerate() {
            let first = &c.codes[0];
            out.push_str(&format!(
                "{:>3}  W_{:<2} {:<32} pure={:<5} codes={:<4} witnessed={:<4} rep={}{}\n",
                i,
                c.distribution,
                c.signature,
                c.pure,
                c.codes.len(),
                c.witnessed_classes.map_or("-".to_string(), |w| w.to_string()),
                first.graph6,
                if c.from_disconnected_graph { " (disconnected graph present)" } else { "" }
            ));
        }
        out
    }
}

/// A disconnected graph is decomposable for the group if some component meets no member.
fn is_decomposable(g: &Graph, group: &CodingClique) -> bool {
    let comps = g.components();
    if comps.len() < 2 {
        return false;
    }
    let touched = group.members.iter().fold(0u64, |acc, c| acc | c.bits());
    comps.iter().any(|c| c.bits() & touched == 0)
}

struct Found {
    graph_index: usize,
    graph: Graph,
    group: CodingClique,
    invariants: CodeInvariants,
    pure: bool,
}

pub fn classify(n: usize, k: usize, d: usize) -> Result<Classification> {
    classify_with(n, k, d, ClassifyOptions::default())
}

pub fn classify_with(n: usize, k: usize, d: usize, opts: ClassifyOptions) -> Result<Classification> {
    if n > ORBIT_MAX_VERTICES {
        return Err(Error::Unsupported { what: "classification", n, max: ORBIT_MAX_VERTICES });
    }
    let reps = lc_orbit_representatives_all(n)?;
    let per_graph: Vec<Result<(Vec<Found>, usize)>> = reps
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let mut found = Vec::new();
            let mut excluded = 0;
            for group in find_coding_groups(g, d, k)? {
                if !opts.include_decomposable && is_decomposable(g, &group) {
                    excluded += 1;
                    continue;
                }
                let invariants = code_invariants(g, &group.members)?;
                let pure = is_pure(g, &group.members, d)?;
                found.push(Found { graph_index: i, graph: g.clone(), group, invariants, pure });
            }
            Ok((found, excluded))
        })
        .collect();
    let mut all = Vec::new();
    let mut decomposable_excluded = 0;
    for r in per_graph {
        let (f, e) = r?;
        all.extend(f);
        decomposable_excluded += e;
    }
    let codes_found = all.len();

    let mut buckets: BTreeMap<String, Vec<Found>> = BTreeMap::new();
    for f in all {
        let key = serde_json::to_string(&f.invariants).expect("serializable");
        buckets.entry(key).or_default().push(f);
    }
    // descending (A_1, A_2, ...), then by serialized fingerprint
    let mut ordered: Vec<(Vec<Rational>, String, Vec<Found>)> =
        buckets.into_iter().map(|(key, v)| (v[0].invariants.weights.clone(), key, v)).collect();
    ordered.sort_by(|a, b| b.0[1..].cmp(&a.0[1..]).then_with(|| a.1.cmp(&b.1)));

    let mut distinct: Vec<Vec<Rational>> = ordered.iter().map(|o| o.0.clone()).collect();
    distinct.dedup();

    let check_witness = opts.witnesses && n <= WITNESS_CLASSIFY_MAX;
    let classes: Vec<CodeClass> = ordered
        .into_par_iter()
        .map(|(weights, _, members)| {
            let witnessed_classes = if check_witness { Some(witnessed_split(&members)?) } else { None };
            let first = &members[0];
            Ok(CodeClass {
                distribution: distinct.iter().position(|w| *w == weights).expect("present"),
                signature: weight_signature(&weights),
                weights: weights.iter().map(format_rational).collect(),
                pure: first.pure,
                from_disconnected_graph: members.iter().any(|m| !m.graph.is_connected()),
                witnessed_classes,
                fingerprint: first.invariants.clone(),
                codes: members
                    .iter()
                    .map(|m| ClassMember {
                        graph_index: m.graph_index,
                        graph6: to_graph6(&m.graph),
                        graph: graph_to_edges(&m.graph),
                        connected: m.graph.is_connected(),
                        generators: m.group.generators.as_deref().unwrap_or(&[]).iter().map(|c| c.labels()).collect(),
                    })
                    .collect(),
            })
        })
        .collect::<Result<_>>()?;

    Ok(Classification {
        n,
        k,
        d,
        graphs_searched: reps.len(),
        codes_found,
        decomposable_excluded,
        distributions: distinct.len(),
        classes,
    })
}

/// Number of witnessed equivalence classes among codes sharing one fingerprint.
fn witnessed_split(members: &[Found]) -> Result<usize> {
    let stabs = members.iter().map(|m| group_to_stabilizer(&m.graph, &m.group)).collect::<Result<Vec<_>>>()?;
    let mut leaders: Vec<usize> = Vec::new();
    for i in 0..stabs.len() {
        let mut matched = false;
        for &l in &leaders {
            if find_equivalence_witness(&stabs[l], &stabs[i], None)?.is_some() {
                matched = true;
                break;
            }
        }
        if !matched {
            leaders.push(i);
        }
    }
    Ok(leaders.len())
}
