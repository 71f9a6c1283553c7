//! The end-to-end search pipeline with a replayable log.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::codesearch::{build_super_graph, find_cliques_with, find_coding_groups_with, CliqueMode, CodingClique, SearchLimits};
use crate::error::{Error, Result};
use crate::graph::{to_graph6, Graph};
use crate::graphstate::kl_verify;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Clique(CliqueMode),
    /// Coding groups of dimension `2^k`.
    Group(usize),
}

impl FromStr for SearchMode {
    type Err = Error;

    /// `max`, `all-max`, `at-least:K`, `exhaustive:K`, `group:k`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown search mode {s:?}"));
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a.parse::<usize>().map_err(|_| bad())?)),
            None => (s, None),
        };
        Ok(match (head, arg) {
            ("max", None) => SearchMode::Clique(CliqueMode::Max),
            ("all-max", None) => SearchMode::Clique(CliqueMode::AllMax),
            ("at-least", Some(k)) => SearchMode::Clique(CliqueMode::AtLeast(k)),
            ("exhaustive", Some(k)) => SearchMode::Clique(CliqueMode::Exhaustive(k)),
            ("group", Some(k)) => SearchMode::Group(k),
            _ => return Err(bad()),
        })
    }
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchMode::Clique(CliqueMode::Max) => f.write_str("max"),
            SearchMode::Clique(CliqueMode::AllMax) => f.write_str("all-max"),
            SearchMode::Clique(CliqueMode::AtLeast(k)) => write!(f, "at-least:{k}"),
            SearchMode::Clique(CliqueMode::Exhaustive(k)) => write!(f, "exhaustive:{k}"),
            SearchMode::Group(k) => write!(f, "group:{k}"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SearchBounds {
    pub time_budget: Option<Duration>,
    pub max_results: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageTimings {
    pub super_graph_ms: f64,
    pub search_ms: f64,
    pub verify_ms: f64,
}

/// Inputs (graph, `d`, mode, bounds) plus search statistics.
#[derive(Clone, Debug, Serialize)]
pub struct SearchLog {
    pub graph6: String,
    pub n: usize,
    pub d: usize,
    pub mode: String,
    pub time_budget_secs: Option<f64>,
    pub max_results: Option<usize>,
    pub purity_set_size: usize,
    pub uncoverable_set_size: usize,
    pub super_graph_vertices: usize,
    pub super_graph_edges: usize,
    /// Branch-and-bound nodes (clique modes only).
    pub nodes: Option<u64>,
    pub best_size: Option<usize>,
    pub results: usize,
    /// False when the time budget or result cap cut the search short.
    pub complete: bool,
    pub timings: StageTimings,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub codes: Vec<CodingClique>,
    pub log: SearchLog,
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// Purity set, uncoverable set, super graph, cliques or groups, then a Knill–Laflamme
/// check of every result.
pub fn run_search(g: &Graph, d: usize, mode: SearchMode, bounds: SearchBounds) -> Result<SearchReport> {
    let start = Instant::now();
    let limits = SearchLimits { deadline: bounds.time_budget.map(|b| start + b), max_results: bounds.max_results };
    let sg = build_super_graph(g, d)?;
    let super_graph_ms = ms(start);

    let t = Instant::now();
    let (codes, complete, nodes, best_size) = match mode {
        SearchMode::Clique(m) => {
            let r = find_cliques_with(&sg, m, limits)?;
            (r.cliques, r.complete, Some(r.nodes), Some(r.best_size))
        }
        SearchMode::Group(k) => {
            let r = find_coding_groups_with(g, d, k, limits)?;
            (r.groups, r.complete, None, None)
        }
    };
    let search_ms = ms(t);

    let t = Instant::now();
    for c in &codes {
        if !kl_verify(g, &c.members, d)?.is_accepted() {
            return Err(Error::Verification(format!("search result of size {} fails Knill-Laflamme", c.size())));
        }
    }
    let verify_ms = ms(t);

    let log = SearchLog {
        graph6: to_graph6(g),
        n: g.n(),
        d,
        mode: mode.to_string(),
        time_budget_secs: bounds.time_budget.map(|b| b.as_secs_f64()),
        max_results: bounds.max_results,
        purity_set_size: sg.purity().members.len(),
        uncoverable_set_size: sg.uncoverable().len(),
        super_graph_vertices: sg.len(),
        super_graph_edges: sg.edge_count(),
        nodes,
        best_size,
        results: codes.len(),
        complete,
        timings: StageTimings { super_graph_ms, search_ms, verify_ms },
    };
    Ok(SearchReport { codes, log })
}

/// Outcome of asking whether a graph carries a coding clique of size `K`.
#[derive(Clone, Debug)]
pub enum CliqueDecision {
    Found(CodingClique),
    /// The search completed without finding one.
    NoneExists,
    /// The time budget ran out first.
    Incomplete,
}

/// Decides whether `(g, d)` admits a coding clique with at least `k` members.
pub fn decide_clique(g: &Graph, d: usize, k: usize, bounds: SearchBounds) -> Result<(CliqueDecision, SearchLog)> {
    let report = run_search(g, d, SearchMode::Clique(CliqueMode::AtLeast(k)), SearchBounds { max_results: None, ..bounds })?;
    let decision = match report.codes.into_iter().next() {
        Some(c) => CliqueDecision::Found(c),
        None if report.log.complete => CliqueDecision::NoneExists,
        None => CliqueDecision::Incomplete,
    };
    Ok((decision, report.log))
}
