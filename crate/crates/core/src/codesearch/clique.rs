//! Branch-and-bound clique search on the super graph with greedy-coloring bounds.
//!
//! `∅` is adjacent to every super-graph vertex, so the search runs on the remaining
//! vertices and prepends `∅` to every result. Internally vertices are renumbered by
//! decreasing degree (ties by canonical index), which fixes the branching order.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::{CodingClique, ConditionChecker, SuperGraph};
use crate::error::{Error, Result};
use crate::gf2::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CliqueMode {
    /// The first maximum clique met in branching order.
    Max,
    /// Every maximum clique.
    AllMax,
    /// The first clique of size at least `K`.
    AtLeast(usize),
    /// Every clique of size exactly `K`.
    Exhaustive(usize),
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SearchLimits {
    pub deadline: Option<Instant>,
    /// Stop collecting after this many cliques (enumeration modes).
    pub max_results: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct CliqueSearch {
    /// Canonically sorted.
    pub cliques: Vec<CodingClique>,
    /// False if a deadline or result cap cut the search short.
    pub complete: bool,
    /// Largest clique size (including `∅`) seen during the search.
    pub best_size: usize,
    pub nodes: u64,
}

pub fn find_cliques(sg: &SuperGraph, mode: CliqueMode) -> Result<Vec<CodingClique>> {
    Ok(find_cliques_with(sg, mode, SearchLimits::default())?.cliques)
}

struct Problem {
    /// Adjacency among non-empty super-graph vertices, renumbered.
    adj: Vec<Vec<u64>>,
    /// Internal index -> super-graph index.
    original: Vec<usize>,
    words: usize,
}

impl Problem {
    fn new(sg: &SuperGraph) -> Self {
        let m = sg.len().saturating_sub(1);
        let mut order: Vec<usize> = (1..sg.len()).collect();
        let degree = |i: usize| sg.adjacency()[i].count();
        order.sort_by_key(|&i| (std::cmp::Reverse(degree(i)), i));
        let mut position = vec![0usize; sg.len()];
        for (p, &i) in order.iter().enumerate() {
            position[i] = p;
        }
        let words = m.div_ceil(64).max(1);
        let mut adj = vec![vec![0u64; words]; m];
        for (p, &i) in order.iter().enumerate() {
            for j in sg.adjacency()[i].iter() {
                if j != 0 {
                    let q = position[j];
                    adj[p][q / 64] |= 1 << (q % 64);
                }
            }
        }
        Problem { adj, original: order, words }
    }

    fn all(&self) -> Vec<u64> {
        let m = self.adj.len();
        let mut p = vec![0u64; self.words];
        for i in 0..m {
            p[i / 64] |= 1 << (i % 64);
        }
        p
    }
}

#[derive(Clone, Copy)]
enum Goal {
    Max,
    /// Record cliques of exactly this many non-empty vertices; stop after the first
    /// one if `first_only`.
    Exact {
        target: usize,
        first_only: bool,
    },
}

struct Searcher<'a> {
    problem: &'a Problem,
    goal: Goal,
    deadline: Option<Instant>,
    max_results: Option<usize>,
    stop: &'a AtomicBool,
    truncated: &'a AtomicBool,
    nodes: u64,
    best: usize,
    results: Vec<Vec<usize>>,
}

fn is_empty(p: &[u64]) -> bool {
    p.iter().all(|&w| w == 0)
}

impl<'a> Searcher<'a> {
    fn new(problem: &'a Problem, goal: Goal, limits: SearchLimits, stop: &'a AtomicBool, truncated: &'a AtomicBool) -> Self {
        Searcher {
            problem,
            goal,
            deadline: limits.deadline,
            max_results: limits.max_results,
            stop,
            truncated,
            nodes: 0,
            best: 0,
            results: Vec::new(),
        }
    }

    /// Greedy sequential coloring; returns vertices by increasing color and the color
    /// (1-based) of each, an upper bound on the clique number of its prefix.
    fn color_sort(&self, p: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let mut uncolored = p.to_vec();
        let mut order = Vec::new();
        let mut colors = Vec::new();
        let mut color = 0;
        while !is_empty(&uncolored) {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = first(&q) {
                order.push(v);
                colors.push(color);
                uncolored[v / 64] &= !(1 << (v % 64));
                q[v / 64] &= !(1 << (v % 64));
                for (w, a) in q.iter_mut().zip(&self.problem.adj[v]) {
                    *w &= !a;
                }
            }
        }
        (order, colors)
    }

    fn should_stop(&mut self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return true;
        }
        self.nodes += 1;
        if self.nodes % 1024 == 1 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.truncated.store(true, Ordering::Relaxed);
                    self.stop.store(true, Ordering::Relaxed);
                    return true;
                }
            }
        }
        false
    }

    fn record(&mut self, r: &[usize]) {
        match self.goal {
            Goal::Max => {
                self.results.clear();
                self.results.push(r.to_vec());
            }
            Goal::Exact { first_only, .. } => {
                self.results.push(r.to_vec());
                if first_only {
                    self.stop.store(true, Ordering::Relaxed);
                } else if self.max_results.is_some_and(|cap| self.results.len() >= cap) {
                    self.truncated.store(true, Ordering::Relaxed);
                    self.stop.store(true, Ordering::Relaxed);
                }
            }
        }
    }

    /// Expands clique `r` with candidate set `p`.
    fn expand(&mut self, r: &mut Vec<usize>, mut p: Vec<u64>) {
        if self.should_stop() {
            return;
        }
        let (order, colors) = self.color_sort(&p);
        for idx in (0..order.len()).rev() {
            if self.stop.load(Ordering::Relaxed) {
                return;
            }
            let v = order[idx];
            let bound = r.len() + colors[idx];
            match self.goal {
                Goal::Max if bound <= self.best => return,
                Goal::Exact { target, .. } if bound < target => return,
                _ => {}
            }
            r.push(v);
            let newp: Vec<u64> = p.iter().zip(&self.problem.adj[v]).map(|(a, b)| a & b).collect();
            match self.goal {
                Goal::Max => {
                    if r.len() > self.best {
                        self.best = r.len();
                        self.record(r);
                    }
                    if !is_empty(&newp) {
                        self.expand(r, newp);
                    }
                }
                Goal::Exact { target, .. } => {
                    self.best = self.best.max(r.len());
                    if r.len() == target {
                        self.record(r);
                    } else if !is_empty(&newp) {
                        self.expand(r, newp);
                    }
                }
            }
            r.pop();
            p[v / 64] &= !(1 << (v % 64));
        }
    }
}

fn first(p: &[u64]) -> Option<usize> {
    p.iter().enumerate().find(|(_, &w)| w != 0).map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
}

struct RawOutcome {
    cliques: Vec<Vec<usize>>,
    best: usize,
    nodes: u64,
    truncated: bool,
}

fn run_serial(problem: &Problem, goal: Goal, limits: SearchLimits) -> RawOutcome {
    let stop = AtomicBool::new(false);
    let truncated = AtomicBool::new(false);
    let mut s = Searcher::new(problem, goal, limits, &stop, &truncated);
    s.expand(&mut Vec::new(), problem.all());
    RawOutcome { cliques: s.results, best: s.best, nodes: s.nodes, truncated: truncated.load(Ordering::Relaxed) }
}

/// Enumeration of all cliques with exactly `target` non-empty vertices, split over the
/// top-level branches.
fn run_parallel_exact(problem: &Problem, target: usize, limits: SearchLimits) -> RawOutcome {
    let stop = AtomicBool::new(false);
    let truncated = AtomicBool::new(false);
    let root = Searcher::new(problem, Goal::Exact { target, first_only: false }, limits, &stop, &truncated);
    let all = problem.all();
    let (order, colors) = root.color_sort(&all);
    let parts: Vec<(Vec<Vec<usize>>, usize, u64)> = (0..order.len())
        .into_par_iter()
        .filter(|&idx| colors[idx] >= target)
        .map(|idx| {
            let v = order[idx];
            let mut p = vec![0u64; problem.words];
            for &u in &order[..idx] {
                p[u / 64] |= 1 << (u % 64);
            }
            let mut s = Searcher::new(problem, Goal::Exact { target, first_only: false }, limits, &stop, &truncated);
            let mut r = vec![v];
            s.best = 1;
            if target == 1 {
                s.results.push(r.clone());
            } else {
                let newp: Vec<u64> = p.iter().zip(&problem.adj[v]).map(|(a, b)| a & b).collect();
                if !is_empty(&newp) {
                    s.expand(&mut r, newp);
                }
            }
            (s.results, s.best, s.nodes)
        })
        .collect();
    let mut out = RawOutcome { cliques: Vec::new(), best: 0, nodes: 0, truncated: false };
    for (c, b, n) in parts {
        out.cliques.extend(c);
        out.best = out.best.max(b);
        out.nodes += n;
    }
    out.truncated = truncated.load(Ordering::Relaxed);
    if let Some(cap) = limits.max_results {
        out.cliques.truncate(cap);
    }
    out
}

pub fn find_cliques_with(sg: &SuperGraph, mode: CliqueMode, limits: SearchLimits) -> Result<CliqueSearch> {
    let problem = Problem::new(sg);
    let checker = ConditionChecker::new(sg.graph(), sg.d())?;
    let m = problem.adj.len();
    let raw = match mode {
        CliqueMode::Max => {
            let mut max = run_serial(&problem, Goal::Max, limits);
            if max.cliques.is_empty() && !max.truncated {
                max.cliques.push(vec![]);
            }
            max
        }
        CliqueMode::AtLeast(k) => {
            let target = k.saturating_sub(1);
            if target == 0 {
                RawOutcome { cliques: vec![vec![]], best: 0, nodes: 0, truncated: false }
            } else if target > m {
                RawOutcome { cliques: vec![], best: 0, nodes: 0, truncated: false }
            } else {
                run_serial(&problem, Goal::Exact { target, first_only: true }, limits)
            }
        }
        CliqueMode::Exhaustive(k) => {
            if k == 0 || k - 1 > m {
                RawOutcome { cliques: vec![], best: 0, nodes: 0, truncated: false }
            } else if k == 1 {
                RawOutcome { cliques: vec![vec![]], best: 0, nodes: 0, truncated: false }
            } else {
                run_parallel_exact(&problem, k - 1, limits)
            }
        }
        CliqueMode::AllMax => {
            let max = run_serial(&problem, Goal::Max, limits);
            if max.truncated {
                max
            } else if max.best == 0 {
                RawOutcome { cliques: vec![vec![]], best: 0, nodes: max.nodes, truncated: false }
            } else {
                let mut all = run_parallel_exact(&problem, max.best, limits);
                all.nodes += max.nodes;
                all
            }
        }
    };
    let n = sg.graph().n();
    let mut cliques = Vec::with_capacity(raw.cliques.len());
    for r in &raw.cliques {
        let mut members = vec![VertexSet::empty(n)];
        members.extend(r.iter().map(|&i| sg.vertices()[problem.original[i]]));
        members.sort();
        if let Err(fail) = checker.check(&members) {
            return Err(Error::Verification(format!("search produced an invalid clique: {fail}")));
        }
        cliques.push(CodingClique::from_parts_unchecked(sg.graph().clone(), sg.d(), members, None));
    }
    cliques.sort_by(|a, b| a.members.cmp(&b.members));
    Ok(CliqueSearch { cliques, complete: !raw.truncated, best_size: raw.best + 1, nodes: raw.nodes })
}
