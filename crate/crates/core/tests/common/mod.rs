#![allow(dead_code)]

use qgraph::codesearch::CodingClique;
use qgraph::gf2::{Gf2Matrix, RowOp};
use qgraph::graph::Graph;
use qgraph::graphstate::{overlap, pauli_pushthrough, PauliOperator, Phase, StateVector};
use qgraph::stabilizer::{apply_transforms_to_state, conjugate, invert_transforms, CheckMatrix, GraphCode, Transform};
use qgraph::VertexSet;
use rand::Rng;

pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = vec![];
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn random_set(rng: &mut impl Rng, n: usize) -> VertexSet {
    VertexSet::from_bits(n, rng.gen_range(0..1u64 << n)).unwrap()
}

/// Hermitian Pauli with a random sign.
pub fn random_pauli(rng: &mut impl Rng, n: usize) -> PauliOperator {
    let p = PauliOperator::hermitian(random_set(rng, n), random_set(rng, n));
    if rng.gen_bool(0.5) {
        p.scaled(Phase::MINUS_ONE)
    } else {
        p
    }
}

/// `E|Γ_b⟩` computed densely equals the engine's prediction `phase · |Γ_{b△Ω}⟩` for every `b`.
/// Since the basis is orthonormal this fixes every `⟨Γ_a|E|Γ_b⟩`.
pub fn action_matches(g: &Graph, e: &PauliOperator) -> bool {
    let n = g.n();
    let (omega, _) = pauli_pushthrough(g, e);
    VertexSet::all_subsets(n).all(|b| {
        let a = b ^ omega;
        let Some(phase) = overlap(g, a, e, b) else { return false };
        let lhs = StateVector::basis_state(g, b).unwrap().applied(e);
        let rhs = StateVector::basis_state(g, a).unwrap().applied(&PauliOperator::identity(n).with_phase(phase));
        lhs == rhs
    })
}

/// One overlap checked against a dense inner product.
pub fn inner_matches(g: &Graph, a: VertexSet, e: &PauliOperator, b: VertexSet) -> bool {
    let lhs = StateVector::basis_state(g, a).unwrap();
    let rhs = StateVector::basis_state(g, b).unwrap().applied(e);
    let exact = lhs.inner(&rhs);
    match overlap(g, a, e, b) {
        None => exact.is_zero(),
        Some(phase) => exact.equals(phase.to_complex()),
    }
}

/// Replays a transform log on the binary check matrix only (no phases).
pub fn binary_replay(cm: &CheckMatrix, log: &[Transform]) -> Gf2Matrix {
    let n = cm.n();
    let mut rows: Vec<(u64, u64)> = cm.rows().iter().map(|p| (p.x.bits(), p.z.bits())).collect();
    let bit = |v: u64, q: usize| v >> q & 1;
    for t in log {
        match t {
            Transform::RowOps { ops } => {
                for &op in ops {
                    match op {
                        RowOp::Swap(a, b) => rows.swap(a, b),
                        RowOp::Add { from, to } => {
                            let f = rows[from];
                            rows[to].0 ^= f.0;
                            rows[to].1 ^= f.1;
                        }
                    }
                }
            }
            &Transform::Hadamard { qubit } => {
                for r in rows.iter_mut() {
                    let (x, z) = (bit(r.0, qubit), bit(r.1, qubit));
                    r.0 = r.0 & !(1 << qubit) | z << qubit;
                    r.1 = r.1 & !(1 << qubit) | x << qubit;
                }
            }
            &Transform::Phase { qubit } | &Transform::PhaseDagger { qubit } => {
                for r in rows.iter_mut() {
                    r.1 ^= bit(r.0, qubit) << qubit;
                }
            }
            &Transform::ControlledZ { a, b } => {
                for r in rows.iter_mut() {
                    r.1 ^= bit(r.0, b) << a | bit(r.0, a) << b;
                }
            }
            Transform::Permute { perm } => {
                for r in rows.iter_mut() {
                    let mv = |v: u64| (0..n).filter(|&q| bit(v, q) == 1).fold(0u64, |acc, q| acc | 1 << perm[q]);
                    *r = (mv(r.0), mv(r.1));
                }
            }
            Transform::PauliCorrection { .. } => {}
        }
    }
    Gf2Matrix::from_bit_rows(rows.iter().map(|&(x, z)| x as u128 | (z as u128) << n).collect(), 2 * n).unwrap()
}

/// A random stabilizer: `±Z_0, ..., ±Z_{r-1}` conjugated by a random H/S/CZ circuit.
pub fn random_stabilizer(rng: &mut impl Rng, n: usize, r: usize) -> CheckMatrix {
    let mut circuit = Vec::new();
    for _ in 0..3 * n * n {
        let q = rng.gen_range(0..n);
        circuit.push(match rng.gen_range(0..3) {
            0 => Transform::Hadamard { qubit: q },
            1 => Transform::Phase { qubit: q },
            _ => {
                let mut b = rng.gen_range(0..n);
                if n > 1 {
                    while b == q {
                        b = rng.gen_range(0..n);
                    }
                    Transform::ControlledZ { a: q, b }
                } else {
                    Transform::Hadamard { qubit: q }
                }
            }
        });
    }
    let rows = (0..r)
        .map(|i| {
            let z = PauliOperator::z_on(VertexSet::singleton(n, i).unwrap());
            let z = if rng.gen_bool(0.5) { z.scaled(Phase::MINUS_ONE) } else { z };
            circuit.iter().fold(z, |p, t| conjugate(&p, t))
        })
        .collect();
    CheckMatrix::with_qubits(n, rows).unwrap()
}

/// The recorded transforms carry the input code onto the graph code: pulling each graph
/// basis state back gives a +1 eigenstate of every input generator. With matching
/// dimensions the two projectors coincide.
pub fn code_matches_graph_form(cm: &CheckMatrix, code: &GraphCode) -> bool {
    if code.group.members.len() != 1 << cm.k() {
        return false;
    }
    let inv = invert_transforms(&code.transforms);
    code.group.members.iter().all(|&c| {
        let pulled = apply_transforms_to_state(&StateVector::basis_state(&code.graph, c).unwrap(), &inv).unwrap();
        cm.rows().iter().all(|s| pulled.applied(s) == pulled)
    })
}

/// The graph code `span{|Γ_C⟩}` is the +1 eigenspace of `cm`.
pub fn graph_code_stabilized_by(clique: &CodingClique, cm: &CheckMatrix) -> bool {
    clique.members.len() == 1 << cm.k()
        && clique.members.iter().all(|&c| {
            let s = StateVector::basis_state(&clique.graph, c).unwrap();
            cm.rows().iter().all(|p| s.applied(p) == s)
        })
}

/// `√(-iX_v) Π_{u∈N_v} √(iZ_u)` applied to a state.
pub fn apply_lc_unitary(g: &Graph, v: usize, s: &StateVector) -> StateVector {
    let mut out = s.clone();
    for u in g.neighborhood(v).iter() {
        out.apply_sqrt_i_z(u);
    }
    out.apply_sqrt_minus_i_x(v);
    out
}

/// One random (graph, searched clique, vertex) trial of the local-complementation rule.
/// Returns the clique size, or a description of the first failed check.
pub fn lc_rule_trial(rng: &mut impl Rng) -> Result<usize, String> {
    use qgraph::codesearch::{build_super_graph, find_cliques_with, CliqueMode, SearchLimits};
    use qgraph::graphstate::{code_invariants, same_span};
    use std::time::{Duration, Instant};

    let n = rng.gen_range(3..=8);
    let d = if n >= 5 && rng.gen_bool(0.4) { 3 } else { 2 };
    let p = rng.gen_range(0.3..0.8);
    let g = random_graph(rng, n, p);
    let sg = build_super_graph(&g, d).map_err(|e| e.to_string())?;
    let limits = SearchLimits { deadline: Some(Instant::now() + Duration::from_millis(500)), max_results: None };
    let clique = find_cliques_with(&sg, CliqueMode::Max, limits).map_err(|e| e.to_string())?.cliques.remove(0);
    let v = rng.gen_range(0..n);
    let moved = clique.lc_transport(v).map_err(|e| e.to_string())?;
    if moved.graph != g.local_complement(v).unwrap() {
        return Err("transported clique is not attached to the complemented graph".into());
    }
    if let Err(f) = moved.revalidate().unwrap() {
        return Err(format!("conditions fail after transport at {v} on {g:?}: {f}"));
    }
    let before: Vec<StateVector> =
        clique.members.iter().map(|&c| apply_lc_unitary(&g, v, &StateVector::basis_state(&g, c).unwrap())).collect();
    let after: Vec<StateVector> = moved.members.iter().map(|&c| StateVector::basis_state(&moved.graph, c).unwrap()).collect();
    if !same_span(&after, &before) {
        return Err(format!("U P U† differs from the transported projector at {v} on {g:?}"));
    }
    if code_invariants(&g, &clique.members).unwrap() != code_invariants(&moved.graph, &moved.members).unwrap() {
        return Err("invariants changed under local complementation".into());
    }
    Ok(clique.size())
}

/// One random stabilizer through standard form and the graph conversion.
pub fn standard_form_trial(rng: &mut impl Rng) -> Result<(), String> {
    use qgraph::stabilizer::{group_to_stabilizer, replay_generators, stabilizer_to_graph, standard_form};

    let n = rng.gen_range(1..=8);
    let r = rng.gen_range(1..=n);
    let cm = random_stabilizer(rng, n, r);
    let sf = standard_form(&cm).map_err(|e| format!("{cm:?}: {e}"))?;
    if binary_replay(&cm, &sf.transforms) != sf.assemble() {
        return Err(format!("{cm:?}: binary replay differs from the standard form"));
    }
    let replayed = replay_generators(cm.rows(), &sf.transforms);
    if replayed != sf.rows {
        return Err(format!("{cm:?}: signed replay differs"));
    }
    if !sf.d.is_symmetric() {
        return Err(format!("{cm:?}: D not symmetric"));
    }
    let code = stabilizer_to_graph(&cm).map_err(|e| format!("{cm:?}: {e}"))?;
    let back = group_to_stabilizer(&code.graph, &code.group).map_err(|e| e.to_string())?;
    if back.k() != cm.k() || !graph_code_stabilized_by(&code.group, &back) {
        return Err(format!("{cm:?}: group_to_stabilizer does not stabilize the graph code"));
    }
    if n <= 7 && !code_matches_graph_form(&cm, &code) {
        return Err(format!("{cm:?}: recorded transforms do not carry the code onto its graph form"));
    }
    // the round trip through the group's own stabilizer lands on the same graph code
    let again = stabilizer_to_graph(&back).map_err(|e| e.to_string())?;
    if n <= 7 && !code_matches_graph_form(&back, &again) {
        return Err(format!("{cm:?}: second conversion fails"));
    }
    Ok(())
}
