//! Standard form `[I_r, A | D + A Eᵀ, E]` and the graph/coding-group form of a
//! stabilizer code.

use super::clifford::{conjugate, Transform};
use super::CheckMatrix;
use crate::codesearch::CodingClique;
use crate::error::{Error, Result};
use crate::gf2::{solve_even_overlap, Gf2Matrix, RowOp, VertexSet};
use crate::graph::Graph;
use crate::graphstate::{certified_distance, code_invariants, CodeInvariants, PauliOperator};

#[derive(Clone, Debug)]
pub struct StandardForm {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    /// `r × k`
    pub a: Gf2Matrix,
    /// `r × r`, symmetric
    pub d: Gf2Matrix,
    /// `r × k`
    pub e: Gf2Matrix,
    /// Replaying these on the input generators yields [`StandardForm::rows`].
    pub transforms: Vec<Transform>,
    /// Transformed generators, with their signs.
    pub rows: Vec<PauliOperator>,
}

impl StandardForm {
    /// `[I_r, A | D + A Eᵀ, E]` as an `r × 2n` matrix.
    pub fn assemble(&self) -> Gf2Matrix {
        let x = Gf2Matrix::identity(self.r).hstack(&self.a).expect("r rows");
        let z1 = self.d.add(&self.a.mul(&self.e.transpose()).expect("shapes")).expect("shapes");
        let z = z1.hstack(&self.e).expect("r rows");
        x.hstack(&z).expect("r rows")
    }
}

fn apply_row_ops(rows: &mut [PauliOperator], ops: &[RowOp]) {
    for &op in ops {
        match op {
            RowOp::Swap(a, b) => rows.swap(a, b),
            RowOp::Add { from, to } => rows[to] = rows[to] * rows[from],
        }
    }
}

/// Applies a transform log to a generator list: row operations recombine generators,
/// every other transform conjugates them.
pub fn replay_generators(rows: &[PauliOperator], log: &[Transform]) -> Vec<PauliOperator> {
    let mut rows = rows.to_vec();
    for t in log {
        match t {
            Transform::RowOps { ops } => apply_row_ops(&mut rows, ops),
            other => {
                for r in rows.iter_mut() {
                    *r = conjugate(r, other);
                }
            }
        }
    }
    rows
}

fn x_matrix(rows: &[PauliOperator], n: usize) -> Gf2Matrix {
    Gf2Matrix::from_bit_rows(rows.iter().map(|p| p.x.bits() as u128).collect(), n).expect("n ≤ 64")
}

fn offset_ops(ops: &[RowOp], offset: usize) -> Vec<RowOp> {
    ops.iter()
        .map(|&op| match op {
            RowOp::Swap(a, b) => RowOp::Swap(a + offset, b + offset),
            RowOp::Add { from, to } => RowOp::Add { from: from + offset, to: to + offset },
        })
        .collect()
}

pub fn standard_form(cm: &CheckMatrix) -> Result<StandardForm> {
    let n = cm.n();
    let r = cm.rows().len();
    let k = n - r;
    let mut rows = cm.rows().to_vec();
    let mut log = Vec::new();
    let mut push = |rows: &mut Vec<PauliOperator>, t: Transform| {
        *rows = replay_generators(rows, std::slice::from_ref(&t));
        log.push(t);
    };

    // eliminate on the X block
    let first = x_matrix(&rows, n).rref();
    if !first.ops.is_empty() {
        push(&mut rows, Transform::RowOps { ops: first.ops.clone() });
    }
    let r1 = first.rank;

    // rows without X part: full rank on the non-pivot Z columns; Hadamard their pivots
    if r1 < r {
        let free: Vec<usize> = (0..n).filter(|c| !first.pivots.contains(c)).collect();
        let lower = Gf2Matrix::from_bit_rows(rows[r1..].iter().map(|p| p.z.bits() as u128).collect(), n)?;
        let second = lower.rref_on_columns(&free);
        if second.rank != r - r1 {
            return Err(Error::DependentRows);
        }
        if !second.ops.is_empty() {
            push(&mut rows, Transform::RowOps { ops: offset_ops(&second.ops, r1) });
        }
        for &q in &second.pivots {
            push(&mut rows, Transform::Hadamard { qubit: q });
        }
    }

    // full-rank X block: reduce and move the pivots to the front
    let third = x_matrix(&rows, n).rref();
    if third.rank != r {
        return Err(Error::DependentRows);
    }
    if !third.ops.is_empty() {
        push(&mut rows, Transform::RowOps { ops: third.ops.clone() });
    }
    let mut perm = vec![0usize; n];
    for (i, &p) in third.pivots.iter().enumerate() {
        perm[p] = i;
    }
    for (j, q) in (0..n).filter(|c| !third.pivots.contains(c)).enumerate() {
        perm[q] = r + j;
    }
    if perm.iter().enumerate().any(|(q, &p)| q != p) {
        push(&mut rows, Transform::Permute { perm });
    }

    let sym = Gf2Matrix::from_bit_rows(rows.iter().map(|p| p.x.bits() as u128 | (p.z.bits() as u128) << n).collect(), 2 * n)?;
    let x = sym.column_block(0, n);
    debug_assert_eq!(x.column_block(0, r), Gf2Matrix::identity(r));
    let a = x.column_block(r, k);
    let z1 = sym.column_block(n, r);
    let e = sym.column_block(n + r, k);
    let d = z1.add(&a.mul(&e.transpose())?)?;
    if !d.is_symmetric() {
        return Err(Error::NonCommuting(0, 0));
    }
    Ok(StandardForm { n, r, k, a, d, e, transforms: log, rows })
}

/// A stabilizer code in graph form: the graph, its coding group, and the local
/// Clifford log `U` with `U · code(input) = span{Z_C|Γ⟩ : C ∈ group}`.
#[derive(Clone, Debug)]
pub struct GraphCode {
    pub graph: Graph,
    pub group: CodingClique,
    pub transforms: Vec<Transform>,
    pub standard_form: StandardForm,
}

pub fn stabilizer_to_graph(cm: &CheckMatrix) -> Result<GraphCode> {
    stabilizer_to_graph_with(cm, None)
}

/// As [`stabilizer_to_graph`] with a chosen symmetric `k × k` matrix `F`.
pub fn stabilizer_to_graph_with(cm: &CheckMatrix, f: Option<&Gf2Matrix>) -> Result<GraphCode> {
    let sf = standard_form(cm)?;
    let (n, r, k) = (sf.n, sf.r, sf.k);
    let f = match f {
        Some(f) => {
            if f.nrows() != k || f.ncols() != k || !f.is_symmetric() {
                return Err(Error::Parse("F must be a symmetric k×k matrix".into()));
            }
            f.clone()
        }
        None => Gf2Matrix::zeros(k, k),
    };
    let af = sf.a.mul(&f)?;
    let top_left = sf.d.add(&af.mul(&sf.a.transpose())?)?;
    let top_right = sf.e.add(&af)?;
    let gamma = top_left.hstack(&top_right)?.vstack(&top_right.transpose().hstack(&f)?)?;

    let mut transforms = sf.transforms.clone();
    let mut rows = sf.rows.clone();
    let mut adj = Vec::with_capacity(n);
    for m in 0..n {
        if gamma.get(m, m) {
            let t = Transform::PhaseDagger { qubit: m };
            rows = replay_generators(&rows, std::slice::from_ref(&t));
            transforms.push(t);
        }
        let row = gamma.row(m) as u64 & !(1u64 << m);
        adj.push(row);
    }
    let graph = Graph::from_adjacency(adj)?;

    // generator a is ±G_a Π_c G_{r+c}^{A_ac}; Z on the negative ones fixes the signs
    let mut flips = VertexSet::empty(n);
    for (a, row) in rows.iter().enumerate() {
        let mut s = VertexSet::singleton(n, a)?;
        for c in 0..k {
            if sf.a.get(a, c) {
                s.insert(r + c);
            }
        }
        let product = PauliOperator::graph_stabilizer(&graph, s);
        if !product.same_up_to_phase(row) {
            return Err(Error::Verification(format!("generator {a} does not match its graph form")));
        }
        if product.phase != row.phase {
            flips.insert(a);
        }
    }
    if !flips.is_empty() {
        transforms.push(Transform::PauliCorrection { pauli: PauliOperator::z_on(flips) });
    }

    // C_m: rows of [Aᵀ, I_k]
    let generators: Vec<VertexSet> = (0..k)
        .map(|m| {
            let mut c = VertexSet::singleton(n, r + m).expect("in range");
            for a in 0..r {
                if sf.a.get(a, m) {
                    c.insert(a);
                }
            }
            c
        })
        .collect();
    let members = crate::gf2::span(&generators, n);
    let d = if k == 0 {
        (1..1u64 << n).map(|s| (s | graph.neighborhood_bits(s)).count_ones() as usize).min().unwrap_or(n)
    } else {
        certified_distance(&graph, &members)?.expect("K ≥ 2")
    };
    let group = CodingClique::from_generators(graph.clone(), d, generators)?;
    Ok(GraphCode { graph, group, transforms, standard_form: sf })
}

/// Stabilizer generators `G_{S_i}` for a coding group, `S_i` spanning the solutions
/// of `|S ∩ C| even` over the group generators.
pub fn group_to_stabilizer(g: &Graph, group: &CodingClique) -> Result<CheckMatrix> {
    if !group.is_closed() {
        return Err(Error::NotAGroup);
    }
    let n = g.n();
    let gens = match &group.generators {
        Some(gens) => gens.clone(),
        None => {
            let m = Gf2Matrix::from_bit_rows(group.members.iter().map(|c| c.bits() as u128).collect(), n)?;
            let rr = m.rref();
            (0..rr.rank).map(|i| VertexSet::from_bits(n, rr.matrix.row(i) as u64)).collect::<Result<_>>()?
        }
    };
    let solutions = solve_even_overlap(&gens, n)?;
    let rows = solutions.iter().map(|&s| PauliOperator::graph_stabilizer(g, s)).collect();
    CheckMatrix::with_qubits(n, rows)
}

/// `G_a Π_c (G_{r+c})^{A_ac}` for `a < r`.
pub fn graph_generators(g: &Graph, sf: &StandardForm) -> Result<Vec<PauliOperator>> {
    if g.n() != sf.n {
        return Err(Error::DimensionMismatch { left: g.n(), right: sf.n });
    }
    (0..sf.r)
        .map(|a| {
            let mut s = VertexSet::singleton(sf.n, a)?;
            for c in 0..sf.k {
                if sf.a.get(a, c) {
                    s.insert(sf.r + c);
                }
            }
            Ok(PauliOperator::graph_stabilizer(g, s))
        })
        .collect()
}

/// Weight distribution plus frequency series; equal for equivalent codes.
pub fn equivalence_fingerprint(g: &Graph, basis: &[VertexSet]) -> Result<CodeInvariants> {
    code_invariants(g, basis)
}
