//! Knill–Laflamme verification of codes spanned by graph-state basis vectors.

use std::collections::HashMap;

use super::engine::{overlap_with, pauli_pushthrough};
use super::pauli::{hermitian_paulis_of_weight, PauliOperator};
use super::state::{StateVector, STATE_MAX_QUBITS};
use crate::error::{Error, Result};
use crate::gf2::VertexSet;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// `⟨Γ_Ci|E|Γ_Cj⟩ ≠ 0` for `i ≠ j`.
    OffDiagonal,
    /// Off-diagonal entries vanish but `⟨Γ_Ci|E|Γ_Ci⟩ ≠ ⟨Γ_C1|E|Γ_C1⟩`.
    DiagonalMismatch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub error: PauliOperator,
    pub i: usize,
    pub j: usize,
    pub kind: ViolationKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Violation(Violation),
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }
}

pub(crate) fn check_basis(g: &Graph, basis: &[VertexSet]) -> Result<HashMap<u64, usize>> {
    let mut index = HashMap::with_capacity(basis.len());
    for (i, c) in basis.iter().enumerate() {
        if c.n() != g.n() {
            return Err(Error::DimensionMismatch { left: c.n(), right: g.n() });
        }
        if index.insert(c.bits(), i).is_some() {
            return Err(Error::DuplicateBasis(c.to_string()));
        }
    }
    Ok(index)
}

/// Hermitian Paulis of weight `0..d`, by increasing weight.
pub fn paulis_below_weight(n: usize, d: usize) -> impl Iterator<Item = PauliOperator> {
    (0..d.min(n + 1)).flat_map(move |w| hermitian_paulis_of_weight(n, w))
}

/// Checks `⟨Γ_Ci|E|Γ_Cj⟩ = f(E) δ_ij` for every Hermitian Pauli of weight `< d`.
pub fn kl_verify(g: &Graph, basis: &[VertexSet], d: usize) -> Result<Verdict> {
    let index = check_basis(g, basis)?;
    if basis.is_empty() {
        return Ok(Verdict::Accepted);
    }
    for e in paulis_below_weight(g.n(), d) {
        let (omega_image, sigma) = pauli_pushthrough(g, &e);
        if omega_image.is_empty() {
            let first = overlap_with(omega_image, sigma, e.x, basis[0], basis[0]);
            for (i, &c) in basis.iter().enumerate().skip(1) {
                if overlap_with(omega_image, sigma, e.x, c, c) != first {
                    return Ok(Verdict::Violation(Violation { error: e, i: 0, j: i, kind: ViolationKind::DiagonalMismatch }));
                }
            }
        } else {
            for (i, c) in basis.iter().enumerate() {
                if let Some(&j) = index.get(&(c.bits() ^ omega_image.bits())) {
                    return Ok(Verdict::Violation(Violation { error: e, i, j, kind: ViolationKind::OffDiagonal }));
                }
            }
        }
    }
    Ok(Verdict::Accepted)
}

/// The same check evaluated on dense state vectors (`n ≤ 12`), independent of the
/// push-through engine.
pub fn kl_verify_statevector(g: &Graph, basis: &[VertexSet], d: usize) -> Result<Verdict> {
    check_basis(g, basis)?;
    if g.n() > STATE_MAX_QUBITS {
        return Err(Error::Unsupported { what: "state-vector verification", n: g.n(), max: STATE_MAX_QUBITS });
    }
    let states: Vec<StateVector> = basis.iter().map(|&c| StateVector::basis_state(g, c)).collect::<Result<_>>()?;
    for e in paulis_below_weight(g.n(), d) {
        let images: Vec<StateVector> = states.iter().map(|s| s.applied(&e)).collect();
        let diag0 = states.first().map(|s| s.inner(&images[0]));
        for (i, si) in states.iter().enumerate() {
            for (j, img) in images.iter().enumerate() {
                let m = si.inner(img);
                if i != j && !m.is_zero() {
                    return Ok(Verdict::Violation(Violation { error: e, i, j, kind: ViolationKind::OffDiagonal }));
                }
            }
        }
        if let Some(d0) = diag0 {
            for (i, si) in states.iter().enumerate().skip(1) {
                let m = si.inner(&images[i]);
                if m.num != d0.num || m.sqrt2_pow != d0.sqrt2_pow {
                    return Ok(Verdict::Violation(Violation { error: e, i: 0, j: i, kind: ViolationKind::DiagonalMismatch }));
                }
            }
        }
    }
    Ok(Verdict::Accepted)
}

/// True iff no Pauli of weight `1..d` acts as a nonzero constant on the code.
pub fn is_pure(g: &Graph, basis: &[VertexSet], d: usize) -> Result<bool> {
    check_basis(g, basis)?;
    let Some(&c0) = basis.first() else {
        return Ok(true);
    };
    for w in 1..d.min(g.n() + 1) {
        for e in hermitian_paulis_of_weight(g.n(), w) {
            let (omega_image, sigma) = pauli_pushthrough(g, &e);
            if overlap_with(omega_image, sigma, e.x, c0, c0).is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Smallest weight carrying a Knill–Laflamme violation, i.e. the code distance.
/// `None` for one-dimensional codes, where no violation exists.
pub fn certified_distance(g: &Graph, basis: &[VertexSet]) -> Result<Option<usize>> {
    let index = check_basis(g, basis)?;
    if basis.len() < 2 {
        return Ok(None);
    }
    for w in 1..=g.n() {
        for e in hermitian_paulis_of_weight(g.n(), w) {
            let (omega_image, sigma) = pauli_pushthrough(g, &e);
            let bad = if omega_image.is_empty() {
                let first = overlap_with(omega_image, sigma, e.x, basis[0], basis[0]);
                basis.iter().any(|&c| overlap_with(omega_image, sigma, e.x, c, c) != first)
            } else {
                basis.iter().any(|c| index.contains_key(&(c.bits() ^ omega_image.bits())))
            };
            if bad {
                return Ok(Some(w));
            }
        }
    }
    unreachable!("a code of dimension ≥ 2 has a logical operator")
}
