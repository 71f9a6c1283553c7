//! The Clifford operations recorded in transform logs, acting on Pauli operators by
//! conjugation `P ↦ U P U†` and on state vectors by `|ψ⟩ ↦ U|ψ⟩`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{RowOp, VertexSet};
use crate::graphstate::{PauliOperator, Phase, StateVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Transform {
    /// Generator recombination; the code is unchanged.
    RowOps {
        ops: Vec<RowOp>,
    },
    Hadamard {
        qubit: usize,
    },
    /// `S = diag(1, i)`: `X ↦ Y ↦ -X`.
    Phase {
        qubit: usize,
    },
    /// `S† = diag(1, -i)`: `Y ↦ X ↦ -Y`, `Z ↦ Z`.
    PhaseDagger {
        qubit: usize,
    },
    ControlledZ {
        a: usize,
        b: usize,
    },
    /// Qubit `q` becomes qubit `perm[q]`.
    Permute {
        perm: Vec<usize>,
    },
    PauliCorrection {
        #[serde(serialize_with = "serialize_pauli")]
        pauli: PauliOperator,
    },
}

fn serialize_pauli<S: serde::Serializer>(p: &PauliOperator, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

fn set_bit(s: &mut VertexSet, q: usize, value: bool) {
    if value {
        s.insert(q);
    } else {
        s.remove(q);
    }
}

fn permute_set(s: VertexSet, perm: &[usize]) -> VertexSet {
    VertexSet::from_elements(s.n(), s.iter().map(|q| perm[q])).expect("permutation in range")
}

/// `U P U†` for a single transform.
pub fn conjugate(p: &PauliOperator, t: &Transform) -> PauliOperator {
    let mut out = *p;
    match t {
        Transform::RowOps { .. } => {}
        &Transform::Hadamard { qubit } => {
            // X^a Z^b -> Z^a X^b = (-1)^{ab} X^b Z^a
            let (a, b) = (p.x.contains(qubit), p.z.contains(qubit));
            set_bit(&mut out.x, qubit, b);
            set_bit(&mut out.z, qubit, a);
            out.phase = out.phase * Phase::sign(a && b);
        }
        &Transform::Phase { qubit } => {
            if p.x.contains(qubit) {
                out.phase = out.phase * Phase::I;
                out.z.toggle(qubit);
            }
        }
        &Transform::PhaseDagger { qubit } => {
            if p.x.contains(qubit) {
                out.phase = out.phase * Phase::MINUS_I;
                out.z.toggle(qubit);
            }
        }
        &Transform::ControlledZ { a, b } => {
            let (xa, xb) = (p.x.contains(a), p.x.contains(b));
            if xb {
                out.z.toggle(a);
            }
            if xa {
                out.z.toggle(b);
            }
            out.phase = out.phase * Phase::sign(xa && xb);
        }
        Transform::Permute { perm } => {
            out.x = permute_set(p.x, perm);
            out.z = permute_set(p.z, perm);
        }
        Transform::PauliCorrection { pauli } => {
            out.phase = out.phase * Phase::sign(!pauli.commutes_with(p));
        }
    }
    out
}

/// Conjugation by the whole log, applied in order.
pub fn conjugate_all(p: &PauliOperator, log: &[Transform]) -> PauliOperator {
    log.iter().fold(*p, |acc, t| conjugate(&acc, t))
}

fn inverse_perm(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (q, &p) in perm.iter().enumerate() {
        inv[p] = q;
    }
    inv
}

/// The unitary part of `log` inverted (row operations dropped).
pub fn invert_transforms(log: &[Transform]) -> Vec<Transform> {
    log.iter()
        .rev()
        .filter_map(|t| match t {
            Transform::RowOps { .. } => None,
            &Transform::Phase { qubit } => Some(Transform::PhaseDagger { qubit }),
            &Transform::PhaseDagger { qubit } => Some(Transform::Phase { qubit }),
            Transform::Permute { perm } => Some(Transform::Permute { perm: inverse_perm(perm) }),
            other => Some(other.clone()),
        })
        .collect()
}

fn apply_one(s: &mut StateVector, t: &Transform) -> Result<()> {
    match t {
        Transform::RowOps { .. } => {}
        &Transform::Hadamard { qubit } => s.apply_hadamard(qubit),
        &Transform::Phase { qubit } => s.apply_phase_gate(qubit, 1),
        &Transform::PhaseDagger { qubit } => s.apply_phase_gate(qubit, 3),
        &Transform::ControlledZ { a, b } => s.apply_controlled_z(a, b),
        Transform::Permute { perm } => {
            if perm.len() != s.n() {
                return Err(Error::DimensionMismatch { left: perm.len(), right: s.n() });
            }
            *s = s.permute_qubits(perm);
        }
        Transform::PauliCorrection { pauli } => s.apply_pauli(pauli),
    }
    Ok(())
}

/// `U|ψ⟩` for the unitary recorded in `log`.
pub fn apply_transforms_to_state(s: &StateVector, log: &[Transform]) -> Result<StateVector> {
    let mut out = s.clone();
    for t in log {
        apply_one(&mut out, t)?;
    }
    Ok(out)
}
