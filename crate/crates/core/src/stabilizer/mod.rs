//! Stabilizer codes: check matrices, standard form, and the conversion to and from
//! graphs with coding groups.

mod clifford;
mod standard;
mod witness;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, VertexSet};
use crate::graphstate::{PauliOperator, Phase};

pub use clifford::{apply_transforms_to_state, conjugate, conjugate_all, invert_transforms, Transform};
pub use standard::{
    equivalence_fingerprint, graph_generators, group_to_stabilizer, replay_generators, stabilizer_to_graph,
    stabilizer_to_graph_with, standard_form, GraphCode, StandardForm,
};
pub use witness::{find_equivalence_witness, EquivalenceWitness, LocalSymplectic, WITNESS_MAX_QUBITS};

/// Independent, pairwise commuting, Hermitian generators of a stabilizer group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CheckMatrix {
    n: usize,
    rows: Vec<PauliOperator>,
}

impl CheckMatrix {
    pub fn new(rows: Vec<PauliOperator>) -> Result<Self> {
        let n = rows.first().map(PauliOperator::n).ok_or_else(|| Error::Parse("no generators".into()))?;
        Self::with_qubits(n, rows)
    }

    /// Like [`CheckMatrix::new`] but allows an empty generator list (`k = n`).
    pub fn with_qubits(n: usize, rows: Vec<PauliOperator>) -> Result<Self> {
        for (i, r) in rows.iter().enumerate() {
            if r.n() != n {
                return Err(Error::DimensionMismatch { left: r.n(), right: n });
            }
            if !r.is_hermitian() {
                return Err(Error::NonHermitian(i));
            }
        }
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                if !rows[i].commutes_with(&rows[j]) {
                    return Err(Error::NonCommuting(i, j));
                }
            }
        }
        let cm = Self { n, rows };
        if cm.symplectic().rank() != cm.rows.len() {
            return Err(Error::DependentRows);
        }
        Ok(cm)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of logical qubits `n - r`.
    pub fn k(&self) -> usize {
        self.n - self.rows.len()
    }

    pub fn rows(&self) -> &[PauliOperator] {
        &self.rows
    }

    /// `[G_x | G_z]`, `x` in columns `0..n`, `z` in `n..2n`.
    pub fn symplectic(&self) -> Gf2Matrix {
        let rows = self.rows.iter().map(|p| p.x.bits() as u128 | (p.z.bits() as u128) << self.n).collect();
        Gf2Matrix::from_bit_rows(rows, 2 * self.n).expect("n ≤ 64")
    }

    /// Parses one generator per line (or comma/semicolon separated), e.g. `+XZZXI`.
    pub fn parse_text(text: &str) -> Result<Self> {
        let rows: Vec<PauliOperator> = text
            .split(['\n', ',', ';'])
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(PauliOperator::from_str)
            .collect::<Result<_>>()?;
        for (i, r) in rows.iter().enumerate() {
            if !r.letter_phase().is_real() {
                return Err(Error::NonHermitian(i));
            }
        }
        Self::new(rows)
    }

    pub fn to_text(&self) -> String {
        self.rows.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n")
    }

    pub fn from_json_rows(n: usize, rows: &[SymplecticRow]) -> Result<Self> {
        let ops = rows.iter().map(|r| r.to_pauli(n)).collect::<Result<_>>()?;
        Self::with_qubits(n, ops)
    }

    pub fn to_json_rows(&self) -> Vec<SymplecticRow> {
        self.rows.iter().map(SymplecticRow::from_pauli).collect()
    }
}

impl FromStr for CheckMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_text(s)
    }
}

impl fmt::Display for CheckMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for CheckMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CheckMatrix[{}]", self.rows.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", "))
    }
}

/// JSON generator form: `sign` in front of the letter product, 1-indexed supports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplecticRow {
    pub sign: i8,
    pub x: Vec<usize>,
    pub z: Vec<usize>,
}

impl SymplecticRow {
    pub fn from_pauli(p: &PauliOperator) -> Self {
        let sign = if p.letter_phase() == Phase::MINUS_ONE { -1 } else { 1 };
        Self { sign, x: p.x.labels(), z: p.z.labels() }
    }

    pub fn to_pauli(&self, n: usize) -> Result<PauliOperator> {
        let x = VertexSet::from_labels(n, &self.x)?;
        let z = VertexSet::from_labels(n, &self.z)?;
        let sign = match self.sign {
            1 => Phase::ONE,
            -1 => Phase::MINUS_ONE,
            s => return Err(Error::Parse(format!("sign must be 1 or -1, got {s}"))),
        };
        Ok(PauliOperator::hermitian(x, z).scaled(sign))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn five_qubit() -> CheckMatrix {
        CheckMatrix::parse_text("XZZXI\nIXZZX\nXIXZZ\nZXIXZ").unwrap()
    }

    pub(crate) fn steane() -> CheckMatrix {
        CheckMatrix::parse_text("IIIXXXX\nIXXIIXX\nXIXIXIX\nIIIZZZZ\nIZZIIZZ\nZIZIZIZ").unwrap()
    }

    #[test]
    fn parse_and_validate() {
        assert_eq!(five_qubit().k(), 1);
        assert_eq!(steane().k(), 1);
        assert!(matches!(CheckMatrix::parse_text("XI\nZI"), Err(Error::NonCommuting(0, 1))));
        assert!(matches!(CheckMatrix::parse_text("XX\nXX"), Err(Error::DependentRows)));
        assert!(matches!(CheckMatrix::parse_text("iXX"), Err(Error::NonHermitian(0))));
        let cm = CheckMatrix::parse_text("-XX, +ZZ").unwrap();
        assert_eq!(cm.to_text(), "-XX\n+ZZ");
    }

    #[test]
    fn json_round_trip() {
        let cm = CheckMatrix::parse_text("-XYZ\nZZI").unwrap();
        let rows = cm.to_json_rows();
        assert_eq!(rows[0], SymplecticRow { sign: -1, x: vec![1, 2], z: vec![2, 3] });
        assert_eq!(CheckMatrix::from_json_rows(3, &rows).unwrap(), cm);
    }
}
