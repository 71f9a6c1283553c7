//! Explicit local-Clifford-plus-permutation equivalence between two stabilizer codes.
//!
//! Backtracking assigns each qubit of the first code a target qubit and one of the six
//! single-qubit symplectic maps; a partial assignment survives only if the multisets of
//! restricted stabilizer patterns agree on the assigned qubits. Signs are fixed at the
//! end by a Pauli correction.

use std::time::Instant;

use super::clifford::{conjugate_all, Transform};
use super::CheckMatrix;
use crate::error::{Error, Result};
use crate::gf2::{span, Gf2Matrix, VertexSet};
use crate::graphstate::PauliOperator;

pub const WITNESS_MAX_QUBITS: usize = 10;

/// The six invertible maps on one qubit's `(x, z)` bits, i.e. the letter permutations
/// of `{X, Y, Z}`, named by the images of `X` and `Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalSymplectic {
    Identity,
    /// `X ↦ Y, Z ↦ Z`
    S,
    /// `X ↦ Z, Z ↦ X`
    H,
    /// `X ↦ X, Z ↦ Y`
    Hsh,
    /// `X ↦ Y, Z ↦ X`
    Sh,
    /// `X ↦ Z, Z ↦ Y`
    Hs,
}

impl LocalSymplectic {
    pub const ALL: [LocalSymplectic; 6] = [Self::Identity, Self::S, Self::H, Self::Hsh, Self::Sh, Self::Hs];

    /// Images of `X = (1,0)` and `Z = (0,1)` as `(x, z)` bit pairs.
    fn images(self) -> [(bool, bool); 2] {
        const X: (bool, bool) = (true, false);
        const Y: (bool, bool) = (true, true);
        const Z: (bool, bool) = (false, true);
        match self {
            Self::Identity => [X, Z],
            Self::S => [Y, Z],
            Self::H => [Z, X],
            Self::Hsh => [X, Y],
            Self::Sh => [Y, X],
            Self::Hs => [Z, Y],
        }
    }

    #[inline]
    fn apply(self, x: bool, z: bool) -> (bool, bool) {
        let [ix, iz] = self.images();
        ((x && ix.0) ^ (z && iz.0), (x && ix.1) ^ (z && iz.1))
    }

    /// A gate sequence realizing the map by conjugation.
    pub fn gates(self, qubit: usize) -> Vec<Transform> {
        let h = Transform::Hadamard { qubit };
        let s = Transform::Phase { qubit };
        match self {
            Self::Identity => vec![],
            Self::S => vec![s],
            Self::H => vec![h],
            Self::Hsh => vec![h.clone(), s, h],
            Self::Sh => vec![s, h],
            Self::Hs => vec![h, s],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness {
    /// Qubit `q` of the first code goes to qubit `perm[q]` of the second.
    pub perm: Vec<usize>,
    pub maps: Vec<LocalSymplectic>,
    /// `U` with `U · code(first) = code(second)`, including the sign correction.
    pub transforms: Vec<Transform>,
}

fn elements(cm: &CheckMatrix) -> Vec<(u64, u64)> {
    let n = cm.n();
    // span over the (x | z) pair packed as one 2n-bit set
    let gens: Vec<VertexSet> =
        cm.rows().iter().map(|p| VertexSet::from_bits(2 * n, p.x.bits() | p.z.bits() << n).expect("2n ≤ 64")).collect();
    let mask = (1u64 << n) - 1;
    span(&gens, 2 * n).into_iter().map(|v| (v.bits() & mask, v.bits() >> n)).collect()
}

struct Search<'a> {
    n: usize,
    first: &'a [(u64, u64)],
    second: &'a [(u64, u64)],
    perm: Vec<usize>,
    maps: Vec<LocalSymplectic>,
    used: u64,
    deadline: Option<Instant>,
    nodes: u64,
    timed_out: bool,
}

impl Search<'_> {
    /// Mapped patterns of the first code restricted to the assigned qubits `0..=q`.
    fn first_patterns(&self, q: usize) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = self
            .first
            .iter()
            .map(|&(x, z)| {
                let (mut px, mut pz) = (0u64, 0u64);
                for src in 0..=q {
                    let (bx, bz) = self.maps[src].apply(x >> src & 1 == 1, z >> src & 1 == 1);
                    px |= (bx as u64) << self.perm[src];
                    pz |= (bz as u64) << self.perm[src];
                }
                (px, pz)
            })
            .collect();
        out.sort_unstable();
        out
    }

    fn second_patterns(&self, targets: u64) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = self.second.iter().map(|&(x, z)| (x & targets, z & targets)).collect();
        out.sort_unstable();
        out
    }

    fn dfs(&mut self, q: usize) -> bool {
        if q == self.n {
            return true;
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(512) && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.timed_out = true;
        }
        if self.timed_out {
            return false;
        }
        for t in 0..self.n {
            if self.used >> t & 1 == 1 {
                continue;
            }
            let targets = self.used | 1 << t;
            let want = self.second_patterns(targets);
            for m in LocalSymplectic::ALL {
                self.perm[q] = t;
                self.maps[q] = m;
                if self.first_patterns(q) == want {
                    self.used = targets;
                    if self.dfs(q + 1) {
                        return true;
                    }
                    self.used &= !(1 << t);
                }
            }
        }
        false
    }
}

/// Solves `M v = b` over GF(2); `None` if inconsistent.
fn solve(m: &Gf2Matrix, b: &[bool]) -> Option<u128> {
    let cols = m.ncols();
    let aug =
        Gf2Matrix::from_bit_rows(m.rows().iter().zip(b).map(|(&r, &bi)| r | (bi as u128) << cols).collect(), cols + 1).ok()?;
    let rr = aug.rref();
    let mut v = 0u128;
    for (i, &p) in rr.pivots.iter().enumerate() {
        if p == cols {
            return None;
        }
        if rr.matrix.get(i, cols) {
            v |= 1 << p;
        }
    }
    Some(v)
}

/// Searches for `U = (sign fix) · π · ⊗ M_q` mapping `a`'s code onto `b`'s.
/// `Ok(None)` means no witness exists; a deadline hit is an error.
pub fn find_equivalence_witness(
    a: &CheckMatrix,
    b: &CheckMatrix,
    deadline: Option<Instant>,
) -> Result<Option<EquivalenceWitness>> {
    let n = a.n();
    if b.n() != n {
        return Err(Error::DimensionMismatch { left: n, right: b.n() });
    }
    if n > WITNESS_MAX_QUBITS {
        return Err(Error::Unsupported { what: "equivalence witness search", n, max: WITNESS_MAX_QUBITS });
    }
    if a.rows().len() != b.rows().len() {
        return Ok(None);
    }
    let (ea, eb) = (elements(a), elements(b));
    let mut search = Search {
        n,
        first: &ea,
        second: &eb,
        perm: vec![0; n],
        maps: vec![LocalSymplectic::Identity; n],
        used: 0,
        deadline,
        nodes: 0,
        timed_out: false,
    };
    let found = search.dfs(0);
    if search.timed_out {
        return Err(Error::Verification("equivalence witness search timed out".into()));
    }
    if !found {
        return Ok(None);
    }
    let (perm, maps) = (search.perm, search.maps);
    let mut transforms: Vec<Transform> = maps.iter().enumerate().flat_map(|(q, m)| m.gates(q)).collect();
    transforms.push(Transform::Permute { perm: perm.clone() });

    // signs: express each generator of b through the mapped generators of a
    let mapped: Vec<PauliOperator> = a.rows().iter().map(|p| conjugate_all(p, &transforms)).collect();
    let basis = Gf2Matrix::from_bit_rows(mapped.iter().map(|p| p.x.bits() as u128 | (p.z.bits() as u128) << n).collect(), 2 * n)?
        .transpose();
    let mut flips = Vec::with_capacity(b.rows().len());
    for target in b.rows() {
        let want: Vec<bool> = (0..2 * n).map(|c| if c < n { target.x.contains(c) } else { target.z.contains(c - n) }).collect();
        let coeffs = solve(&basis, &want).ok_or_else(|| Error::Verification("mapped groups differ".into()))?;
        let product =
            (0..mapped.len()).filter(|&i| coeffs >> i & 1 == 1).fold(PauliOperator::identity(n), |acc, i| acc * mapped[i]);
        flips.push(product.phase != target.phase);
    }
    if flips.iter().any(|&f| f) {
        // Q anticommutes with exactly the flipped generators: qz·gx + qx·gz = flip
        let sym =
            Gf2Matrix::from_bit_rows(b.rows().iter().map(|p| p.z.bits() as u128 | (p.x.bits() as u128) << n).collect(), 2 * n)?;
        let q = solve(&sym, &flips).ok_or_else(|| Error::Verification("sign correction unsolvable".into()))?;
        let qx = VertexSet::from_bits(n, (q & ((1u128 << n) - 1)) as u64)?;
        let qz = VertexSet::from_bits(n, (q >> n) as u64)?;
        transforms.push(Transform::PauliCorrection { pauli: PauliOperator::new(qx, qz, crate::graphstate::Phase::ONE)? });
    }
    Ok(Some(EquivalenceWitness { perm, maps, transforms }))
}

#[cfg(test)]
mod tests {
    use super::super::tests::five_qubit;
    use super::super::{apply_transforms_to_state, stabilizer_to_graph};
    use super::*;
    use crate::graphstate::StateVector;

    #[test]
    fn local_maps_match_gates() {
        for m in LocalSymplectic::ALL {
            for (x, z) in [(true, false), (false, true), (true, true)] {
                let p = PauliOperator::hermitian(
                    VertexSet::from_bits(1, x as u64).unwrap(),
                    VertexSet::from_bits(1, z as u64).unwrap(),
                );
                let img = conjugate_all(&p, &m.gates(0));
                assert_eq!((img.x.contains(0), img.z.contains(0)), m.apply(x, z), "{m:?}");
            }
        }
    }

    /// The witness maps code(a) into code(b): U|ψ⟩ is stabilized by b for a basis of a.
    fn check_witness(a: &CheckMatrix, b: &CheckMatrix, w: &EquivalenceWitness) {
        let code = stabilizer_to_graph(a).unwrap();
        let inv = super::super::invert_transforms(&code.transforms);
        for &c in &code.group.members {
            let psi = apply_transforms_to_state(&StateVector::basis_state(&code.graph, c).unwrap(), &inv).unwrap();
            let img = apply_transforms_to_state(&psi, &w.transforms).unwrap();
            for s in b.rows() {
                assert_eq!(img.applied(s), img);
            }
        }
    }

    #[test]
    fn five_qubit_code_equals_its_graph_form() {
        let a = five_qubit();
        let code = stabilizer_to_graph(&a).unwrap();
        let b = super::super::group_to_stabilizer(&code.graph, &code.group).unwrap();
        let w = find_equivalence_witness(&a, &b, None).unwrap().expect("equivalent");
        check_witness(&a, &b, &w);
        // a sign-flipped relabeled copy is still equivalent
        let shifted = CheckMatrix::parse_text("-IXZZX\nXIXZZ\nZXIXZ\n-ZZXIX").unwrap();
        let w2 = find_equivalence_witness(&a, &shifted, None).unwrap().expect("equivalent");
        check_witness(&a, &shifted, &w2);
    }

    #[test]
    fn inequivalent_codes_have_no_witness() {
        let a = CheckMatrix::parse_text("XXXX\nZZZZ").unwrap();
        let b = CheckMatrix::parse_text("XXII\nZZII").unwrap();
        assert!(find_equivalence_witness(&a, &b, None).unwrap().is_none());
    }
}
