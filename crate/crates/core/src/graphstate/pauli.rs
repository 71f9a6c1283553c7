use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::gf2::VertexSet;
use crate::graph::Graph;

/// A fourth root of unity `i^k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_power(k: i64) -> Phase {
        Phase(k.rem_euclid(4) as u8)
    }

    /// `(-1)^odd`
    #[inline]
    pub fn sign(odd: bool) -> Phase {
        Phase(if odd { 2 } else { 0 })
    }

    #[inline]
    pub fn power(self) -> u8 {
        self.0
    }

    pub fn conj(self) -> Phase {
        Phase((4 - self.0) % 4)
    }

    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(2)
    }

    pub fn to_complex(self) -> Complex<i64> {
        match self.0 {
            0 => Complex::new(1, 0),
            1 => Complex::new(0, 1),
            2 => Complex::new(-1, 0),
            _ => Complex::new(0, -1),
        }
    }
}

impl Mul for Phase {
    type Output = Phase;
    #[inline]
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) & 3)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["+", "+i", "-", "-i"][self.0 as usize])
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["1", "i", "-1", "-i"][self.0 as usize])
    }
}

/// `phase · X_x Z_z` on `n` qubits (X applied after Z on each qubit, so `X Z = -iY`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    pub x: VertexSet,
    pub z: VertexSet,
    pub phase: Phase,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self { x: VertexSet::empty(n), z: VertexSet::empty(n), phase: Phase::ONE }
    }

    pub fn new(x: VertexSet, z: VertexSet, phase: Phase) -> Result<Self> {
        if x.n() != z.n() {
            return Err(Error::DimensionMismatch { left: x.n(), right: z.n() });
        }
        Ok(Self { x, z, phase })
    }

    /// The Hermitian representative `i^{|x∩z|} X_x Z_z`, i.e. a plain tensor product of
    /// `X`, `Y`, `Z` letters with sign `+`.
    pub fn hermitian(x: VertexSet, z: VertexSet) -> Self {
        assert_eq!(x.n(), z.n());
        Self { x, z, phase: Phase::from_power((x & z).len() as i64) }
    }

    pub fn z_on(s: VertexSet) -> Self {
        Self { x: VertexSet::empty(s.n()), z: s, phase: Phase::ONE }
    }

    pub fn x_on(s: VertexSet) -> Self {
        Self { x: s, z: VertexSet::empty(s.n()), phase: Phase::ONE }
    }

    /// Vertex stabilizer `G_a = X_a Z_{N_a}`.
    pub fn vertex_stabilizer(g: &Graph, a: usize) -> Self {
        Self::new(VertexSet::singleton(g.n(), a).expect("vertex in range"), g.neighborhood(a), Phase::ONE)
            .expect("same dimension")
    }

    /// `G_S = Π_{a∈S} G_a`, multiplied in ascending vertex order.
    pub fn graph_stabilizer(g: &Graph, s: VertexSet) -> Self {
        s.iter().fold(Self::identity(g.n()), |acc, a| acc * Self::vertex_stabilizer(g, a))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.x.n()
    }

    pub fn support(&self) -> VertexSet {
        self.x | self.z
    }

    pub fn weight(&self) -> usize {
        self.support().len()
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x.is_empty() && self.z.is_empty()
    }

    pub fn is_hermitian(&self) -> bool {
        (self.phase.power() as usize + (self.x & self.z).len()).is_multiple_of(2)
    }

    pub fn commutes_with(&self, other: &PauliOperator) -> bool {
        ((self.x & other.z).len() + (self.z & other.x).len()).is_multiple_of(2)
    }

    pub fn same_up_to_phase(&self, other: &PauliOperator) -> bool {
        self.x == other.x && self.z == other.z
    }

    /// Phase `p` such that the operator equals `p · ⊗letters` with `Y` as a letter.
    pub fn letter_phase(&self) -> Phase {
        self.phase * Phase::from_power(-((self.x & self.z).len() as i64))
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    pub fn scaled(mut self, phase: Phase) -> Self {
        self.phase = self.phase * phase;
        self
    }

    pub fn adjoint(&self) -> Self {
        // (X^x Z^z)† = Z^z X^x = (-1)^{|x∩z|} X^x Z^z
        let flip = Phase::sign((self.x & self.z).len() % 2 == 1);
        Self { phase: self.phase.conj() * flip, ..*self }
    }

    pub fn letter(&self, q: usize) -> char {
        match (self.x.contains(q), self.z.contains(q)) {
            (false, false) => 'I',
            (true, false) => 'X',
            (true, true) => 'Y',
            (false, true) => 'Z',
        }
    }

    pub fn letters(&self) -> String {
        (0..self.n()).map(|q| self.letter(q)).collect()
    }
}

impl Mul for PauliOperator {
    type Output = PauliOperator;

    /// `(p X^a Z^b)(q X^c Z^d) = pq (-1)^{|b∩c|} X^{a⊕c} Z^{b⊕d}`
    fn mul(self, rhs: PauliOperator) -> PauliOperator {
        let sign = Phase::sign((self.z & rhs.x).len() % 2 == 1);
        PauliOperator { x: self.x ^ rhs.x, z: self.z ^ rhs.z, phase: self.phase * rhs.phase * sign }
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter_phase(), self.letters())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

/// Parses `[+|-][i]LETTERS` over `{I, X, Y, Z}`; no sign means `+`.
impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (mut phase, rest) = match s.as_bytes().first() {
            Some(b'+') => (Phase::ONE, &s[1..]),
            Some(b'-') => (Phase::MINUS_ONE, &s[1..]),
            _ => (Phase::ONE, s),
        };
        let rest = match rest.strip_prefix('i') {
            Some(r) => {
                phase = phase * Phase::I;
                r
            }
            None => rest,
        };
        let n = rest.chars().count();
        if n == 0 || n > crate::gf2::MAX_VERTICES {
            return Err(Error::Parse(format!("bad Pauli string {s:?}")));
        }
        let mut x = VertexSet::empty(n);
        let mut z = VertexSet::empty(n);
        for (q, c) in rest.chars().enumerate() {
            match c.to_ascii_uppercase() {
                'I' | '_' => {}
                'X' => x.insert(q),
                'Z' => z.insert(q),
                'Y' => {
                    x.insert(q);
                    z.insert(q);
                }
                other => return Err(Error::Parse(format!("bad Pauli letter {other:?} in {s:?}"))),
            }
        }
        let y = (x & z).len() as i64;
        Ok(PauliOperator { x, z, phase: phase * Phase::from_power(y) })
    }
}

/// Every Hermitian Pauli (sign `+`, letters X, Y, Z) whose support has exactly `w` qubits.
/// Supports come in increasing bitmask order; letters cycle X, Y, Z on the lowest qubit first.
pub fn hermitian_paulis_of_weight(n: usize, w: usize) -> impl Iterator<Item = PauliOperator> {
    supports_of_size(n, w).flat_map(move |support| {
        let qubits: Vec<usize> = support.iter().collect();
        (0..3usize.pow(w as u32)).map(move |mut code| {
            let mut x = VertexSet::empty(n);
            let mut z = VertexSet::empty(n);
            for &q in &qubits {
                match code % 3 {
                    0 => x.insert(q),
                    1 => {
                        x.insert(q);
                        z.insert(q);
                    }
                    _ => z.insert(q),
                }
                code /= 3;
            }
            PauliOperator::hermitian(x, z)
        })
    })
}

/// Subsets of `0..n` with exactly `k` elements, increasing bitmask order (Gosper's hack).
pub fn supports_of_size(n: usize, k: usize) -> impl Iterator<Item = VertexSet> {
    assert!(n < 64);
    let limit = 1u64 << n;
    let mut next = if k > n { limit } else { (1u64 << k) - 1 };
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done || next >= limit {
            return None;
        }
        let cur = next;
        if cur == 0 {
            done = true;
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            next = (((r ^ cur) >> 2) / c) | r;
        }
        Some(VertexSet::raw(n, cur))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    #[test]
    fn parse_and_display() {
        let p: PauliOperator = "XZZXI".parse().unwrap();
        assert_eq!(p.letters(), "XZZXI");
        assert_eq!(p.to_string(), "+XZZXI");
        assert!(p.is_hermitian());
        let y: PauliOperator = "-Y".parse().unwrap();
        assert!(y.is_hermitian());
        assert_eq!(y.to_string(), "-Y");
        let iy: PauliOperator = "iY".parse().unwrap();
        assert!(!iy.is_hermitian());
        assert!("XQ".parse::<PauliOperator>().is_err());
    }

    #[test]
    fn multiplication_table() {
        let x: PauliOperator = "X".parse().unwrap();
        let y: PauliOperator = "Y".parse().unwrap();
        let z: PauliOperator = "Z".parse().unwrap();
        let iy: PauliOperator = "iY".parse().unwrap();
        let minus_iy: PauliOperator = "-iY".parse().unwrap();
        assert_eq!(x * y, "iZ".parse().unwrap());
        assert_eq!(y * z, "iX".parse().unwrap());
        assert_eq!(z * x, iy);
        assert_eq!(x * z, minus_iy);
        assert_eq!(y * y, PauliOperator::identity(1));
        assert!(!x.commutes_with(&z));
        let xx: PauliOperator = "XX".parse().unwrap();
        let zz: PauliOperator = "ZZ".parse().unwrap();
        assert!(xx.commutes_with(&zz));
    }

    #[test]
    fn vertex_stabilizers_commute() {
        let g = Graph::family(Family::Loop, 5).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                assert!(PauliOperator::vertex_stabilizer(&g, a).commutes_with(&PauliOperator::vertex_stabilizer(&g, b)));
            }
        }
        assert_eq!(PauliOperator::vertex_stabilizer(&g, 0).to_string(), "+XZIIZ");
    }

    #[test]
    fn hermitian_enumeration_counts() {
        for n in 0..6 {
            for w in 0..=n {
                let all: Vec<_> = hermitian_paulis_of_weight(n, w).collect();
                let expected = (1..=w).fold(1, |acc, i| acc * (n - w + i) / i) * 3usize.pow(w as u32);
                assert_eq!(all.len(), expected);
                assert!(all.iter().all(|p| p.is_hermitian() && p.weight() == w));
            }
        }
        assert_eq!(supports_of_size(3, 4).count(), 0);
        assert_eq!(supports_of_size(3, 0).count(), 1);
    }
}
