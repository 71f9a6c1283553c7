//! Exact dense state vectors, the oracle for the combinatorial engine.
//!
//! Amplitudes are Gaussian integers with a shared denominator `√2^k`, which covers
//! graph states, Pauli actions and the `√(±iP)` rotations used by local Clifford maps
//! without any rounding.

use num_complex::Complex;
use num_rational::Ratio;

use super::pauli::PauliOperator;
use crate::error::{Error, Result};
use crate::gf2::VertexSet;
use crate::graph::Graph;

pub const STATE_MAX_QUBITS: usize = 12;

type Gauss = Complex<i64>;

/// A Gaussian integer divided by `√2^sqrt2_pow`.
#[derive(Clone, Copy, Debug)]
pub struct Scaled {
    pub num: Complex<i128>,
    pub sqrt2_pow: u32,
}

impl Scaled {
    pub fn is_zero(&self) -> bool {
        self.num == Complex::new(0, 0)
    }

    /// `|value|^2` as an exact rational.
    pub fn norm_sqr(&self) -> Ratio<i128> {
        // |num|^2 / 2^sqrt2_pow
        Ratio::new(self.num.norm_sqr(), 1i128 << self.sqrt2_pow)
    }

    /// Exact value as `re + i im` rationals, if the power of `√2` is even.
    pub fn rational_parts(&self) -> Option<(Ratio<i128>, Ratio<i128>)> {
        if self.is_zero() {
            return Some((Ratio::from_integer(0), Ratio::from_integer(0)));
        }
        if self.sqrt2_pow % 2 == 1 {
            return None;
        }
        let d = 1i128 << (self.sqrt2_pow / 2);
        Some((Ratio::new(self.num.re, d), Ratio::new(self.num.im, d)))
    }

    /// True iff the value equals the Gaussian integer `target` exactly.
    pub fn equals(&self, target: Complex<i64>) -> bool {
        match self.rational_parts() {
            Some((re, im)) => re == Ratio::from_integer(target.re as i128) && im == Ratio::from_integer(target.im as i128),
            None => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Gauss>,
    sqrt2_pow: u32,
}

impl StateVector {
    fn check_size(n: usize) -> Result<()> {
        if n > STATE_MAX_QUBITS {
            return Err(Error::Unsupported { what: "state vector", n, max: STATE_MAX_QUBITS });
        }
        Ok(())
    }

    /// `|0...0⟩` in the computational basis; qubit `q` is bit `q` of the basis index `μ`.
    pub fn zero(n: usize) -> Result<Self> {
        Self::check_size(n)?;
        let mut amps = vec![Gauss::new(0, 0); 1 << n];
        amps[0] = Gauss::new(1, 0);
        Ok(Self { n, amps, sqrt2_pow: 0 })
    }

    /// `|Γ⟩ = 2^{-n/2} Σ_μ (-1)^{Σ_{a<b} Γ_ab μ_a μ_b} |μ⟩`
    pub fn graph_state(g: &Graph) -> Result<Self> {
        let n = g.n();
        Self::check_size(n)?;
        let edges = g.edges();
        let amps = (0..1u64 << n)
            .map(|mu| {
                let odd = edges.iter().filter(|&&(a, b)| mu >> a & mu >> b & 1 == 1).count() % 2 == 1;
                Gauss::new(if odd { -1 } else { 1 }, 0)
            })
            .collect();
        Ok(Self { n, amps, sqrt2_pow: n as u32 })
    }

    /// `|Γ_C⟩ = Z_C |Γ⟩`
    pub fn basis_state(g: &Graph, c: VertexSet) -> Result<Self> {
        let mut s = Self::graph_state(g)?;
        s.apply_pauli(&PauliOperator::z_on(c));
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> (&[Complex<i64>], u32) {
        (&self.amps, self.sqrt2_pow)
    }

    pub fn apply_pauli(&mut self, p: &PauliOperator) {
        assert_eq!(p.n(), self.n);
        let (x, z) = (p.x.bits() as usize, p.z.bits());
        let phase = p.phase.to_complex();
        let mut out = vec![Gauss::new(0, 0); self.amps.len()];
        for (mu, &a) in self.amps.iter().enumerate() {
            let odd = (mu as u64 & z).count_ones() % 2 == 1;
            let v = if odd { -a } else { a };
            out[mu ^ x] = v * phase;
        }
        self.amps = out;
    }

    pub fn applied(&self, p: &PauliOperator) -> Self {
        let mut s = self.clone();
        s.apply_pauli(p);
        s
    }

    /// `(I + i·sign·P)/√2` for a Pauli `P`, i.e. `√(±iP)` up to convention; `sign = ±1`.
    pub fn apply_pauli_rotation(&mut self, p: &PauliOperator, sign: i64) {
        let image = self.applied(p);
        let coeff = Gauss::new(0, sign);
        for (a, b) in self.amps.iter_mut().zip(image.amps) {
            *a += coeff * b;
        }
        self.sqrt2_pow += 1;
    }

    /// `√(-iX_q) = (I - iX_q)/√2`
    pub fn apply_sqrt_minus_i_x(&mut self, q: usize) {
        let x = PauliOperator::x_on(VertexSet::singleton(self.n, q).expect("qubit in range"));
        self.apply_pauli_rotation(&x, -1);
    }

    /// `√(iZ_q) = (I + iZ_q)/√2`
    pub fn apply_sqrt_i_z(&mut self, q: usize) {
        let z = PauliOperator::z_on(VertexSet::singleton(self.n, q).expect("qubit in range"));
        self.apply_pauli_rotation(&z, 1);
    }

    /// Hadamard on qubit `q`.
    pub fn apply_hadamard(&mut self, q: usize) {
        let bit = 1usize << q;
        let mut out = vec![Gauss::new(0, 0); self.amps.len()];
        for (mu, &a) in self.amps.iter().enumerate() {
            if mu & bit == 0 {
                out[mu] += a;
                out[mu | bit] += a;
            } else {
                out[mu & !bit] += a;
                out[mu] -= a;
            }
        }
        self.amps = out;
        self.sqrt2_pow += 1;
    }

    /// `diag(1, i^power)` on qubit `q`.
    pub fn apply_phase_gate(&mut self, q: usize, power: u8) {
        let phase = super::pauli::Phase::from_power(power as i64).to_complex();
        for (mu, a) in self.amps.iter_mut().enumerate() {
            if mu >> q & 1 == 1 {
                *a *= phase;
            }
        }
    }

    /// Controlled-`Z` between qubits `a` and `b`.
    pub fn apply_controlled_z(&mut self, a: usize, b: usize) {
        for (mu, amp) in self.amps.iter_mut().enumerate() {
            if mu >> a & mu >> b & 1 == 1 {
                *amp = -*amp;
            }
        }
    }

    /// Relabels qubit `q` as `perm[q]`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut out = vec![Gauss::new(0, 0); self.amps.len()];
        for (mu, &a) in self.amps.iter().enumerate() {
            let mut nu = 0usize;
            for (q, &p) in perm.iter().enumerate() {
                nu |= (mu >> q & 1) << p;
            }
            out[nu] = a;
        }
        Self { n: self.n, amps: out, sqrt2_pow: self.sqrt2_pow }
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &StateVector) -> Scaled {
        assert_eq!(self.n, other.n);
        let mut acc = Complex::<i128>::new(0, 0);
        for (a, b) in self.amps.iter().zip(&other.amps) {
            let prod = a.conj() * b;
            acc += Complex::new(prod.re as i128, prod.im as i128);
        }
        Scaled { num: acc, sqrt2_pow: self.sqrt2_pow + other.sqrt2_pow }
    }

    pub fn norm_sqr(&self) -> Ratio<i128> {
        self.inner(self).norm_sqr_of_real()
    }

    /// `⟨self|P|other⟩`
    pub fn expectation(&self, p: &PauliOperator, other: &StateVector) -> Scaled {
        self.inner(&other.applied(p))
    }
}

impl Scaled {
    fn norm_sqr_of_real(&self) -> Ratio<i128> {
        debug_assert_eq!(self.num.im, 0);
        // value = num / √2^k with k even for a norm
        let (re, _) = self.rational_parts().expect("norm has even power");
        re
    }
}

/// `Σ_j |⟨basis_j|φ⟩|²` for an orthonormal `basis`: equals `⟨φ|φ⟩` iff `φ` lies in the span.
pub fn projected_norm_sqr(basis: &[StateVector], phi: &StateVector) -> Ratio<i128> {
    basis.iter().map(|b| b.inner(phi).norm_sqr()).sum()
}

/// True iff the spans of two orthonormal families coincide.
pub fn same_span(a: &[StateVector], b: &[StateVector]) -> bool {
    a.len() == b.len() && b.iter().all(|phi| projected_norm_sqr(a, phi) == phi.norm_sqr())
}
