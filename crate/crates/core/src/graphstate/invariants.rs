//! Local-unitary invariants: support enumerator `A_ω`, weight distribution `A_d`,
//! and frequency series `F_d(S)`.
//!
//! `Tr(E P)` vanishes unless `E ∝ G_x` for some `x ⊆ V` (a Pauli whose push-through
//! image `Ω` is empty), so the sum over `4^n` Paulis collapses to `2^n` terms:
//! `K² A_ω = Σ_{x : x ∪ N_x = ω} (Σ_{C} (-1)^{|x∩C|})²`.

use num_rational::Ratio;
use serde::Serialize;

use super::engine::overlap;
use super::kl::check_basis;
use super::pauli::hermitian_paulis_of_weight;
use crate::error::{Error, Result};
use crate::gf2::{solve_even_overlap, span, VertexSet};
use crate::graph::Graph;

pub type Rational = Ratio<i64>;

pub const ENUMERATOR_MAX_QUBITS: usize = 20;

/// `K² A_ω` for every support `ω`, indexed by bitmask.
pub fn support_enumerator(g: &Graph, basis: &[VertexSet]) -> Result<Vec<i64>> {
    check_basis(g, basis)?;
    let n = g.n();
    if n > ENUMERATOR_MAX_QUBITS {
        return Err(Error::Unsupported { what: "weight enumerator", n, max: ENUMERATOR_MAX_QUBITS });
    }
    let bits: Vec<u64> = basis.iter().map(|c| c.bits()).collect();
    let mut out = vec![0i64; 1 << n];
    for x in 0..1u64 << n {
        let s: i64 = bits.iter().map(|&c| if (x & c).count_ones() % 2 == 0 { 1 } else { -1 }).sum();
        if s != 0 {
            out[(x | g.neighborhood_bits(x)) as usize] += s * s;
        }
    }
    Ok(out)
}

fn normalizer(basis: &[VertexSet]) -> i64 {
    let k = basis.len() as i64;
    k * k
}

/// `(A_0, …, A_n)`, exact.
pub fn weight_distribution(g: &Graph, basis: &[VertexSet]) -> Result<Vec<Rational>> {
    let sup = support_enumerator(g, basis)?;
    let mut nums = vec![0i64; g.n() + 1];
    for (omega, v) in sup.iter().enumerate() {
        nums[omega.count_ones() as usize] += v;
    }
    let k2 = normalizer(basis);
    Ok(nums.into_iter().map(|v| Rational::new(v, k2)).collect())
}

/// `A_d` by direct summation of `|Tr(E P)|²` over all Hermitian Paulis, each trace
/// taken through the overlap engine. Exponential in `n`; used as a cross-check.
pub fn weight_distribution_bruteforce(g: &Graph, basis: &[VertexSet]) -> Result<Vec<Rational>> {
    check_basis(g, basis)?;
    let n = g.n();
    let k2 = normalizer(basis);
    let mut out = Vec::with_capacity(n + 1);
    for w in 0..=n {
        let mut total = 0i64;
        for e in hermitian_paulis_of_weight(n, w) {
            let mut re = 0i64;
            let mut im = 0i64;
            for &c in basis {
                if let Some(p) = overlap(g, c, &e, c) {
                    let z = p.to_complex();
                    re += z.re;
                    im += z.im;
                }
            }
            total += re * re + im * im;
        }
        out.push(Rational::new(total, k2));
    }
    Ok(out)
}

/// For a coding group: the weights `|S ∪ N_S|` of the `2^{n-k}` stabilizer elements `G_S`.
pub fn stabilizer_weight_histogram(g: &Graph, generators: &[VertexSet]) -> Result<Vec<u64>> {
    let solutions = solve_even_overlap(generators, g.n())?;
    let mut hist = vec![0u64; g.n() + 1];
    for s in span(&solutions, g.n()) {
        hist[(s | g.neighborhood_set(s)).len()] += 1;
    }
    Ok(hist)
}

/// `F_d(S)` for every `S` with `|S| = 0..=d`, each list sorted ascending.
pub fn frequency_series(g: &Graph, basis: &[VertexSet], d: usize) -> Result<Vec<Vec<Rational>>> {
    let sup = support_enumerator(g, basis)?;
    Ok(frequency_from_enumerator(&sup, g.n(), d, normalizer(basis)))
}

fn frequency_from_enumerator(sup: &[i64], n: usize, d: usize, k2: i64) -> Vec<Vec<Rational>> {
    let mut f: Vec<i64> = sup.iter().enumerate().map(|(w, &v)| if w.count_ones() as usize == d { v } else { 0 }).collect();
    // superset sums: f[S] = Σ_{ω ⊇ S} f[ω]
    for i in 0..n {
        let bit = 1usize << i;
        for mask in 0..f.len() {
            if mask & bit == 0 {
                f[mask] += f[mask | bit];
            }
        }
    }
    let mut by_size: Vec<Vec<i64>> = vec![Vec::new(); d.min(n) + 1];
    for (s, &v) in f.iter().enumerate() {
        let size = s.count_ones() as usize;
        if size <= d {
            by_size[size].push(v);
        }
    }
    by_size
        .into_iter()
        .map(|mut v| {
            v.sort_unstable();
            v.into_iter().map(|x| Rational::new(x, k2)).collect()
        })
        .collect()
}

/// Weight distribution together with the frequency series for every `d = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CodeInvariants {
    #[serde(serialize_with = "serialize_rationals")]
    pub weights: Vec<Rational>,
    /// `freq[d][s]`: sorted `F_d(S)` over all `S` with `|S| = s`.
    #[serde(serialize_with = "serialize_freq")]
    pub freq: Vec<Vec<Vec<Rational>>>,
}

pub fn code_invariants(g: &Graph, basis: &[VertexSet]) -> Result<CodeInvariants> {
    let sup = support_enumerator(g, basis)?;
    let k2 = normalizer(basis);
    let n = g.n();
    let mut nums = vec![0i64; n + 1];
    for (omega, v) in sup.iter().enumerate() {
        nums[omega.count_ones() as usize] += v;
    }
    let weights = nums.into_iter().map(|v| Rational::new(v, k2)).collect();
    let freq = (0..=n).map(|d| frequency_from_enumerator(&sup, n, d, k2)).collect();
    Ok(CodeInvariants { weights, freq })
}

pub fn format_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn serialize_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

fn serialize_freq<S: serde::Serializer>(v: &[Vec<Vec<Rational>>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strings: Vec<Vec<Vec<String>>> =
        v.iter().map(|d| d.iter().map(|l| l.iter().map(format_rational).collect()).collect()).collect();
    s.collect_seq(strings)
}

/// Compact `(A_d)_d` notation, e.g. `(20/3)_6 35_8`, omitting `A_0` and zeros.
pub fn weight_signature(weights: &[Rational]) -> String {
    let parts: Vec<String> = weights
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, a)| **a != Rational::from_integer(0))
        .map(|(d, a)| if *a.denom() == 1 { format!("{}_{d}", a.numer()) } else { format!("({})_{d}", format_rational(a)) })
        .collect();
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    fn set(n: usize, l: &[usize]) -> VertexSet {
        VertexSet::from_labels(n, l).unwrap()
    }

    #[test]
    fn loop_five_distribution_sums_to_dimension_ratio() {
        let g = Graph::family(Family::Loop, 5).unwrap();
        let basis: Vec<_> =
            [&[][..], &[2, 3, 5], &[3, 4, 1], &[4, 5, 2], &[5, 1, 3], &[1, 2, 4]].iter().map(|l| set(5, l)).collect();
        let a = weight_distribution(&g, &basis).unwrap();
        assert_eq!(a[0], Rational::from_integer(1));
        assert_eq!(a.iter().sum::<Rational>(), Rational::new(32, 6));
        assert_eq!(a, weight_distribution_bruteforce(&g, &basis).unwrap());
    }

    #[test]
    fn empty_subset_frequency_is_weight() {
        let g = Graph::family(Family::Loop, 5).unwrap();
        let basis = [VertexSet::empty(5), VertexSet::full(5)];
        let a = weight_distribution(&g, &basis).unwrap();
        for (d, ad) in a.iter().enumerate() {
            let f = frequency_series(&g, &basis, d).unwrap();
            assert_eq!(f[0], vec![*ad]);
        }
        // pentagon [[5,1,3]]: 15 stabilizers of weight 4
        assert_eq!(a[4], Rational::from_integer(15));
        assert_eq!(stabilizer_weight_histogram(&g, &[VertexSet::full(5)]).unwrap(), vec![1, 0, 0, 0, 15, 0]);
    }

    #[test]
    fn signature_format() {
        let w = vec![Rational::from_integer(1), Rational::from_integer(0), Rational::new(20, 3), Rational::from_integer(35)];
        assert_eq!(weight_signature(&w), "(20/3)_2 35_3");
    }
}
