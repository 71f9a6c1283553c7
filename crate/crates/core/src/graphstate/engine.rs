//! Phase-tracked action of Pauli operators on the graph-state basis.

use super::pauli::{PauliOperator, Phase};
use crate::gf2::VertexSet;
use crate::graph::Graph;

/// Rewrites `E|Γ⟩` as `σ Z_Ω |Γ⟩` with `Ω = δ △ N_ω` for `E = p X_ω Z_δ`.
///
/// `X_ω` is replaced by the ordered product `G_ω = τ X_ω Z_{N_ω}`, the phase `τ` being
/// tracked through the symplectic multiplication. Moving `Z_Ω` to the left of `G_ω`
/// contributes `(-1)^{|ω∩Ω|}`, so `σ = p · τ⁻¹ · (-1)^{|ω∩Ω|}`.
pub fn pauli_pushthrough(g: &Graph, e: &PauliOperator) -> (VertexSet, Phase) {
    assert_eq!(g.n(), e.n(), "operator and graph sizes differ");
    let g_omega = PauliOperator::graph_stabilizer(g, e.x);
    let omega_image = e.z ^ g_omega.z;
    let sigma = e.phase * g_omega.phase.conj() * Phase::sign(e.x.odd_overlap(omega_image));
    (omega_image, sigma)
}

/// `⟨Γ_a| E |Γ_b⟩`: zero unless `a △ b = Ω`, otherwise `σ (-1)^{|ω∩b|}`.
pub fn overlap(g: &Graph, a: VertexSet, e: &PauliOperator, b: VertexSet) -> Option<Phase> {
    let (omega_image, sigma) = pauli_pushthrough(g, e);
    overlap_with(omega_image, sigma, e.x, a, b)
}

/// [`overlap`] with a precomputed push-through.
#[inline]
pub(crate) fn overlap_with(omega_image: VertexSet, sigma: Phase, x: VertexSet, a: VertexSet, b: VertexSet) -> Option<Phase> {
    // ⟨Γ|Z_a E Z_b|Γ⟩ = (-1)^{|x∩b|} ⟨Γ|Z_a Z_b E|Γ⟩ = (-1)^{|x∩b|} σ ⟨Γ|Z_{a△b△Ω}|Γ⟩
    if a ^ b != omega_image {
        return None;
    }
    Some(sigma * Phase::sign(x.odd_overlap(b)))
}
