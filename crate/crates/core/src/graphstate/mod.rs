//! Graph states, Pauli algebra and the code-level checks built on them.

mod engine;
mod invariants;
mod kl;
mod pauli;
mod state;

pub use engine::{overlap, pauli_pushthrough};
pub use invariants::{
    code_invariants, format_rational, frequency_series, serialize_rationals, stabilizer_weight_histogram, support_enumerator,
    weight_distribution, weight_distribution_bruteforce, weight_signature, CodeInvariants, Rational, ENUMERATOR_MAX_QUBITS,
};
pub use kl::{
    certified_distance, is_pure, kl_verify, kl_verify_statevector, paulis_below_weight, Verdict, Violation, ViolationKind,
};
pub use pauli::{hermitian_paulis_of_weight, supports_of_size, PauliOperator, Phase};
pub use state::{projected_norm_sqr, same_span, Scaled, StateVector, STATE_MAX_QUBITS};
