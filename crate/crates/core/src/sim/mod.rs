//! Verification engines.
//!
//! [`simulate_phase_path`] follows a single computational basis state through a
//! circuit whose gates are all "phase-classical" (they map basis states to basis
//! states times a phase); its cost is linear in the gate count regardless of the
//! number of qubits. [`apply_dense`] is an in-place statevector engine for
//! everything else. Both fold the circuit's global phase into their results.

mod dense;
mod phase_path;
mod verify;

pub use dense::{
    apply_dense, apply_dense_with_cap, circuit_unitary, StateVector, DEFAULT_DENSE_CAP, UNITARY_CAP,
};
pub use phase_path::{is_phase_classical, simulate_phase_path, BasisPath};
pub use verify::{
    equal_up_to_global_phase, prepared_logical_state, restricted_operator,
    verify_ancilla_restoration, verify_operator, verify_phase_oracle, Failure, FailureReason,
    LogicalInputs, OperatorCheck, OperatorReport, PhaseReference, Sampling, VerificationReport,
    DEFAULT_SAMPLES, EXHAUSTIVE_LIMIT_BITS,
};

/// Basis index of a bit assignment; qubit 0 is the most significant bit.
pub fn bits_to_index(bits: &[bool]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
}

pub fn index_to_bits(index: usize, width: usize) -> alloc::vec::Vec<bool> {
    (0..width)
        .map(|q| (index >> (width - 1 - q)) & 1 == 1)
        .collect()
}
