use alloc::string::String;
use alloc::vec::Vec;

use super::MassProdParams;
use crate::circuit::Circuit;

/// One mass-produced (or repeated) sub-circuit of a larger job.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentReport {
    pub label: String,
    /// Input bits (select count) of the component.
    pub n: usize,
    pub cnot_count: u64,
    pub params: Option<MassProdParams>,
    /// `cost_bound(params)` when mass-produced, the naive count otherwise.
    pub bound_value: f64,
    /// Repeated once per copy instead of mass-produced.
    pub fallback: bool,
}

/// Shared slots of the outermost copy-sharing level.
#[derive(Clone, Debug, PartialEq)]
pub struct SlotSummary {
    pub shared_subcircuits: usize,
    pub groups_per_subcircuit: usize,
}

/// Which state-preparation levels were repeated and which were mass-produced.
#[derive(Clone, Debug, PartialEq)]
pub struct StateSplit {
    /// Levels `ℓ < threshold` are repeated per copy.
    pub threshold: usize,
    pub naive_levels: Vec<usize>,
    pub mass_levels: Vec<usize>,
    pub naive_cnots: u64,
    pub mass_cnots: u64,
    /// The construction's closed-form total.
    pub analytic_cnots: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QsdSummary {
    pub leaves: usize,
    pub rotations: usize,
    /// `2.5·4^n`, reference only.
    pub headline_bound: f64,
    /// Sum of the components' bound values.
    pub factor_bound_sum: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SynthesisReport {
    pub kind: String,
    pub n: usize,
    /// Copies requested.
    pub r: usize,
    /// Copies built (`r` rounded up to a power of two).
    pub copies: usize,
    pub cnot_count: u64,
    pub gate_count: usize,
    pub ancilla_count: usize,
    pub qubit_count: usize,
    pub params: Option<MassProdParams>,
    pub bound_value: Option<f64>,
    /// `r ×` the single-copy CNOT count.
    pub naive_count: u64,
    pub ratio: f64,
    pub fallback: bool,
    pub slots: Option<SlotSummary>,
    pub components: Vec<ComponentReport>,
    pub state_split: Option<StateSplit>,
    pub qsd: Option<QsdSummary>,
}

impl SynthesisReport {
    pub(crate) fn for_circuit(
        kind: &str,
        n: usize,
        r: usize,
        copies: usize,
        circuit: &Circuit,
        naive_count: u64,
    ) -> Self {
        let cnot_count = circuit.cnot_count();
        SynthesisReport {
            kind: kind.into(),
            n,
            r,
            copies,
            cnot_count,
            gate_count: circuit.gate_count(),
            ancilla_count: circuit.ancilla_count(),
            qubit_count: circuit.num_qubits(),
            params: None,
            bound_value: None,
            naive_count,
            ratio: if naive_count == 0 {
                1.0
            } else {
                cnot_count as f64 / naive_count as f64
            },
            fallback: false,
            slots: None,
            components: Vec::new(),
            state_split: None,
            qsd: None,
        }
    }
}
