use alloc::vec::Vec;

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::linalg::{cis, Mat2, ONE};
use crate::{Error, Result};

/// Entries below this magnitude count as zero when deciding whether a
/// single-qubit matrix is monomial.
const MONOMIAL_TOL: f64 = 1e-12;

/// A computational basis state with an accumulated phase.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisPath {
    pub bits: Vec<bool>,
    pub phase: Complex64,
}

enum Monomial {
    Diagonal(Complex64, Complex64),
    /// `|0⟩ → m10·|1⟩`, `|1⟩ → m01·|0⟩`
    AntiDiagonal(Complex64, Complex64),
}

fn monomial(m: &Mat2) -> Option<Monomial> {
    let small = |z: Complex64| z.norm() <= MONOMIAL_TOL;
    if small(m.get(0, 1)) && small(m.get(1, 0)) {
        Some(Monomial::Diagonal(m.get(0, 0), m.get(1, 1)))
    } else if small(m.get(0, 0)) && small(m.get(1, 1)) {
        Some(Monomial::AntiDiagonal(m.get(1, 0), m.get(0, 1)))
    } else {
        None
    }
}

fn gate_is_phase_classical(g: &Gate) -> bool {
    match g.single_qubit_matrix() {
        Some((_, m)) => monomial(&m).is_some(),
        None => true,
    }
}

pub fn is_phase_classical(circuit: &Circuit) -> bool {
    circuit.gates().iter().all(gate_is_phase_classical)
}

/// Runs `input` (one bit per declared qubit) through the circuit. Macro gates
/// are simulated natively.
pub fn simulate_phase_path(circuit: &Circuit, input: &[bool]) -> Result<BasisPath> {
    if input.len() != circuit.num_qubits() {
        return Err(Error::DimensionMismatch {
            expected: circuit.num_qubits(),
            got: input.len(),
        });
    }
    let mut bits = input.to_vec();
    let mut phase = ONE;
    for (index, g) in circuit.gates().iter().enumerate() {
        match *g {
            Gate::Cnot { control, target } => {
                if bits[control] {
                    bits[target] ^= true;
                }
            }
            Gate::Toffoli(a, b, t) => {
                if bits[a] && bits[b] {
                    bits[t] ^= true;
                }
            }
            Gate::Fredkin(c, a, b) => {
                if bits[c] {
                    bits.swap(a, b);
                }
            }
            Gate::Swap(a, b) => bits.swap(a, b),
            Gate::Diag2(a, b, p) => {
                phase *= cis(p[2 * bits[a] as usize + bits[b] as usize]);
            }
            Gate::Rz(q, t) => {
                phase *= cis(if bits[q] { t / 2.0 } else { -t / 2.0 });
            }
            Gate::X(q) => bits[q] ^= true,
            _ => {
                let (q, m) = g
                    .single_qubit_matrix()
                    .expect("remaining gates act on one qubit");
                match monomial(&m) {
                    Some(Monomial::Diagonal(d0, d1)) => phase *= if bits[q] { d1 } else { d0 },
                    Some(Monomial::AntiDiagonal(to1, to0)) => {
                        phase *= if bits[q] { to0 } else { to1 };
                        bits[q] ^= true;
                    }
                    None => {
                        return Err(Error::NonPhaseClassicalGate {
                            index,
                            name: g.name(),
                        })
                    }
                }
            }
        }
    }
    phase *= cis(circuit.global_phase());
    Ok(BasisPath { bits, phase })
}
