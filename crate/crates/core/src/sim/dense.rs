use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::linalg::{cis, CMatrix, Mat2, ONE, ZERO};
use crate::{Error, Result};

pub const DEFAULT_DENSE_CAP: usize = 22;
pub const UNITARY_CAP: usize = 12;

/// Dense amplitudes of an `m`-qubit system; qubit 0 is the most significant
/// bit of the index.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn basis(num_qubits: usize, index: usize) -> Self {
        let mut amps = vec![ZERO; 1 << num_qubits];
        amps[index] = ONE;
        StateVector { num_qubits, amps }
    }

    pub fn zero(num_qubits: usize) -> Self {
        Self::basis(num_qubits, 0)
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::DimensionMismatch {
                expected: amps.len().next_power_of_two(),
                got: amps.len(),
            });
        }
        let num_qubits = amps.len().trailing_zeros() as usize;
        Ok(StateVector { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>())
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    #[inline]
    fn mask(&self, q: usize) -> usize {
        1 << (self.num_qubits - 1 - q)
    }

    pub fn scale(&mut self, s: Complex64) {
        self.amps.iter_mut().for_each(|a| *a *= s);
    }

    pub fn apply_single(&mut self, q: usize, m: &Mat2) {
        let mask = self.mask(q);
        let [[m00, m01], [m10, m11]] = m.0;
        for i in 0..self.amps.len() {
            if i & mask == 0 {
                let j = i | mask;
                let (a, b) = (self.amps[i], self.amps[j]);
                self.amps[i] = m00 * a + m01 * b;
                self.amps[j] = m10 * a + m11 * b;
            }
        }
    }

    /// Swaps amplitude pairs `(i, i ^ flip)` for every `i` with `i & want == test`.
    fn permute(&mut self, want: usize, test: usize, flip: usize) {
        for i in 0..self.amps.len() {
            if i & want == test {
                self.amps.swap(i, i ^ flip);
            }
        }
    }

    pub fn apply_gate(&mut self, gate: &Gate) {
        match *gate {
            Gate::Cnot { control, target } => {
                let (c, t) = (self.mask(control), self.mask(target));
                self.permute(c | t, c, t);
            }
            Gate::X(q) => {
                let t = self.mask(q);
                self.permute(t, 0, t);
            }
            Gate::Toffoli(a, b, t) => {
                let (a, b, t) = (self.mask(a), self.mask(b), self.mask(t));
                self.permute(a | b | t, a | b, t);
            }
            Gate::Fredkin(c, a, b) => {
                let (c, a, b) = (self.mask(c), self.mask(a), self.mask(b));
                self.permute(c | a | b, c | a, a | b);
            }
            Gate::Swap(a, b) => {
                let (a, b) = (self.mask(a), self.mask(b));
                self.permute(a | b, a, a | b);
            }
            Gate::Diag2(a, b, p) => {
                let (ma, mb) = (self.mask(a), self.mask(b));
                let ph = p.map(cis);
                for (i, amp) in self.amps.iter_mut().enumerate() {
                    let k = 2 * (i & ma != 0) as usize + (i & mb != 0) as usize;
                    *amp *= ph[k];
                }
            }
            Gate::Rz(q, t) => {
                let mask = self.mask(q);
                let (d0, d1) = (cis(-t / 2.0), cis(t / 2.0));
                for (i, amp) in self.amps.iter_mut().enumerate() {
                    *amp *= if i & mask == 0 { d0 } else { d1 };
                }
            }
            _ => {
                let (q, m) = gate
                    .single_qubit_matrix()
                    .expect("remaining gates act on one qubit");
                self.apply_single(q, &m);
            }
        }
    }

    /// Applies a `2^k × 2^k` matrix to the listed qubits; `qubits[0]` is the
    /// most significant bit of the matrix index.
    pub fn apply_matrix(&mut self, qubits: &[usize], m: &CMatrix) -> Result<()> {
        let k = qubits.len();
        let dim = 1usize << k;
        if m.nrows() != dim || m.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: m.nrows(),
            });
        }
        let masks: Vec<usize> = qubits.iter().map(|&q| self.mask(q)).collect();
        let all: usize = masks.iter().sum();
        let offset = |sub: usize| -> usize {
            masks
                .iter()
                .enumerate()
                .filter(|(j, _)| (sub >> (k - 1 - j)) & 1 == 1)
                .map(|(_, m)| m)
                .sum()
        };
        let offsets: Vec<usize> = (0..dim).map(offset).collect();
        let mut buf = vec![ZERO; dim];
        for base in 0..self.amps.len() {
            if base & all != 0 {
                continue;
            }
            for (s, b) in buf.iter_mut().enumerate() {
                *b = self.amps[base + offsets[s]];
            }
            for r in 0..dim {
                let mut acc = ZERO;
                for (c, b) in buf.iter().enumerate() {
                    acc += m[(r, c)] * b;
                }
                self.amps[base + offsets[r]] = acc;
            }
        }
        Ok(())
    }
}

pub fn apply_dense(circuit: &Circuit, state: &StateVector) -> Result<StateVector> {
    apply_dense_with_cap(circuit, state, DEFAULT_DENSE_CAP)
}

pub fn apply_dense_with_cap(
    circuit: &Circuit,
    state: &StateVector,
    cap: usize,
) -> Result<StateVector> {
    let n = circuit.num_qubits();
    if n > cap {
        return Err(Error::QubitCapExceeded { qubits: n, cap });
    }
    if state.num_qubits != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: state.num_qubits,
        });
    }
    let mut out = state.clone();
    for g in circuit.gates() {
        out.apply_gate(g);
    }
    out.scale(cis(circuit.global_phase()));
    Ok(out)
}

/// The full unitary; column `j` is the circuit applied to basis state `j`.
pub fn circuit_unitary(circuit: &Circuit) -> Result<CMatrix> {
    let n = circuit.num_qubits();
    if n > UNITARY_CAP {
        return Err(Error::QubitCapExceeded {
            qubits: n,
            cap: UNITARY_CAP,
        });
    }
    let dim = 1 << n;
    let mut u = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let out = apply_dense(circuit, &StateVector::basis(n, col))?;
        for (row, a) in out.amps.iter().enumerate() {
            u[(row, col)] = *a;
        }
    }
    Ok(u)
}
