use alloc::vec::Vec;

use crate::circuit::{Circuit, Gate};
use crate::linalg::{self, CMatrix, Mat2};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn as_str(&self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }

    pub fn parse(s: &str) -> Option<Axis> {
        match s {
            "x" => Some(Axis::X),
            "y" => Some(Axis::Y),
            "z" => Some(Axis::Z),
            _ => None,
        }
    }

    pub fn rotation(&self, theta: f64) -> Mat2 {
        match self {
            Axis::X => linalg::rx(theta),
            Axis::Y => linalg::ry(theta),
            Axis::Z => linalg::rz(theta),
        }
    }

    pub fn gate(&self, q: usize, theta: f64) -> Gate {
        match self {
            Axis::X => Gate::Rx(q, theta),
            Axis::Y => Gate::Ry(q, theta),
            Axis::Z => Gate::Rz(q, theta),
        }
    }

    /// `V` with `V·R_z(-θ)·V† = R_axis(θ)` for `X` and `Y`.
    pub(crate) fn from_z_basis_change(&self) -> Option<Mat2> {
        let h = linalg::hadamard();
        match self {
            Axis::X => Some(h),
            Axis::Y => Some(Mat2::diag(linalg::ONE, linalg::I) * h),
            Axis::Z => None,
        }
    }
}

/// Block-diagonal `R_axis(angles[x])` on one data qubit, `x` read from `s`
/// select qubits (first select most significant).
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplexedRotation {
    pub axis: Axis,
    s: usize,
    angles: Vec<f64>,
}

impl MultiplexedRotation {
    pub fn new(axis: Axis, s: usize, angles: Vec<f64>) -> Result<Self> {
        if angles.len() != 1 << s {
            return Err(Error::DimensionMismatch {
                expected: 1 << s,
                got: angles.len(),
            });
        }
        Ok(MultiplexedRotation { axis, s, angles })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// The `2^{s+1}`-dimensional target, data qubit last.
    pub fn matrix(&self) -> CMatrix {
        let blocks: Vec<CMatrix> = self
            .angles
            .iter()
            .map(|&a| self.axis.rotation(a).to_cmatrix())
            .collect();
        linalg::block_diagonal(&blocks)
    }

    /// Standalone circuit: register `sel` (`s` qubits) then `data`.
    pub fn synthesize(&self) -> Circuit {
        let mut c = super::circuit_with(&[("sel", self.s), ("data", 1)]);
        let sel: Vec<usize> = (0..self.s).collect();
        self.emit(&mut c, &sel, self.s).expect("fresh registers");
        c
    }

    /// Appends the gray-code circuit: `2^s` CNOTs for `s ≥ 1`, none for `s = 0`.
    pub fn emit(&self, circuit: &mut Circuit, selects: &[usize], data: usize) -> Result<()> {
        if selects.len() != self.s {
            return Err(Error::DimensionMismatch {
                expected: self.s,
                got: selects.len(),
            });
        }
        if self.s == 0 {
            return circuit.push(self.axis.gate(data, self.angles[0]));
        }
        match self.axis {
            // X flips the sign of both R_z and R_y, so the gray-code ladder works directly
            Axis::Z | Axis::Y => emit_gray(circuit, self.axis, &self.angles, selects, data),
            Axis::X => {
                let v = linalg::hadamard();
                let neg: Vec<f64> = self.angles.iter().map(|a| -a).collect();
                circuit.push(Gate::U2(data, v))?;
                emit_gray(circuit, Axis::Z, &neg, selects, data)?;
                circuit.push(Gate::U2(data, v))
            }
        }
    }
}

fn gray(j: usize) -> usize {
    j ^ (j >> 1)
}

/// In-place Walsh–Hadamard butterfly (unnormalized).
pub(crate) fn fwht(v: &mut [f64]) {
    let mut h = 1;
    while h < v.len() {
        for i in (0..v.len()).step_by(2 * h) {
            for j in i..i + h {
                let (a, b) = (v[j], v[j + h]);
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// Rotation `j` is `θ̂_j = 2^{-s} Σ_x (-1)^{x·gray(j)} α_x`; after it a CNOT
/// from the select whose gray bit flips next onto the data qubit. The data
/// qubit sees the parity `x·gray(j)` when rotation `j` runs.
fn emit_gray(
    circuit: &mut Circuit,
    axis: Axis,
    alpha: &[f64],
    selects: &[usize],
    data: usize,
) -> Result<()> {
    let s = selects.len();
    let size = 1usize << s;
    let mut hat = alpha.to_vec();
    fwht(&mut hat);
    let scale = 1.0 / size as f64;
    for j in 0..size {
        circuit.push(axis.gate(data, hat[gray(j)] * scale))?;
        let bit = (gray(j) ^ gray((j + 1) % size)).trailing_zeros() as usize;
        circuit.push(Gate::cnot(selects[s - 1 - bit], data))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{circuit_unitary, equal_up_to_global_phase};
    use alloc::vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn random(axis: Axis, s: usize, rng: &mut ChaCha20Rng) -> MultiplexedRotation {
        MultiplexedRotation::new(
            axis,
            s,
            (0..1 << s).map(|_| rng.random_range(-4.0..4.0)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn fwht_matches_definition() {
        let v = [1.0, -2.0, 0.5, 3.0, 7.0, 0.0, -1.0, 2.0];
        let mut w = v;
        fwht(&mut w);
        for (k, got) in w.iter().enumerate() {
            let want: f64 = v
                .iter()
                .enumerate()
                .map(|(x, a)| {
                    if (x & k).count_ones() % 2 == 0 {
                        *a
                    } else {
                        -a
                    }
                })
                .sum();
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn s0_is_one_rotation() {
        let c = MultiplexedRotation::new(Axis::X, 0, vec![0.4])
            .unwrap()
            .synthesize();
        assert_eq!(c.gates(), [Gate::Rx(0, 0.4)]);
    }

    #[test]
    fn s1_layout() {
        let (t0, t1) = (0.9, -0.3);
        let m = MultiplexedRotation::new(Axis::Z, 1, vec![t0, t1]).unwrap();
        let c = m.synthesize();
        assert_eq!(c.gates().len(), 4);
        let want = [
            Gate::Rz(1, (t0 + t1) / 2.0),
            Gate::cnot(0, 1),
            Gate::Rz(1, (t0 - t1) / 2.0),
            Gate::cnot(0, 1),
        ];
        for (g, w) in c.gates().iter().zip(want) {
            match (g, w) {
                (Gate::Rz(q, a), Gate::Rz(p, b)) => assert!(*q == p && (a - b).abs() < 1e-15),
                _ => assert_eq!(*g, w),
            }
        }
        let u = circuit_unitary(&c).unwrap();
        assert!(equal_up_to_global_phase(&u, &m.matrix(), 1e-14).unwrap().0);
    }

    #[test]
    fn exact_counts_and_matrices() {
        let mut rng = ChaCha20Rng::seed_from_u64(21);
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            for s in 0..=6 {
                let m = random(axis, s, &mut rng);
                let c = m.synthesize();
                assert_eq!(c.cnot_count(), if s == 0 { 0 } else { 1 << s });
                let u = circuit_unitary(&c).unwrap();
                // the gray-code construction is exact, not just up to phase
                assert!(
                    linalg::max_abs_diff(&u, &m.matrix()) < 1e-10,
                    "{axis:?} s={s}"
                );
            }
        }
    }

    #[test]
    fn emit_onto_arbitrary_qubits() {
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        let m = random(Axis::Y, 2, &mut rng);
        let mut c = super::super::circuit_with(&[("q", 3)]);
        m.emit(&mut c, &[2, 0], 1).unwrap();
        let u = circuit_unitary(&c).unwrap();
        let target = m.matrix();
        for col in 0..8 {
            let mut want = crate::sim::StateVector::basis(3, col);
            want.apply_matrix(&[2, 0, 1], &target).unwrap();
            for (row, a) in want.amplitudes().iter().enumerate() {
                assert!((u[(row, col)] - a).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn basis_change_conjugates_z_into_axis() {
        for axis in [Axis::X, Axis::Y] {
            let v = axis.from_z_basis_change().unwrap();
            let got = v * linalg::rz(-0.77) * v.adjoint();
            assert!(got.max_abs_diff(&axis.rotation(0.77)) < 1e-15);
        }
    }
}
