use alloc::vec::Vec;

use super::multiplexed::{Axis, MultiplexedRotation};
use super::phase::PhaseFunction;
use crate::circuit::Circuit;
use crate::{Error, Result};

/// One peeling step: `diag(f) = (diag(residual) ⊗ I) · M` where `M` is a
/// multiplexed `R_z` on the last bit with the other `n - 1` bits as selects.
pub fn diagonal_to_multiplexed_rz(
    f: &PhaseFunction,
) -> Result<(MultiplexedRotation, PhaseFunction)> {
    let n = f.n();
    if n == 0 {
        return Err(Error::Domain(
            "a diagonal needs at least one qubit to peel".into(),
        ));
    }
    let a = f.angles();
    let half = 1 << (n - 1);
    let rot = (0..half).map(|x| a[2 * x + 1] - a[2 * x]).collect();
    let mean = (0..half).map(|x| (a[2 * x + 1] + a[2 * x]) / 2.0).collect();
    Ok((
        MultiplexedRotation::new(Axis::Z, n - 1, rot)?,
        PhaseFunction::new(n - 1, mean)?,
    ))
}

/// `diag(f)` as `n` multiplexed `R_z` layers and a global phase. `layers[j]`
/// has data qubit `j` and selects `0..j`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalLayers {
    pub layers: Vec<MultiplexedRotation>,
    pub global_phase: f64,
}

pub fn peel_diagonal(f: &PhaseFunction) -> DiagonalLayers {
    let mut layers = Vec::with_capacity(f.n());
    let mut cur = f.clone();
    while cur.n() > 0 {
        let (rot, rest) = diagonal_to_multiplexed_rz(&cur).expect("n > 0");
        layers.push(rot);
        cur = rest;
    }
    layers.reverse();
    DiagonalLayers {
        layers,
        global_phase: cur.angle(0),
    }
}

/// Appends `diag(f)` on `qubits` (first qubit most significant): `2^n - 2`
/// CNOTs for `n ≥ 1`.
pub fn emit_diagonal(circuit: &mut Circuit, f: &PhaseFunction, qubits: &[usize]) -> Result<()> {
    if qubits.len() != f.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            got: qubits.len(),
        });
    }
    let peeled = peel_diagonal(f);
    for (j, layer) in peeled.layers.iter().enumerate() {
        layer.emit(circuit, &qubits[..j], qubits[j])?;
    }
    circuit.add_global_phase(peeled.global_phase);
    Ok(())
}

/// Standalone `diag(f)` on register `q`.
pub fn synth_diagonal(f: &PhaseFunction) -> Circuit {
    let mut c = super::circuit_with(&[("q", f.n())]);
    let qubits: Vec<usize> = (0..f.n()).collect();
    emit_diagonal(&mut c, f, &qubits).expect("fresh register");
    c
}
