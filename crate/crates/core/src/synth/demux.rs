use alloc::vec::Vec;

use super::euler::zyz_decompose;
use super::multiplexed::{Axis, MultiplexedRotation};
use super::phase::PhaseFunction;
use crate::circuit::{Circuit, Gate, U2_UNITARITY_TOL};
use crate::linalg::{self, CMatrix, Mat2};
use crate::{Error, Result};

/// An `(s, 1)`-multiplexor: block `x` acts on the data qubit when the `s`
/// selects read `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct Multiplexor1 {
    s: usize,
    blocks: Vec<Mat2>,
}

impl Multiplexor1 {
    pub fn new(s: usize, blocks: Vec<Mat2>) -> Result<Self> {
        if blocks.len() != 1 << s {
            return Err(Error::DimensionMismatch {
                expected: 1 << s,
                got: blocks.len(),
            });
        }
        for b in &blocks {
            let dev = b.unitarity_deviation();
            if !(dev <= U2_UNITARITY_TOL) {
                return Err(Error::NotUnitary(dev));
            }
        }
        Ok(Multiplexor1 { s, blocks })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn blocks(&self) -> &[Mat2] {
        &self.blocks
    }

    pub fn matrix(&self) -> CMatrix {
        let blocks: Vec<CMatrix> = self.blocks.iter().map(Mat2::to_cmatrix).collect();
        linalg::block_diagonal(&blocks)
    }

    /// Single-copy circuit: `diag(Δ)` on the selects and three multiplexed
    /// rotations, `4·2^s - 2` CNOTs for `s ≥ 1`; a lone `U2` for `s = 0`.
    pub fn emit(&self, circuit: &mut Circuit, selects: &[usize], data: usize) -> Result<()> {
        if selects.len() != self.s {
            return Err(Error::DimensionMismatch {
                expected: self.s,
                got: selects.len(),
            });
        }
        if self.s == 0 {
            return circuit.push(Gate::U2(data, self.blocks[0]));
        }
        let d = demultiplex_1data(self)?;
        d.rz2.emit(circuit, selects, data)?;
        d.ry.emit(circuit, selects, data)?;
        d.rz1.emit(circuit, selects, data)?;
        super::diagonal::emit_diagonal(circuit, &d.delta, selects)
    }

    pub fn synthesize(&self) -> Circuit {
        let mut c = super::circuit_with(&[("sel", self.s), ("data", 1)]);
        let sel: Vec<usize> = (0..self.s).collect();
        self.emit(&mut c, &sel, self.s).expect("fresh registers");
        c
    }
}

/// `blocks[x] = e^{iΔ(x)}·R_z(rz1_x)·R_y(ry_x)·R_z(rz2_x)`; in time order the
/// factors run `rz2`, `ry`, `rz1`, and `Δ` commutes with all of them.
#[derive(Clone, Debug, PartialEq)]
pub struct Demultiplexed {
    pub delta: PhaseFunction,
    pub rz1: MultiplexedRotation,
    pub ry: MultiplexedRotation,
    pub rz2: MultiplexedRotation,
}

pub fn demultiplex_1data(m: &Multiplexor1) -> Result<Demultiplexed> {
    let size = m.blocks.len();
    let (mut delta, mut a, mut b, mut g) = (
        Vec::with_capacity(size),
        Vec::with_capacity(size),
        Vec::with_capacity(size),
        Vec::with_capacity(size),
    );
    for block in &m.blocks {
        let z = zyz_decompose(block)?;
        delta.push(z.phi);
        a.push(z.alpha);
        b.push(z.beta);
        g.push(z.gamma);
    }
    Ok(Demultiplexed {
        delta: PhaseFunction::new(m.s, delta)?,
        rz1: MultiplexedRotation::new(Axis::Z, m.s, a)?,
        ry: MultiplexedRotation::new(Axis::Y, m.s, b)?,
        rz2: MultiplexedRotation::new(Axis::Z, m.s, g)?,
    })
}
