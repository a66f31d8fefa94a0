//! Gate-level intermediate representation.
//!
//! A [`Circuit`] is an ordered gate list over named registers plus a scalar
//! global phase. Qubits are numbered in register declaration order; qubit 0 is
//! the most significant bit of every basis index used by the simulators.
//! Ancilla registers are expected to enter and leave in `|0⟩`.

mod expand;
mod gate;
pub mod qasm;

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::Range;

pub use expand::{DIAG2_MAX_CNOTS, FREDKIN_CNOTS, SWAP_CNOTS, TOFFOLI_CNOTS};
pub use gate::Gate;

use crate::{Error, Result};

/// Tolerance for the unitarity check on `U2` gates.
pub const U2_UNITARITY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegisterRole {
    Logical,
    Ancilla,
}

impl RegisterRole {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegisterRole::Logical => "logical",
            RegisterRole::Ancilla => "ancilla",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "logical" => Some(RegisterRole::Logical),
            "ancilla" => Some(RegisterRole::Ancilla),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Register {
    pub name: String,
    pub width: usize,
    pub role: RegisterRole,
    offset: usize,
}

impl Register {
    /// Flat indices of this register's qubits.
    pub fn qubits(&self) -> Range<usize> {
        self.offset..self.offset + self.width
    }
}

/// A qubit addressed by register name and position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QubitRef {
    pub register: String,
    pub index: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Circuit {
    registers: Vec<Register>,
    gates: Vec<Gate>,
    global_phase: f64,
    num_qubits: usize,
}

impl Circuit {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a register and returns the flat indices of its qubits.
    pub fn add_register(
        &mut self,
        name: impl Into<String>,
        width: usize,
        role: RegisterRole,
    ) -> Result<Range<usize>> {
        let name = name.into();
        if self.register(&name).is_some() {
            return Err(Error::DuplicateRegister(name));
        }
        let offset = self.num_qubits;
        self.registers.push(Register {
            name,
            width,
            role,
            offset,
        });
        self.num_qubits += width;
        Ok(offset..offset + width)
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn register(&self, name: &str) -> Option<&Register> {
        self.registers.iter().find(|r| r.name == name)
    }

    pub fn qubit(&self, register: &str, index: usize) -> Result<usize> {
        let reg = self
            .register(register)
            .ok_or_else(|| Error::UnknownRegister(register.to_string()))?;
        if index >= reg.width {
            return Err(Error::QubitOutOfRange {
                index,
                width: reg.width,
            });
        }
        Ok(reg.offset + index)
    }

    pub fn resolve(&self, q: &QubitRef) -> Result<usize> {
        self.qubit(&q.register, q.index)
    }

    pub fn qubit_ref(&self, flat: usize) -> Option<QubitRef> {
        self.registers
            .iter()
            .find(|r| r.qubits().contains(&flat))
            .map(|r| QubitRef {
                register: r.name.clone(),
                index: flat - r.offset,
            })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn global_phase(&self) -> f64 {
        self.global_phase
    }

    pub fn add_global_phase(&mut self, phase: f64) {
        self.global_phase += phase;
    }

    fn qubits_with_role(&self, role: RegisterRole) -> Vec<usize> {
        self.registers
            .iter()
            .filter(|r| r.role == role)
            .flat_map(|r| r.qubits())
            .collect()
    }

    pub fn logical_qubits(&self) -> Vec<usize> {
        self.qubits_with_role(RegisterRole::Logical)
    }

    pub fn ancilla_qubits(&self) -> Vec<usize> {
        self.qubits_with_role(RegisterRole::Ancilla)
    }

    pub fn ancilla_count(&self) -> usize {
        self.registers
            .iter()
            .filter(|r| r.role == RegisterRole::Ancilla)
            .map(|r| r.width)
            .sum()
    }

    /// Appends a gate after checking its qubits and, for `U2`, unitarity.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        self.check(&gate)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    fn check(&self, gate: &Gate) -> Result<()> {
        let qs = gate.qubits();
        for (i, &q) in qs.iter().enumerate() {
            if q >= self.num_qubits {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    width: self.num_qubits,
                });
            }
            if qs[..i].contains(&q) {
                return Err(Error::RepeatedQubit(gate.name()));
            }
        }
        if let Gate::U2(_, m) = gate {
            let dev = m.unitarity_deviation();
            if dev > U2_UNITARITY_TOL || dev.is_nan() {
                return Err(Error::NotUnitary(dev));
            }
        }
        Ok(())
    }

    /// A circuit with the same registers and no gates.
    pub fn empty_like(&self) -> Circuit {
        Circuit {
            registers: self.registers.clone(),
            num_qubits: self.num_qubits,
            ..Circuit::new()
        }
    }

    /// Appends `other` with its qubit `i` relabelled to `map[i]`, including its
    /// global phase.
    pub fn append_mapped(&mut self, other: &Circuit, map: &[usize]) -> Result<()> {
        if map.len() != other.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: other.num_qubits,
                got: map.len(),
            });
        }
        for g in &other.gates {
            self.push(g.map_qubits(|q| map[q]))?;
        }
        self.global_phase += other.global_phase;
        Ok(())
    }

    /// `other` after `self`. Both must declare identical registers.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit> {
        if self.registers != other.registers {
            return Err(Error::RegisterMismatch);
        }
        let mut out = self.clone();
        out.gates.extend_from_slice(&other.gates);
        out.global_phase += other.global_phase;
        Ok(out)
    }

    /// `self ⊗ other`: `other`'s registers are placed after `self`'s.
    pub fn tensor(&self, other: &Circuit) -> Result<Circuit> {
        let mut out = self.clone();
        for r in &other.registers {
            out.add_register(r.name.clone(), r.width, r.role)
                .map_err(|_| Error::RegisterMismatch)?;
        }
        let shift = self.num_qubits;
        out.gates
            .extend(other.gates.iter().map(|g| g.map_qubits(|q| q + shift)));
        out.global_phase += other.global_phase;
        Ok(out)
    }

    pub fn inverse(&self) -> Circuit {
        Circuit {
            registers: self.registers.clone(),
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            global_phase: -self.global_phase,
            num_qubits: self.num_qubits,
        }
    }

    /// Rewrites every macro gate (`ccx`, `cswap`, `swap`, `diag2`, `u2`) into
    /// CNOTs and single-qubit rotations. The unitary is preserved exactly, with
    /// phases moved into the global phase.
    pub fn expand_macros(&self) -> Circuit {
        let mut out = self.empty_like();
        out.global_phase = self.global_phase;
        for g in &self.gates {
            expand::expand_gate(g, &mut out.gates, &mut out.global_phase);
        }
        out
    }

    /// CNOT total of the macro-expanded circuit.
    pub fn cnot_count(&self) -> u64 {
        self.gates.iter().map(Gate::cnot_cost).sum()
    }

    pub fn is_expanded(&self) -> bool {
        !self.gates.iter().any(Gate::is_macro)
    }
}
