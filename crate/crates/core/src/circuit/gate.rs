use alloc::vec::Vec;

use arrayvec::ArrayVec;
use num_complex::Complex64;

use crate::linalg::{self, Mat2};
use crate::{Error, Result};

/// A gate of the IR. Qubits are flat indices into the owning circuit's
/// register layout; angles are in radians and follow the rotation
/// conventions of [`linalg::rx`], [`linalg::ry`] and [`linalg::rz`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    Cnot {
        control: usize,
        target: usize,
    },
    X(usize),
    Rx(usize, f64),
    Ry(usize, f64),
    Rz(usize, f64),
    U2(usize, Mat2),
    /// Two-qubit diagonal `diag(e^{iφ00}, e^{iφ01}, e^{iφ10}, e^{iφ11})`, the
    /// first qubit being the high-order bit of the index.
    Diag2(usize, usize, [f64; 4]),
    Toffoli(usize, usize, usize),
    /// Controlled swap: `(control, a, b)`.
    Fredkin(usize, usize, usize),
    Swap(usize, usize),
}

impl Gate {
    pub fn cnot(control: usize, target: usize) -> Gate {
        Gate::Cnot { control, target }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::Cnot { .. } => "cx",
            Gate::X(_) => "x",
            Gate::Rx(..) => "rx",
            Gate::Ry(..) => "ry",
            Gate::Rz(..) => "rz",
            Gate::U2(..) => "u2",
            Gate::Diag2(..) => "diag2",
            Gate::Toffoli(..) => "ccx",
            Gate::Fredkin(..) => "cswap",
            Gate::Swap(..) => "swap",
        }
    }

    pub fn qubits(&self) -> ArrayVec<usize, 3> {
        let mut out = ArrayVec::new();
        match *self {
            Gate::Cnot { control, target } => {
                out.push(control);
                out.push(target);
            }
            Gate::X(q) | Gate::Rx(q, _) | Gate::Ry(q, _) | Gate::Rz(q, _) | Gate::U2(q, _) => {
                out.push(q)
            }
            Gate::Diag2(a, b, _) | Gate::Swap(a, b) => {
                out.push(a);
                out.push(b);
            }
            Gate::Toffoli(a, b, c) | Gate::Fredkin(a, b, c) => {
                out.push(a);
                out.push(b);
                out.push(c);
            }
        }
        out
    }

    /// Numeric parameters: one angle for rotations, four phases for `Diag2`,
    /// eight reals (row-major re/im pairs) for `U2`.
    pub fn params(&self) -> Vec<f64> {
        match *self {
            Gate::Rx(_, t) | Gate::Ry(_, t) | Gate::Rz(_, t) => alloc::vec![t],
            Gate::Diag2(_, _, p) => p.to_vec(),
            Gate::U2(_, m) => m.0.iter().flatten().flat_map(|z| [z.re, z.im]).collect(),
            _ => Vec::new(),
        }
    }

    /// Inverse of [`Gate::name`], [`Gate::qubits`] and [`Gate::params`].
    pub fn from_parts(name: &str, qubits: &[usize], params: &[f64]) -> Result<Gate> {
        let bad = || Error::Domain(alloc::format!("malformed `{name}` gate"));
        let q = |i: usize| qubits.get(i).copied().ok_or_else(bad);
        let expect = |nq: usize, np: usize| {
            if qubits.len() == nq && params.len() == np {
                Ok(())
            } else {
                Err(bad())
            }
        };
        let gate = match name {
            "cx" => {
                expect(2, 0)?;
                Gate::cnot(q(0)?, q(1)?)
            }
            "x" => {
                expect(1, 0)?;
                Gate::X(q(0)?)
            }
            "rx" | "ry" | "rz" => {
                expect(1, 1)?;
                match name {
                    "rx" => Gate::Rx(q(0)?, params[0]),
                    "ry" => Gate::Ry(q(0)?, params[0]),
                    _ => Gate::Rz(q(0)?, params[0]),
                }
            }
            "u2" => {
                expect(1, 8)?;
                let c = |i: usize| Complex64::new(params[2 * i], params[2 * i + 1]);
                Gate::U2(q(0)?, Mat2::new(c(0), c(1), c(2), c(3)))
            }
            "diag2" => {
                expect(2, 4)?;
                Gate::Diag2(q(0)?, q(1)?, [params[0], params[1], params[2], params[3]])
            }
            "ccx" => {
                expect(3, 0)?;
                Gate::Toffoli(q(0)?, q(1)?, q(2)?)
            }
            "cswap" => {
                expect(3, 0)?;
                Gate::Fredkin(q(0)?, q(1)?, q(2)?)
            }
            "swap" => {
                expect(2, 0)?;
                Gate::Swap(q(0)?, q(1)?)
            }
            _ => return Err(Error::Domain(alloc::format!("unknown gate kind `{name}`"))),
        };
        Ok(gate)
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::Rx(q, t) => Gate::Rx(q, -t),
            Gate::Ry(q, t) => Gate::Ry(q, -t),
            Gate::Rz(q, t) => Gate::Rz(q, -t),
            Gate::U2(q, m) => Gate::U2(q, m.adjoint()),
            Gate::Diag2(a, b, p) => Gate::Diag2(a, b, p.map(|x| -x)),
            g => g,
        }
    }

    pub fn map_qubits(&self, f: impl Fn(usize) -> usize) -> Gate {
        match *self {
            Gate::Cnot { control, target } => Gate::cnot(f(control), f(target)),
            Gate::X(q) => Gate::X(f(q)),
            Gate::Rx(q, t) => Gate::Rx(f(q), t),
            Gate::Ry(q, t) => Gate::Ry(f(q), t),
            Gate::Rz(q, t) => Gate::Rz(f(q), t),
            Gate::U2(q, m) => Gate::U2(f(q), m),
            Gate::Diag2(a, b, p) => Gate::Diag2(f(a), f(b), p),
            Gate::Toffoli(a, b, c) => Gate::Toffoli(f(a), f(b), f(c)),
            Gate::Fredkin(a, b, c) => Gate::Fredkin(f(a), f(b), f(c)),
            Gate::Swap(a, b) => Gate::Swap(f(a), f(b)),
        }
    }

    /// Gates that [`super::Circuit::expand_macros`] rewrites.
    pub fn is_macro(&self) -> bool {
        matches!(
            self,
            Gate::U2(..) | Gate::Diag2(..) | Gate::Toffoli(..) | Gate::Fredkin(..) | Gate::Swap(..)
        )
    }

    /// The gate's matrix when it acts on a single qubit.
    pub fn single_qubit_matrix(&self) -> Option<(usize, Mat2)> {
        match *self {
            Gate::X(q) => Some((q, Mat2::PAULI_X)),
            Gate::Rx(q, t) => Some((q, linalg::rx(t))),
            Gate::Ry(q, t) => Some((q, linalg::ry(t))),
            Gate::Rz(q, t) => Some((q, linalg::rz(t))),
            Gate::U2(q, m) => Some((q, m)),
            _ => None,
        }
    }

    /// CNOTs this gate costs after macro expansion.
    pub fn cnot_cost(&self) -> u64 {
        match self {
            Gate::Cnot { .. } => 1,
            Gate::Toffoli(..) => super::expand::TOFFOLI_CNOTS,
            Gate::Fredkin(..) => super::expand::FREDKIN_CNOTS,
            Gate::Swap(..) => super::expand::SWAP_CNOTS,
            Gate::Diag2(_, _, p) => {
                if super::expand::diag2_coefficients(p)[3] == 0.0 {
                    0
                } else {
                    2
                }
            }
            _ => 0,
        }
    }
}
