//! Fixed expansion templates. Together they define the cost model: a Toffoli
//! costs 6 CNOTs, a Fredkin 8, a swap 3 and a two-qubit diagonal at most 2.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};

use super::Gate;
use crate::synth::zyz_decompose;

pub const TOFFOLI_CNOTS: u64 = 6;
pub const FREDKIN_CNOTS: u64 = 8;
pub const SWAP_CNOTS: u64 = 3;
pub const DIAG2_MAX_CNOTS: u64 = 2;

/// Writes the phases of `diag(e^{iφ_ab})` as `c0 + c1·z_a + c2·z_b + c3·z_a·z_b`
/// with `z = 1 - 2·bit`.
pub(crate) fn diag2_coefficients(p: &[f64; 4]) -> [f64; 4] {
    [
        (p[0] + p[1] + p[2] + p[3]) / 4.0,
        (p[0] + p[1] - p[2] - p[3]) / 4.0,
        (p[0] - p[1] + p[2] - p[3]) / 4.0,
        (p[0] - p[1] - p[2] + p[3]) / 4.0,
    ]
}

fn hadamard(q: usize, out: &mut Vec<Gate>, phase: &mut f64) {
    // H = i·R_y(-π/2)·R_z(π)
    out.push(Gate::Rz(q, PI));
    out.push(Gate::Ry(q, -FRAC_PI_2));
    *phase += FRAC_PI_2;
}

fn t_gate(q: usize, dagger: bool, out: &mut Vec<Gate>, phase: &mut f64) {
    // T = e^{iπ/8}·R_z(π/4)
    let sign = if dagger { -1.0 } else { 1.0 };
    out.push(Gate::Rz(q, sign * FRAC_PI_4));
    *phase += sign * FRAC_PI_8;
}

fn toffoli(a: usize, b: usize, t: usize, out: &mut Vec<Gate>, phase: &mut f64) {
    hadamard(t, out, phase);
    out.push(Gate::cnot(b, t));
    t_gate(t, true, out, phase);
    out.push(Gate::cnot(a, t));
    t_gate(t, false, out, phase);
    out.push(Gate::cnot(b, t));
    t_gate(t, true, out, phase);
    out.push(Gate::cnot(a, t));
    t_gate(b, false, out, phase);
    t_gate(t, false, out, phase);
    hadamard(t, out, phase);
    out.push(Gate::cnot(a, b));
    t_gate(a, false, out, phase);
    t_gate(b, true, out, phase);
    out.push(Gate::cnot(a, b));
}

pub(super) fn expand_gate(gate: &Gate, out: &mut Vec<Gate>, phase: &mut f64) {
    match *gate {
        Gate::Toffoli(a, b, t) => toffoli(a, b, t, out, phase),
        Gate::Fredkin(c, a, b) => {
            out.push(Gate::cnot(b, a));
            toffoli(c, a, b, out, phase);
            out.push(Gate::cnot(b, a));
        }
        Gate::Swap(a, b) => {
            out.push(Gate::cnot(a, b));
            out.push(Gate::cnot(b, a));
            out.push(Gate::cnot(a, b));
        }
        Gate::Diag2(a, b, p) => {
            let [c0, c1, c2, c3] = diag2_coefficients(&p);
            // e^{iθ z} = R_z(-2θ)
            if c1 != 0.0 {
                out.push(Gate::Rz(a, -2.0 * c1));
            }
            if c2 != 0.0 {
                out.push(Gate::Rz(b, -2.0 * c2));
            }
            if c3 != 0.0 {
                out.push(Gate::cnot(a, b));
                out.push(Gate::Rz(b, -2.0 * c3));
                out.push(Gate::cnot(a, b));
            }
            *phase += c0;
        }
        Gate::U2(q, m) => {
            let e = zyz_decompose(&m).expect("U2 gates are checked for unitarity on insertion");
            if e.gamma != 0.0 {
                out.push(Gate::Rz(q, e.gamma));
            }
            if e.beta != 0.0 {
                out.push(Gate::Ry(q, e.beta));
            }
            if e.alpha != 0.0 {
                out.push(Gate::Rz(q, e.alpha));
            }
            *phase += e.phi;
        }
        g => out.push(g),
    }
}
