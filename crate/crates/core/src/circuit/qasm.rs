//! OpenQASM 2.0 text for macro-expanded circuits.
//!
//! Every register becomes its own `qreg`, emitted in declaration order;
//! ancilla registers carry a trailing `// ancilla` comment and the circuit's
//! global phase is written as a `// global_phase` comment. Only `cx`, `rx`,
//! `ry`, `rz` and `u3` statements are produced. Rotation angles are converted
//! to the `qelib1.inc` conventions, which flip the sign of `rx`/`ry` relative
//! to this crate's rotations; `rz` agrees up to a global phase. `X` is written
//! as `u3(π,0,π)`. Angles are printed with 17 significant digits, so parsing
//! the text back yields bit-identical gates.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt::Write;

use num_complex::Complex64;

use super::{Circuit, Gate, RegisterRole};
use crate::linalg::{cis, Mat2};
use crate::{Error, Result};

fn angle(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn export_qasm(circuit: &Circuit) -> Result<String> {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    let _ = writeln!(out, "// global_phase {}", angle(circuit.global_phase()));
    for r in circuit.registers() {
        let _ = write!(out, "qreg {}[{}];", r.name, r.width);
        if r.role == RegisterRole::Ancilla {
            out.push_str(" // ancilla");
        }
        out.push('\n');
    }
    let name = |q: usize| {
        let r = circuit
            .qubit_ref(q)
            .expect("gate qubits are validated on insertion");
        format!("{}[{}]", r.register, r.index)
    };
    for g in circuit.gates() {
        match *g {
            Gate::Cnot { control, target } => {
                let _ = writeln!(out, "cx {},{};", name(control), name(target));
            }
            Gate::X(q) => {
                let _ = writeln!(
                    out,
                    "u3({},{},{}) {};",
                    angle(PI),
                    angle(0.0),
                    angle(PI),
                    name(q)
                );
            }
            Gate::Rx(q, t) => {
                let _ = writeln!(out, "rx({}) {};", angle(-t), name(q));
            }
            Gate::Ry(q, t) => {
                let _ = writeln!(out, "ry({}) {};", angle(-t), name(q));
            }
            Gate::Rz(q, t) => {
                let _ = writeln!(out, "rz({}) {};", angle(t), name(q));
            }
            ref m => return Err(Error::UnexpandedMacro(m.name())),
        }
    }
    Ok(out)
}

/// `u3(θ, φ, λ)` as defined in `qelib1.inc`.
fn u3_matrix(theta: f64, phi: f64, lambda: f64) -> Mat2 {
    let (s, c) = (libm::sin(theta / 2.0), libm::cos(theta / 2.0));
    Mat2::new(
        Complex64::new(c, 0.0),
        -cis(lambda) * s,
        cis(phi) * s,
        cis(phi + lambda) * c,
    )
}

/// Parses text produced by [`export_qasm`] (and simple hand-written
/// variations of it). `u3(π,0,π)` maps back to `X`; any other `u3` becomes a
/// `U2` gate.
pub fn parse_qasm(text: &str) -> Result<Circuit> {
    let mut circuit = Circuit::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let err = |message: &str| Error::Qasm {
            line: line_no,
            message: message.to_string(),
        };
        let (code, comment) = match raw.find("//") {
            Some(i) => (raw[..i].trim(), raw[i + 2..].trim()),
            None => (raw.trim(), ""),
        };
        if code.is_empty() {
            if let Some(rest) = comment.strip_prefix("global_phase") {
                let p: f64 = rest.trim().parse().map_err(|_| err("bad global phase"))?;
                circuit.add_global_phase(p);
            }
            continue;
        }
        let stmt = code
            .strip_suffix(';')
            .ok_or_else(|| err("missing `;`"))?
            .trim();
        if stmt.starts_with("OPENQASM") || stmt.starts_with("include") {
            continue;
        }
        if let Some(decl) = stmt.strip_prefix("qreg") {
            let (name, width) = parse_operand(decl.trim()).ok_or_else(|| err("bad qreg"))?;
            let role = if comment == "ancilla" {
                RegisterRole::Ancilla
            } else {
                RegisterRole::Logical
            };
            circuit.add_register(name, width, role)?;
            continue;
        }
        let (head, operands) = match stmt.find(')') {
            Some(close) => (&stmt[..=close], stmt[close + 1..].trim()),
            None => {
                let split = stmt
                    .find(char::is_whitespace)
                    .ok_or_else(|| err("missing operands"))?;
                (&stmt[..split], stmt[split..].trim())
            }
        };
        let (op, args) = match head.find('(') {
            Some(open) => {
                let inner = &head[open + 1..head.len() - 1];
                let args = inner
                    .split(',')
                    .map(|a| a.trim().parse::<f64>())
                    .collect::<core::result::Result<Vec<f64>, _>>()
                    .map_err(|_| err("bad angle"))?;
                (head[..open].trim(), args)
            }
            None => (head.trim(), Vec::new()),
        };
        let qubits = operands
            .split(',')
            .map(|o| {
                let (reg, idx) = parse_operand(o.trim()).ok_or_else(|| err("bad operand"))?;
                circuit.qubit(reg, idx)
            })
            .collect::<Result<Vec<usize>>>()?;
        let gate = match (op, args.as_slice(), qubits.as_slice()) {
            ("cx", [], &[c, t]) => Gate::cnot(c, t),
            ("rx", &[t], &[q]) => Gate::Rx(q, -t),
            ("ry", &[t], &[q]) => Gate::Ry(q, -t),
            ("rz", &[t], &[q]) => Gate::Rz(q, t),
            ("u3", &[th, ph, la], &[q]) => {
                if th == PI && ph == 0.0 && la == PI {
                    Gate::X(q)
                } else {
                    Gate::U2(q, u3_matrix(th, ph, la))
                }
            }
            _ => return Err(err("unsupported statement")),
        };
        circuit.push(gate)?;
    }
    Ok(circuit)
}

/// `name[index]`
fn parse_operand(s: &str) -> Option<(&str, usize)> {
    let open = s.find('[')?;
    let close = s.strip_suffix(']')?;
    let idx = close[open + 1..].parse().ok()?;
    Some((&s[..open], idx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_PI_2;

    #[test]
    fn one_cnot_one_cx() {
        let mut c = Circuit::new();
        c.add_register("q", 2, RegisterRole::Logical).unwrap();
        c.push(Gate::cnot(0, 1)).unwrap();
        let text = export_qasm(&c).unwrap();
        assert_eq!(text.matches("cx ").count(), 1);
        assert!(text.contains("cx q[0],q[1];"));
    }

    #[test]
    fn rz_angle_precision() {
        let mut c = Circuit::new();
        c.add_register("q", 1, RegisterRole::Logical).unwrap();
        c.push(Gate::Rz(0, FRAC_PI_2)).unwrap();
        let text = export_qasm(&c).unwrap();
        let stmt: Vec<&str> = text.lines().filter(|l| l.starts_with("rz(")).collect();
        assert_eq!(stmt.len(), 1);
        assert_eq!(stmt[0], "rz(1.5707963267948966e0) q[0];");
        assert_eq!(
            parse_qasm(&text).unwrap().gates(),
            &[Gate::Rz(0, FRAC_PI_2)]
        );
    }

    #[test]
    fn macros_are_rejected() {
        let mut c = Circuit::new();
        c.add_register("q", 3, RegisterRole::Logical).unwrap();
        c.push(Gate::Toffoli(0, 1, 2)).unwrap();
        assert_eq!(export_qasm(&c), Err(Error::UnexpandedMacro("ccx")));
        assert!(export_qasm(&c.expand_macros()).is_ok());
    }

    #[test]
    fn round_trip_of_expanded_circuit() {
        let mut c = Circuit::new();
        c.add_register("x", 3, RegisterRole::Logical).unwrap();
        c.add_register("work", 2, RegisterRole::Ancilla).unwrap();
        c.extend([
            Gate::Toffoli(0, 1, 3),
            Gate::X(4),
            Gate::Rx(2, -0.123456789),
            Gate::Ry(4, 2.5),
            Gate::Fredkin(3, 0, 2),
            Gate::Diag2(1, 4, [0.1, -0.2, 0.3, 0.7]),
            Gate::U2(2, crate::linalg::hadamard()),
        ])
        .unwrap();
        c.add_global_phase(0.25);
        let e = c.expand_macros();
        let parsed = parse_qasm(&export_qasm(&e).unwrap()).unwrap();
        assert_eq!(parsed, e);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "OPENQASM 2.0;\nqreg q[1];\nh q[0];\n";
        assert!(matches!(parse_qasm(text), Err(Error::Qasm { line: 3, .. })));
    }
}
