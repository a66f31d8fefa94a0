//! Classical reversible pieces: the comparator `A_n`, the prefix thresholds
//! `B_{n,k,ℓ}` and the star phase gate.

use alloc::vec::Vec;

use crate::circuit::{Circuit, Gate, RegisterRole};

/// `flag ^= 1{x > y}` for big-endian registers `x`, `y`, using `x + ¬y`'s
/// carry. Majority gates ripple from the least significant bit, starting
/// from the clean ancilla `carry`; everything but `flag` is restored.
pub(crate) fn comparator_gates(x: &[usize], y: &[usize], flag: usize, carry: usize) -> Vec<Gate> {
    let n = x.len();
    let mut maj = Vec::with_capacity(3 * n);
    let mut c = carry;
    for i in (0..n).rev() {
        // MAJ(c, ¬y_i, x_i): x_i ends up holding the carry out of bit i
        maj.push(Gate::cnot(x[i], y[i]));
        maj.push(Gate::cnot(x[i], c));
        maj.push(Gate::Toffoli(c, y[i], x[i]));
        c = x[i];
    }
    let mut out = Vec::with_capacity(6 * n + 2 + n);
    out.extend(y.iter().map(|&q| Gate::X(q)));
    out.extend_from_slice(&maj);
    out.push(Gate::cnot(x[0], flag));
    out.extend(maj.iter().rev().copied());
    out.extend(y.iter().map(|&q| Gate::X(q)));
    out
}

/// CNOTs of [`comparator_gates`] after expansion.
pub fn comparator_cnots(n: usize) -> u64 {
    16 * n as u64 + 1
}

#[derive(Clone, Copy)]
enum Borrow {
    Zero,
    In(usize),
}

/// `target ^= 1{v < value}` (negated when `negate`) for a big-endian register
/// `v` and a classical constant. The borrow of `v - value` ripples from the
/// least significant bit through fresh `work` qubits and is uncomputed.
/// Constant outcomes fold to at most one `X`.
fn less_than_const(
    v: &[usize],
    value: usize,
    target: usize,
    negate: bool,
    work: &[usize],
) -> Vec<Gate> {
    let k = v.len();
    if value == 0 || value >= 1 << k {
        let always = value != 0;
        return if always != negate {
            alloc::vec![Gate::X(target)]
        } else {
            Vec::new()
        };
    }
    let mut chain = Vec::new();
    let mut borrow = Borrow::Zero;
    let mut next = 0;
    for i in 0..k {
        let vi = v[k - 1 - i];
        let bit = (value >> i) & 1 == 1;
        borrow = match (borrow, bit) {
            (Borrow::Zero, false) => Borrow::Zero,
            (Borrow::Zero, true) => {
                // borrow' = ¬v_i
                let w = work[next];
                next += 1;
                chain.extend([Gate::cnot(vi, w), Gate::X(w)]);
                Borrow::In(w)
            }
            (Borrow::In(p), false) => {
                // borrow' = ¬v_i ∧ p
                let w = work[next];
                next += 1;
                chain.extend([Gate::X(vi), Gate::Toffoli(vi, p, w), Gate::X(vi)]);
                Borrow::In(w)
            }
            (Borrow::In(p), true) => {
                // borrow' = ¬v_i ∨ p = ¬(v_i ∧ ¬p)
                let w = work[next];
                next += 1;
                chain.extend([Gate::X(p), Gate::Toffoli(vi, p, w), Gate::X(p), Gate::X(w)]);
                Borrow::In(w)
            }
        };
    }
    let Borrow::In(out) = borrow else {
        unreachable!("value > 0 sets a borrow")
    };
    let mut gates = chain.clone();
    gates.push(Gate::cnot(out, target));
    if negate {
        gates.push(Gate::X(target));
    }
    gates.extend(chain.iter().rev().copied());
    gates
}

fn less_than_const_cnots(k: usize, value: usize) -> u64 {
    if value == 0 || value >= 1 << k {
        return 0;
    }
    let low = value.trailing_zeros() as u64;
    let chain = 1 + 6 * (k as u64 - 1 - low);
    2 * chain + 1
}

/// `a ^= 1{ℓ ≤ m_prefix}`, `b ^= 1{ℓ > M_prefix}` where the prefixes are the
/// registers as given (big-endian, `k` bits each). Needs `k` clean work qubits.
pub(crate) fn threshold_gates(
    m: &[usize],
    big: &[usize],
    ell: usize,
    a: usize,
    b: usize,
    work: &[usize],
) -> Vec<Gate> {
    let mut g = less_than_const(m, ell, a, true, work);
    g.extend(less_than_const(big, ell, b, false, work));
    g
}

/// CNOTs of one application of `B_{n,k,ℓ}`.
pub fn threshold_cnots(k: usize, ell: usize) -> u64 {
    2 * less_than_const_cnots(k, ell)
}

/// Standalone `A_n`: logical `x`, `y`, `flag`; ancilla `work`.
pub fn build_comparator(n: usize) -> Circuit {
    let mut c = Circuit::new();
    let x = c
        .add_register("x", n, RegisterRole::Logical)
        .expect("fresh");
    let y = c
        .add_register("y", n, RegisterRole::Logical)
        .expect("fresh");
    let flag = c
        .add_register("flag", 1, RegisterRole::Logical)
        .expect("fresh");
    let work = c
        .add_register("work", 1, RegisterRole::Ancilla)
        .expect("fresh");
    let (x, y): (Vec<usize>, Vec<usize>) = (x.collect(), y.collect());
    c.extend(comparator_gates(&x, &y, flag.start, work.start))
        .expect("valid qubits");
    c
}

/// Standalone `B_{n,k,ℓ}`: logical `m`, `big` (`n` bits each), `a`, `b`;
/// ancilla `work` (`k` bits). Only the first `k` bits of `m` and `big` are read.
pub fn build_threshold(n: usize, k: usize, ell: usize) -> Circuit {
    assert!(
        1 <= k && k <= n && ell <= 1 << k,
        "need 1 ≤ k ≤ n and ℓ ≤ 2^k"
    );
    let mut c = Circuit::new();
    let m = c
        .add_register("m", n, RegisterRole::Logical)
        .expect("fresh");
    let big = c
        .add_register("big", n, RegisterRole::Logical)
        .expect("fresh");
    let a = c
        .add_register("a", 1, RegisterRole::Logical)
        .expect("fresh");
    let b = c
        .add_register("b", 1, RegisterRole::Logical)
        .expect("fresh");
    let work = c
        .add_register("work", k, RegisterRole::Ancilla)
        .expect("fresh");
    let (m, big, work): (Vec<usize>, Vec<usize>, Vec<usize>) =
        (m.collect(), big.collect(), work.collect());
    c.extend(threshold_gates(
        &m[..k],
        &big[..k],
        ell,
        a.start,
        b.start,
        &work,
    ))
    .expect("valid qubits");
    c
}

pub(crate) fn star_gate(a: usize, b: usize, delta: f64) -> Option<Gate> {
    (delta != 0.0).then_some(Gate::Diag2(a, b, [delta, 0.0, 0.0, 0.0]))
}

/// `diag(e^{iδ}, 1, 1, 1)` on registers `a`, `b`; empty for `δ = 0`.
pub fn build_star_gate(delta: f64) -> Circuit {
    let mut c = Circuit::new();
    c.add_register("a", 1, RegisterRole::Logical)
        .expect("fresh");
    c.add_register("b", 1, RegisterRole::Logical)
        .expect("fresh");
    if let Some(g) = star_gate(0, 1, delta) {
        c.push(g).expect("valid qubits");
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{cis, CMatrix, ONE};
    use crate::sim::{
        bits_to_index, circuit_unitary, equal_up_to_global_phase, index_to_bits,
        simulate_phase_path, verify_ancilla_restoration,
    };
    use alloc::vec;

    fn run(c: &Circuit, input: &[bool]) -> Vec<bool> {
        let p = simulate_phase_path(c, input).unwrap();
        assert_eq!(p.phase, ONE);
        p.bits
    }

    #[test]
    fn comparator_truth_table() {
        for n in 1..=4 {
            let c = build_comparator(n);
            assert_eq!(c.cnot_count(), comparator_cnots(n));
            for x in 0..1usize << n {
                for y in 0..1usize << n {
                    for flag in [false, true] {
                        let mut input = index_to_bits(x, n);
                        input.extend(index_to_bits(y, n));
                        input.extend([flag, false]);
                        let out = run(&c, &input);
                        let mut want = input.clone();
                        want[2 * n] = flag ^ (x > y);
                        assert_eq!(out, want, "n={n} x={x} y={y}");
                    }
                }
            }
            assert!(verify_ancilla_restoration(&c, 1 << (2 * n + 1), 0)
                .unwrap()
                .passed());
        }
    }

    #[test]
    fn threshold_truth_tables() {
        let (n, k) = (4, 2);
        for ell in 0..=1usize << k {
            let c = build_threshold(n, k, ell);
            assert_eq!(c.cnot_count(), threshold_cnots(k, ell));
            for m in 0..1usize << n {
                for big in 0..1usize << n {
                    let mut input = index_to_bits(m, n);
                    input.extend(index_to_bits(big, n));
                    input.extend([false, false, false, false]);
                    let out = run(&c, &input);
                    let (mp, bp) = (m >> (n - k), big >> (n - k));
                    let (a, b) = (ell <= mp, ell > bp);
                    assert_eq!(out[2 * n], a);
                    assert_eq!(out[2 * n + 1], b);
                    assert_eq!(out[..2 * n], input[..2 * n]);
                    assert!(out[2 * n + 2..].iter().all(|&w| !w));
                    if m <= big {
                        assert!(!(a && b), "a and b both set for m={m} M={big} ℓ={ell}");
                    }
                }
            }
        }
    }

    #[test]
    fn threshold_boundary_constants() {
        assert_eq!(build_threshold(4, 2, 0).gates(), [Gate::X(8)]);
        assert_eq!(build_threshold(4, 2, 4).gates(), [Gate::X(9)]);
    }

    #[test]
    fn threshold_all_widths() {
        for k in 1..=4 {
            let n = k;
            for ell in 0..=1usize << k {
                let c = build_threshold(n, k, ell);
                for v in 0..1usize << (2 * n) {
                    let mut input = index_to_bits(v, 2 * n);
                    input.extend(vec![false; 2 + k]);
                    let out = run(&c, &input);
                    let (m, big) = (v >> n, v & ((1 << n) - 1));
                    assert_eq!(out[2 * n], ell <= m);
                    assert_eq!(out[2 * n + 1], ell > big);
                    assert_eq!(bits_to_index(&out[2 * n + 2..]), 0);
                }
            }
        }
    }

    #[test]
    fn star_gate_matrix() {
        assert!(build_star_gate(0.0).gates().is_empty());
        let c = build_star_gate(core::f64::consts::PI / 3.0);
        assert!(c.cnot_count() <= 2);
        let mut want = CMatrix::identity(4, 4);
        want[(0, 0)] = cis(core::f64::consts::PI / 3.0);
        let u = circuit_unitary(&c.expand_macros()).unwrap();
        assert!(equal_up_to_global_phase(&u, &want, 1e-12).unwrap().0);
    }
}
