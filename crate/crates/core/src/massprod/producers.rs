use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::compiler::{analytic_cnot_count, emit_mass_prod, CopyQubits};
use super::embed::Assembly;
use super::report::{ComponentReport, QsdSummary, SlotSummary, StateSplit, SynthesisReport};
use super::{ceil_log2, cost_bound, select_params, MassProdParams};
use crate::circuit::{Circuit, Gate, RegisterRole};
use crate::linalg::CMatrix;
use crate::synth::{
    demultiplex_1data, emit_diagonal, qsd_factorize, single_state_prep_cnots, state_prep_angles,
    MultiplexedRotation, Multiplexor1, PhaseFunction, QsdFactorKind,
};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    /// Prefix width; chosen automatically when `None`.
    pub k: Option<usize>,
    /// Repeat the single-copy circuit per copy when `n` is too small for the
    /// requested number of copies, instead of failing.
    pub fallback: bool,
}

#[derive(Clone, Debug)]
pub struct Produced {
    pub circuit: Circuit,
    pub report: SynthesisReport,
}

fn copies_for(r: usize) -> Result<usize> {
    if r == 0 {
        return Err(Error::Domain("r must be at least 1".into()));
    }
    Ok(1 << ceil_log2(r))
}

/// `Ok(None)` means "repeat per copy".
fn params_or_fallback(n: usize, r: usize, opts: &Options) -> Result<Option<MassProdParams>> {
    match select_params(n, r, opts.k) {
        Ok(p) => Ok(p),
        Err(_) if opts.fallback => Ok(None),
        Err(e) => Err(e),
    }
}

fn logical(c: &mut Circuit, name: &str, width: usize) -> Result<Vec<usize>> {
    Ok(c.add_register(name, width, RegisterRole::Logical)?
        .collect())
}

pub fn naive_diagonal_cnots(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        (1 << n) - 2
    }
}

/// `diag(f)^{⊗copies}` on logical registers `x{j}`; the conjugation bits of
/// the copy-sharing circuit are ancillas, so `f̄` acts as `f`.
pub fn mass_produce_diagonal(f: &PhaseFunction, r: usize, opts: &Options) -> Result<Produced> {
    let n = f.n();
    let copies = copies_for(r)?;
    let naive = r as u64 * naive_diagonal_cnots(n);
    let params = params_or_fallback(n, r, opts)?;
    let mut c = Circuit::new();
    let Some(params) = params else {
        for j in 0..copies {
            let x = logical(&mut c, &format!("x{j}"), n)?;
            emit_diagonal(&mut c, f, &x)?;
        }
        let mut report = SynthesisReport::for_circuit("diagonal", n, r, copies, &c, naive);
        report.fallback = copies > 1;
        return Ok(Produced { circuit: c, report });
    };
    let mut qubits = Vec::with_capacity(copies);
    for j in 0..copies {
        let x = logical(&mut c, &format!("x{j}"), n)?;
        let cj = c
            .add_register(format!("c{j}"), 1, RegisterRole::Ancilla)?
            .start;
        qubits.push(CopyQubits { x, c: cj });
    }
    let slots = emit_mass_prod(&mut c, f, &params, &qubits, "")?;
    let mut report = SynthesisReport::for_circuit("diagonal", n, r, copies, &c, naive);
    report.params = Some(params);
    report.bound_value = Some(cost_bound(&params));
    let top = slots.iter().filter(|s| s.depth == 0);
    report.slots = Some(SlotSummary {
        shared_subcircuits: top.clone().count(),
        groups_per_subcircuit: top.map(|s| s.groups).max().unwrap_or(0),
    });
    Ok(Produced { circuit: c, report })
}

fn rotation_registers(c: &mut Circuit, s: usize, copies: usize) -> Result<Vec<CopyQubits>> {
    (0..copies)
        .map(|j| {
            let x = logical(c, &format!("sel{j}"), s)?;
            let d = logical(c, &format!("data{j}"), 1)?[0];
            Ok(CopyQubits { x, c: d })
        })
        .collect()
}

/// `copies` independent copies of a multiplexed rotation on registers
/// `sel{j}`, `data{j}`. The `z` axis maps onto `f̄` with `θ_x = -α_x/2`; the
/// `x` and `y` axes conjugate each data qubit by a fixed single-qubit gate
/// around the `z` circuit, so all three axes cost the same.
pub fn mass_produce_multiplexed_rotation(
    m: &MultiplexedRotation,
    r: usize,
    opts: &Options,
) -> Result<Produced> {
    let s = m.s();
    let copies = copies_for(r)?;
    let single = if s == 0 { 0 } else { 1u64 << s };
    let naive = r as u64 * single;
    let params = params_or_fallback(s, r, opts)?;
    let mut c = Circuit::new();
    let regs = rotation_registers(&mut c, s, copies)?;
    let kind = "multiplexed-rotation";
    let Some(params) = params else {
        for q in &regs {
            m.emit(&mut c, &q.x, q.c)?;
        }
        let mut report = SynthesisReport::for_circuit(kind, s, r, copies, &c, naive);
        report.fallback = copies > 1;
        return Ok(Produced { circuit: c, report });
    };
    let basis = m.axis.from_z_basis_change();
    let sign = if basis.is_some() { 0.5 } else { -0.5 };
    let f = PhaseFunction::new(s, m.angles().iter().map(|a| sign * a).collect())?;
    if let Some(v) = basis {
        c.extend(regs.iter().map(|q| Gate::U2(q.c, v.adjoint())))?;
    }
    let slots = emit_mass_prod(&mut c, &f, &params, &regs, "")?;
    if let Some(v) = basis {
        c.extend(regs.iter().map(|q| Gate::U2(q.c, v)))?;
    }
    let mut report = SynthesisReport::for_circuit(kind, s, r, copies, &c, naive);
    report.params = Some(params);
    report.bound_value = Some(cost_bound(&params));
    let top = slots.iter().filter(|s| s.depth == 0);
    report.slots = Some(SlotSummary {
        shared_subcircuits: top.clone().count(),
        groups_per_subcircuit: top.map(|s| s.groups).max().unwrap_or(0),
    });
    Ok(Produced { circuit: c, report })
}

fn component(label: impl Into<alloc::string::String>, p: &Produced) -> ComponentReport {
    ComponentReport {
        label: label.into(),
        n: p.report.n,
        cnot_count: p.report.cnot_count,
        params: p.report.params,
        bound_value: p.report.bound_value.unwrap_or(p.report.cnot_count as f64),
        fallback: p.report.params.is_none(),
    }
}

/// `copies` copies of an `(s, 1)`-multiplexor on registers `sel{j}`,
/// `data{j}`: the demultiplexed `R_z`, `R_y`, `R_z` are mass-produced, and the
/// select diagonal `Δ` is mass-produced as a lifted diagonal whose conjugation
/// bits are fresh ancillas.
pub fn mass_produce_multiplexor1(m: &Multiplexor1, r: usize, opts: &Options) -> Result<Produced> {
    let s = m.s();
    let copies = copies_for(r)?;
    let single = if s == 0 { 0 } else { 4 * (1u64 << s) - 2 };
    let naive = r as u64 * single;
    let kind = "multiplexor";
    let params = params_or_fallback(s, r, opts)?;
    let mut c = Circuit::new();
    let regs = rotation_registers(&mut c, s, copies)?;
    if params.is_none() {
        for q in &regs {
            m.emit(&mut c, &q.x, q.c)?;
        }
        let mut report = SynthesisReport::for_circuit(kind, s, r, copies, &c, naive);
        report.fallback = copies > 1;
        return Ok(Produced { circuit: c, report });
    }
    let d = demultiplex_1data(m)?;
    let strict = Options {
        fallback: false,
        ..*opts
    };
    let rot_map: Vec<usize> = regs
        .iter()
        .flat_map(|q| q.x.iter().copied().chain([q.c]))
        .collect();
    let sel_map: Vec<usize> = regs.iter().flat_map(|q| q.x.iter().copied()).collect();
    let mut parts = Assembly::default();
    let mut components = Vec::with_capacity(4);
    for (label, rot) in [("rz2", &d.rz2), ("ry", &d.ry), ("rz1", &d.rz1)] {
        let p = mass_produce_multiplexed_rotation(rot, r, &strict)?;
        components.push(component(label, &p));
        parts.push(p.circuit, rot_map.clone());
    }
    let p = mass_produce_diagonal(&d.delta, r, &strict)?;
    components.push(component("delta", &p));
    parts.push(p.circuit, sel_map);
    parts.finish(&mut c)?;
    let mut report = SynthesisReport::for_circuit(kind, s, r, copies, &c, naive);
    report.params = components[0].params;
    report.bound_value = Some(components.iter().map(|x| x.bound_value).sum());
    report.components = components;
    Ok(Produced { circuit: c, report })
}

fn copy_registers(c: &mut Circuit, n: usize, copies: usize) -> Result<Vec<Vec<usize>>> {
    (0..copies)
        .map(|j| logical(c, &format!("q{j}"), n))
        .collect()
}

/// `ψ^{⊗copies}` on registers `q{j}`. Levels `ℓ < ⌈n/2⌉` are repeated per
/// copy, as are levels with `ℓ ≤ t` selects, which no prefix width can serve;
/// each remaining level's `R_y` and `R_z` multiplexors are mass-produced.
pub fn mass_produce_state(psi: &[Complex64], r: usize, opts: &Options) -> Result<Produced> {
    let angles = state_prep_angles(psi)?;
    let n = angles.levels.len();
    let copies = copies_for(r)?;
    let naive = r as u64 * single_state_prep_cnots(n);
    let threshold = n.div_ceil(2);
    let t = ceil_log2(r);
    let mut c = Circuit::new();
    let regs = copy_registers(&mut c, n, copies)?;
    let strict = Options {
        fallback: false,
        ..*opts
    };
    let mut parts = Assembly::default();
    let mut components = Vec::new();
    let (mut naive_levels, mut mass_levels) = (Vec::new(), Vec::new());
    let (mut naive_cnots, mut mass_cnots, mut analytic) = (0u64, 0u64, 0u64);
    for (l, level) in angles.levels.iter().enumerate() {
        let rots = [level.ry_rotation(l), level.rz_rotation(l)];
        let map: Vec<usize> = regs.iter().flat_map(|q| q[..=l].iter().copied()).collect();
        if t == 0 || l < threshold || l <= t {
            naive_levels.push(l);
            let mut part = Circuit::new();
            for j in 0..copies {
                let sel = logical(&mut part, &format!("q{j}"), l + 1)?;
                for rot in &rots {
                    rot.emit(&mut part, &sel[..l], sel[l])?;
                }
            }
            let cnots = part.cnot_count();
            naive_cnots += cnots;
            analytic += copies as u64 * if l == 0 { 0 } else { 2 << l };
            parts.push(part, map);
            continue;
        }
        mass_levels.push(l);
        for rot in &rots {
            let p = mass_produce_multiplexed_rotation(rot, r, &strict).map_err(|e| match e {
                Error::Domain(msg) => {
                    Error::Domain(format!("state level {l} cannot be mass-produced: {msg}"))
                }
                e => e,
            })?;
            let params = p
                .report
                .params
                .expect("strict options either mass-produce or fail");
            analytic += analytic_cnot_count(l, params.k, params.t);
            mass_cnots += p.report.cnot_count;
            components.push(component(format!("level{l}_{}", rot.axis.as_str()), &p));
            parts.push(p.circuit, map.clone());
        }
    }
    parts.finish(&mut c)?;
    c.add_global_phase(copies as f64 * angles.global_phase);
    let mut report = SynthesisReport::for_circuit("state", n, r, copies, &c, naive);
    report.components = components;
    report.state_split = Some(StateSplit {
        threshold,
        naive_levels,
        mass_levels,
        naive_cnots,
        mass_cnots,
        analytic_cnots: analytic,
    });
    Ok(Produced { circuit: c, report })
}

/// Single-copy CNOTs of the Shannon decomposition: `2^{n-1}` leaves at
/// `4·2^{n-1} - 2` and `2^{n-1} - 1` rotations at `2^{n-1}`.
pub fn single_qsd_cnots(n: usize) -> u64 {
    if n <= 1 {
        return 0;
    }
    let h = 1u64 << (n - 1);
    h * (4 * h - 2) + (h - 1) * h
}

/// `U^{⊗copies}` on registers `q{j}`: every Shannon factor is mass-produced
/// on its own, falling back to per-copy repetition when its select count is
/// too small for `r`.
pub fn mass_produce_unitary(u: &CMatrix, r: usize, opts: &Options) -> Result<Produced> {
    let factors = qsd_factorize(u)?;
    let n = u.nrows().trailing_zeros() as usize;
    let copies = copies_for(r)?;
    let naive = r as u64 * single_qsd_cnots(n);
    let mut c = Circuit::new();
    let regs = copy_registers(&mut c, n, copies)?;
    let lenient = Options {
        fallback: true,
        ..*opts
    };
    let mut parts = Assembly::default();
    let mut components = Vec::with_capacity(factors.len());
    let (mut leaves, mut rotations) = (0, 0);
    for f in &factors {
        let map: Vec<usize> = regs
            .iter()
            .flat_map(|q| f.selects.iter().map(|&s| q[s]).chain([q[f.data]]))
            .collect();
        let (label, p) = match &f.kind {
            QsdFactorKind::Leaf(m) => {
                leaves += 1;
                (
                    format!("leaf{}", leaves - 1),
                    mass_produce_multiplexor1(m, r, &lenient)?,
                )
            }
            QsdFactorKind::RotY(m) => {
                rotations += 1;
                (
                    format!("ry{}", rotations - 1),
                    mass_produce_multiplexed_rotation(m, r, &lenient)?,
                )
            }
        };
        components.push(component(label, &p));
        parts.push(p.circuit, map);
    }
    parts.finish(&mut c)?;
    let mut report = SynthesisReport::for_circuit("unitary", n, r, copies, &c, naive);
    report.fallback = components.iter().all(|x| x.fallback);
    report.qsd = Some(QsdSummary {
        leaves,
        rotations,
        headline_bound: 2.5 * libm::pow(4.0, n as f64),
        factor_bound_sum: components.iter().map(|x| x.bound_value).sum(),
    });
    report.components = components;
    Ok(Produced { circuit: c, report })
}
