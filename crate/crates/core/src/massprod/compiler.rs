use alloc::format;
use alloc::vec::Vec;
use core::ops::Range;

use super::gseq::derive_g_sequence;
use super::reversible::{
    comparator_cnots, comparator_gates, star_gate, threshold_cnots, threshold_gates,
};
use super::MassProdParams;
use crate::circuit::{Circuit, Gate, RegisterRole, FREDKIN_CNOTS, TOFFOLI_CNOTS};
use crate::synth::{Axis, MultiplexedRotation, PhaseFunction};
use crate::{Error, Result};

/// The qubits of one copy of `f̄`: the input `x` (big-endian) and the
/// conjugation bit `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopyQubits {
    pub x: Vec<usize>,
    pub c: usize,
}

/// Gate range of one shared `ḡ_ℓ` slot, serving `groups` register groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotRecord {
    /// 0 for the outermost level.
    pub depth: usize,
    pub ell: usize,
    pub gates: Range<usize>,
    pub groups: usize,
}

#[derive(Clone, Debug)]
pub struct MassProd {
    pub circuit: Circuit,
    pub params: MassProdParams,
    pub slots: Vec<SlotRecord>,
}

impl MassProd {
    /// Slots of the outermost level, one per `ℓ`.
    pub fn top_slots(&self) -> impl Iterator<Item = &SlotRecord> {
        self.slots.iter().filter(|s| s.depth == 0)
    }
}

/// Per-pair ancillas of one level.
#[derive(Clone, Debug)]
struct PairRegs {
    flag: usize,
    z: Vec<usize>,
    c: usize,
    a: usize,
    b: usize,
}

/// Ancillas of a level and, below it, of the level that realizes its slots.
/// Allocated once and reused for every `ℓ`.
#[derive(Clone, Debug)]
struct LevelLayout {
    pairs: Vec<PairRegs>,
    child: Option<alloc::boxed::Box<LevelLayout>>,
}

fn allocate(
    circuit: &mut Circuit,
    prefix: &str,
    n: usize,
    k: usize,
    t: usize,
    depth: usize,
) -> Result<LevelLayout> {
    if t == 0 {
        return Ok(LevelLayout {
            pairs: Vec::new(),
            child: None,
        });
    }
    let mut pairs = Vec::with_capacity(1 << (t - 1));
    for p in 0..1usize << (t - 1) {
        let tag = format!("{prefix}d{depth}_p{p}");
        let mut reg = |name: &str, width: usize| {
            circuit.add_register(format!("{name}_{tag}"), width, RegisterRole::Ancilla)
        };
        let flag = reg("flag", 1)?.start;
        let z = reg("z", n - k)?.collect();
        let c = reg("c", 1)?.start;
        let ab = reg("ab", 2)?.start;
        pairs.push(PairRegs {
            flag,
            z,
            c,
            a: ab,
            b: ab + 1,
        });
    }
    let child = allocate(circuit, prefix, n - k, k, t - 1, depth + 1)?;
    Ok(LevelLayout {
        pairs,
        child: Some(alloc::boxed::Box::new(child)),
    })
}

struct Emitter<'a> {
    circuit: &'a mut Circuit,
    k: usize,
    work: Vec<usize>,
    slots: Vec<SlotRecord>,
}

impl Emitter<'_> {
    fn push_all(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        self.circuit.extend(gates)
    }

    /// `f̄` on every copy; `copies.len() == 2^t`.
    fn level(
        &mut self,
        f: &PhaseFunction,
        t: usize,
        copies: &[CopyQubits],
        layout: &LevelLayout,
        depth: usize,
    ) -> Result<()> {
        if t == 0 {
            let [copy] = copies else {
                unreachable!("one copy at the base")
            };
            let angles = f.angles().iter().map(|a| -2.0 * a).collect();
            return MultiplexedRotation::new(Axis::Z, f.n(), angles)?.emit(
                self.circuit,
                &copy.x,
                copy.c,
            );
        }
        let k = self.k;
        let pairs: Vec<(&CopyQubits, &CopyQubits, &PairRegs)> = copies
            .chunks(2)
            .zip(&layout.pairs)
            .map(|(c, r)| (&c[0], &c[1], r))
            .collect();
        // sort each pair so that the first copy holds the smaller input
        let mut sort = Vec::new();
        for &(lo, hi, r) in &pairs {
            sort.extend(comparator_gates(&lo.x, &hi.x, r.flag, self.work[0]));
            sort.extend(
                lo.x.iter()
                    .zip(&hi.x)
                    .map(|(&p, &q)| Gate::Fredkin(r.flag, p, q)),
            );
            sort.push(Gate::Fredkin(r.flag, lo.c, hi.c));
        }
        self.push_all(sort.iter().copied())?;

        let gs = derive_g_sequence(f, k)?;
        let child_copies: Vec<CopyQubits> = pairs
            .iter()
            .map(|(_, _, r)| CopyQubits {
                x: r.z.clone(),
                c: r.c,
            })
            .collect();
        let child = layout.child.as_deref().expect("allocated for t ≥ 1");
        for (ell, g) in gs.g.iter().enumerate() {
            let mut prologue = Vec::new();
            for &(m, big, r) in &pairs {
                prologue.extend(threshold_gates(
                    &m.x[..k],
                    &big.x[..k],
                    ell,
                    r.a,
                    r.b,
                    &self.work,
                ));
                for (j, &zj) in r.z.iter().enumerate() {
                    prologue.push(Gate::Toffoli(r.a, m.x[k + j], zj));
                    prologue.push(Gate::Toffoli(r.b, big.x[k + j], zj));
                }
                // c = a·c_m ⊕ b·(1 - c_M)
                prologue.push(Gate::Toffoli(r.a, m.c, r.c));
                prologue.push(Gate::X(big.c));
                prologue.push(Gate::Toffoli(r.b, big.c, r.c));
                prologue.push(Gate::X(big.c));
            }
            self.push_all(prologue.iter().copied())?;
            let start = self.circuit.gate_count();
            self.level(g, t - 1, &child_copies, child, depth + 1)?;
            self.slots.push(SlotRecord {
                depth,
                ell,
                gates: start..self.circuit.gate_count(),
                groups: pairs.len(),
            });
            // with a = b = 0 the slot still applied ḡ_ℓ(0, 0); undo it
            let delta = -g.angle(0);
            self.push_all(
                pairs
                    .iter()
                    .filter_map(|(_, _, r)| star_gate(r.a, r.b, delta)),
            )?;
            self.push_all(prologue.iter().rev().copied())?;
        }
        self.push_all(sort.iter().rev().copied())
    }
}

/// Emits `C_{f,n,k,t}` on `copies` (`2^t` of them, each `n` + 1 qubits),
/// adding the ancilla registers it needs under names starting with `prefix`.
pub(crate) fn emit_mass_prod(
    circuit: &mut Circuit,
    f: &PhaseFunction,
    params: &MassProdParams,
    copies: &[CopyQubits],
    prefix: &str,
) -> Result<Vec<SlotRecord>> {
    if f.n() != params.n
        || copies.len() != params.copies()
        || copies.iter().any(|c| c.x.len() != params.n)
    {
        return Err(Error::DimensionMismatch {
            expected: params.n,
            got: f.n(),
        });
    }
    let work: Vec<usize> = circuit
        .add_register(
            format!("{prefix}work"),
            params.k.max(1),
            RegisterRole::Ancilla,
        )?
        .collect();
    let layout = allocate(circuit, prefix, params.n, params.k, params.t, 0)?;
    let mut e = Emitter {
        circuit,
        k: params.k,
        work,
        slots: Vec::new(),
    };
    e.level(f, params.t, copies, &layout, 0)?;
    Ok(e.slots)
}

/// `C_{f,n,k,t}` implementing `f̄^{⊗2^t}` on logical registers `x{j}`, `c{j}`.
pub fn build_mass_prod(f: &PhaseFunction, k: usize, t: usize) -> Result<MassProd> {
    let params = MassProdParams::new(f.n(), k, t)?;
    let mut circuit = Circuit::new();
    let mut copies = Vec::with_capacity(params.copies());
    for j in 0..params.copies() {
        let x = circuit
            .add_register(format!("x{j}"), params.n, RegisterRole::Logical)?
            .collect();
        let c = circuit
            .add_register(format!("c{j}"), 1, RegisterRole::Logical)?
            .start;
        copies.push(CopyQubits { x, c });
    }
    let slots = emit_mass_prod(&mut circuit, f, &params, &copies, "")?;
    Ok(MassProd {
        circuit,
        params,
        slots,
    })
}

/// `C_{f,n,k,1}`: two copies.
pub fn build_mass_prod_base(f: &PhaseFunction, k: usize) -> Result<MassProd> {
    build_mass_prod(f, k, 1)
}

/// CNOT total of [`build_mass_prod`] when every star gate is non-trivial
/// (true unless some `g_ℓ` vanishes at `0`, in which case this is an upper
/// bound).
pub fn analytic_cnot_count(n: usize, k: usize, t: usize) -> u64 {
    if t == 0 {
        return if n == 0 { 0 } else { 1 << n };
    }
    let (nn, kk) = (n as u64, k as u64);
    let pairs = 1u64 << (t - 1);
    let sort = 2 * comparator_cnots(n) + 2 * FREDKIN_CNOTS * (nn + 1);
    let per_ell: u64 = (0..=1usize << k)
        .map(|ell| 2 * threshold_cnots(k, ell) + 2 * TOFFOLI_CNOTS * (2 * (nn - kk) + 2) + 2)
        .sum();
    pairs * (sort + per_ell) + ((1u64 << k) + 1) * analytic_cnot_count(n - k, k, t - 1)
}
