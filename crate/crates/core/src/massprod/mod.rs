//! Copy-sharing compilation.
//!
//! [`build_mass_prod`] implements `f̄^{⊗2^t}` for a phase function `f` on `n`
//! bits. Each pair of copies is sorted by a comparator so that one copy holds
//! the minimum `m` and the other the maximum `M`; the function is split into
//! `2^k + 1` telescoping factors `g_ℓ` on the last `n - k` bits, and for every
//! `ℓ` at most one copy of each pair is routed into a shared `ḡ_ℓ` slot. For
//! `t > 1` the slot is itself a copy-sharing circuit serving all pairs.
//!
//! The derived producers ([`mass_produce_diagonal`],
//! [`mass_produce_multiplexed_rotation`], [`mass_produce_multiplexor1`],
//! [`mass_produce_state`], [`mass_produce_unitary`]) reduce their targets to
//! this construction.

mod compiler;
mod embed;
mod gseq;
mod producers;
mod report;
mod reversible;

pub use compiler::{
    analytic_cnot_count, build_mass_prod, build_mass_prod_base, CopyQubits, MassProd, SlotRecord,
};
pub use gseq::{derive_g_sequence, GSequence};
pub use producers::{
    mass_produce_diagonal, mass_produce_multiplexed_rotation, mass_produce_multiplexor1,
    mass_produce_state, mass_produce_unitary, naive_diagonal_cnots, single_qsd_cnots, Options,
    Produced,
};
pub use report::{ComponentReport, QsdSummary, SlotSummary, StateSplit, SynthesisReport};
pub use reversible::{
    build_comparator, build_star_gate, build_threshold, comparator_cnots, threshold_cnots,
};

use crate::{Error, Result};

/// Cost-model constant: every non-rotation CNOT spent per pair of copies and
/// per `ℓ` fits in `d·n`, given the Toffoli/Fredkin/Swap/Diag2 templates of
/// [`crate::circuit`].
pub const D: u64 = 64;

/// `n` input bits, prefix width `k`, recursion depth `t` (`2^t` copies) and
/// the cost constant `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MassProdParams {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub d: u64,
}

impl MassProdParams {
    /// Requires `k ≥ 1`, `t ≥ 1` and `n > k·t`.
    pub fn new(n: usize, k: usize, t: usize) -> Result<Self> {
        if k == 0 || t == 0 || n <= k * t {
            return Err(Error::Domain(alloc::format!(
                "need k ≥ 1, t ≥ 1 and n > k·t; got n={n}, k={k}, t={t}"
            )));
        }
        Ok(MassProdParams { n, k, t, d: D })
    }

    pub fn copies(&self) -> usize {
        1 << self.t
    }
}

/// `(2^k + 1)^t · (2^{n-tk} + 2^t·d·n)`
pub fn cost_bound(p: &MassProdParams) -> f64 {
    let base = libm::pow(2.0, p.k as f64) + 1.0;
    libm::pow(base, p.t as f64)
        * (libm::pow(2.0, (p.n - p.t * p.k) as f64)
            + libm::pow(2.0, p.t as f64) * p.d as f64 * p.n as f64)
}

/// `⌈log₂ x⌉` for `x ≥ 1`.
pub fn ceil_log2(x: usize) -> usize {
    assert!(x >= 1);
    (usize::BITS - (x - 1).leading_zeros()) as usize
}

/// `None` for a single copy. Otherwise `t = ⌈log₂ r⌉` and `k = ⌈log₂ n⌉`
/// (at least 1), lowered toward 1 until `n > k·t`. An explicit `k` is used
/// as given.
pub fn select_params(n: usize, r: usize, k: Option<usize>) -> Result<Option<MassProdParams>> {
    if r == 0 {
        return Err(Error::Domain("r must be at least 1".into()));
    }
    let t = ceil_log2(r);
    if t == 0 {
        return Ok(None);
    }
    if let Some(k) = k {
        return MassProdParams::new(n, k, t).map(Some);
    }
    let mut k = ceil_log2(n.max(1)).max(1);
    while k > 1 && n <= k * t {
        k -= 1;
    }
    MassProdParams::new(n, k, t).map(Some)
}
