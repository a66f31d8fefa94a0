use alloc::vec::Vec;

use crate::synth::PhaseFunction;
use crate::{Error, Result};

/// Telescoping factors of `f`: with `f_i` the restriction of `f` to prefix
/// `i`, `f_i = ∏_{ℓ≤i} g_ℓ = ∏_{ℓ>i} g_ℓ^*`.
#[derive(Clone, Debug, PartialEq)]
pub struct GSequence {
    pub k: usize,
    pub g: Vec<PhaseFunction>,
}

/// `g_0 = f_0`, `g_ℓ = f_{ℓ-1}^*·f_ℓ`, `g_{2^k} = f_{2^k-1}^*`, as angles.
pub fn derive_g_sequence(f: &PhaseFunction, k: usize) -> Result<GSequence> {
    if k == 0 || k >= f.n() {
        return Err(Error::Domain(alloc::format!(
            "need 1 ≤ k < n; got k={k}, n={}",
            f.n()
        )));
    }
    let parts = 1usize << k;
    let m = f.n() - k;
    let restrict = |i: usize| f.restrict(k, i);
    let mut g = Vec::with_capacity(parts + 1);
    g.push(restrict(0));
    for l in 1..parts {
        let (prev, cur) = (restrict(l - 1), restrict(l));
        let angles = cur
            .angles()
            .iter()
            .zip(prev.angles())
            .map(|(c, p)| c - p)
            .collect();
        g.push(PhaseFunction::new(m, angles)?);
    }
    let last = restrict(parts - 1);
    g.push(PhaseFunction::new(
        m,
        last.angles().iter().map(|a| -a).collect(),
    )?);
    Ok(GSequence { k, g })
}
