use alloc::vec::Vec;

use num_complex::Complex64;

use super::multiplexed::{Axis, MultiplexedRotation};
use crate::circuit::Circuit;
use crate::{Error, Result};

const NORM_TOL: f64 = 1e-10;

/// Rotation angles for one level: qubit `ℓ` is rotated by `R_y(ry[p])` and
/// then `R_z(rz[p])` when qubits `0..ℓ` read `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelAngles {
    pub ry: Vec<f64>,
    pub rz: Vec<f64>,
}

impl LevelAngles {
    pub fn ry_rotation(&self, level: usize) -> MultiplexedRotation {
        MultiplexedRotation::new(Axis::Y, level, self.ry.clone()).expect("2^level angles")
    }

    pub fn rz_rotation(&self, level: usize) -> MultiplexedRotation {
        MultiplexedRotation::new(Axis::Z, level, self.rz.clone()).expect("2^level angles")
    }
}

/// `levels[ℓ]` has `2^ℓ` entries per array. Running the levels in order
/// `0..n` from `|0^n⟩` and adding `global_phase` prepares the state.
#[derive(Clone, Debug, PartialEq)]
pub struct StatePrepAngles {
    pub levels: Vec<LevelAngles>,
    pub global_phase: f64,
}

/// Builds the binary tree of partial amplitudes bottom-up. A node with
/// children `a0 = r0·e^{iφ0}`, `a1 = r1·e^{iφ1}` gets `β = -2·atan2(r1, r0)`
/// (so `R_y(β)|0⟩ = (r0, r1)/r`), `ζ = φ1 - φ0`, and passes
/// `r·e^{i(φ0+φ1)/2}` to its parent. Zero nodes get zero angles.
pub fn state_prep_angles(psi: &[Complex64]) -> Result<StatePrepAngles> {
    if !psi.len().is_power_of_two() || psi.len() < 2 {
        return Err(Error::DimensionMismatch {
            expected: psi.len().next_power_of_two().max(2),
            got: psi.len(),
        });
    }
    let norm = libm::sqrt(psi.iter().map(|a| a.norm_sqr()).sum::<f64>());
    if norm == 0.0 {
        return Err(Error::ZeroNorm);
    }
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized(norm));
    }
    let n = psi.len().trailing_zeros() as usize;
    let mut levels = Vec::with_capacity(n);
    let mut amps = psi.to_vec();
    for _ in 0..n {
        let half = amps.len() / 2;
        let mut ry = Vec::with_capacity(half);
        let mut rz = Vec::with_capacity(half);
        let mut parent = Vec::with_capacity(half);
        for p in 0..half {
            let (a0, a1) = (amps[2 * p], amps[2 * p + 1]);
            let (r0, r1) = (a0.norm(), a1.norm());
            let r = libm::hypot(r0, r1);
            if r == 0.0 {
                ry.push(0.0);
                rz.push(0.0);
                parent.push(Complex64::new(0.0, 0.0));
                continue;
            }
            let (p0, p1) = (
                if r0 > 0.0 { a0.arg() } else { 0.0 },
                if r1 > 0.0 { a1.arg() } else { 0.0 },
            );
            ry.push(-2.0 * libm::atan2(r1, r0));
            rz.push(p1 - p0);
            parent.push(Complex64::from_polar(r, (p0 + p1) / 2.0));
        }
        levels.push(LevelAngles { ry, rz });
        amps = parent;
    }
    levels.reverse();
    Ok(StatePrepAngles {
        levels,
        global_phase: amps[0].arg(),
    })
}

/// Single-copy preparation on register `q`: one `R_y`/`R_z` multiplexed pair
/// per level, `Σ_{ℓ=1}^{n-1} 2·2^ℓ` CNOTs.
pub fn synth_state_prep_single(psi: &[Complex64]) -> Result<Circuit> {
    let angles = state_prep_angles(psi)?;
    let n = angles.levels.len();
    let mut c = super::circuit_with(&[("q", n)]);
    for (l, level) in angles.levels.iter().enumerate() {
        let sel: Vec<usize> = (0..l).collect();
        level.ry_rotation(l).emit(&mut c, &sel, l)?;
        level.rz_rotation(l).emit(&mut c, &sel, l)?;
    }
    c.add_global_phase(angles.global_phase);
    Ok(c)
}

/// Analytic CNOT total of [`synth_state_prep_single`].
pub fn single_state_prep_cnots(n: usize) -> u64 {
    (1..n).map(|l| 2u64 << l).sum()
}
