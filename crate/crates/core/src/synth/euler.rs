use crate::circuit::U2_UNITARITY_TOL;
use crate::linalg::{cis, ry, rz, Mat2};
use crate::{Error, Result};

/// Below this magnitude an off-diagonal (or diagonal) entry counts as zero and
/// the Euler axis is treated as degenerate.
const DEGENERATE_TOL: f64 = 1e-14;

/// `U = e^{iφ}·R_z(α)·R_y(β)·R_z(γ)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ZyzAngles {
    pub phi: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl ZyzAngles {
    pub fn matrix(&self) -> Mat2 {
        (rz(self.alpha) * ry(self.beta) * rz(self.gamma)).scale(cis(self.phi))
    }
}

/// `β ∈ [0, π]`; when `β` is 0 or π, `γ = 0` and everything goes into `α`.
pub fn zyz_decompose(u: &Mat2) -> Result<ZyzAngles> {
    let dev = u.unitarity_deviation();
    if !(dev <= U2_UNITARITY_TOL) {
        return Err(Error::NotUnitary(dev));
    }
    let phi = u.det().arg() / 2.0;
    let v = u.scale(cis(-phi));
    // R_z(α)R_y(β)R_z(γ) has first row (cos(β/2)e^{-i(α+γ)/2}, sin(β/2)e^{-i(α-γ)/2})
    let (a, b) = (v.get(0, 0), v.get(0, 1));
    let beta = 2.0 * libm::atan2(b.norm(), a.norm());
    let (alpha, gamma) = if b.norm() < DEGENERATE_TOL {
        (-2.0 * a.arg(), 0.0)
    } else if a.norm() < DEGENERATE_TOL {
        (-2.0 * b.arg(), 0.0)
    } else {
        let sum = -2.0 * a.arg();
        let diff = -2.0 * b.arg();
        ((sum + diff) / 2.0, (sum - diff) / 2.0)
    };
    Ok(ZyzAngles {
        phi,
        alpha,
        beta,
        gamma,
    })
}
