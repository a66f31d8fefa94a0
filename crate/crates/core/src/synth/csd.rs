use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linalg::{self, CMatrix, ZERO};
use crate::{Error, Result};

const UNITARY_INPUT_TOL: f64 = 1e-10;

/// `U = (L1 ⊕ L2)·[[C, S], [-S, C]]·(R1 ⊕ R2)` with `C = diag(cos(θ/2))`,
/// `S = diag(sin(θ/2))`. The middle factor is a multiplexed `R_y` whose data
/// qubit is the most significant one.
#[derive(Clone, Debug, PartialEq)]
pub struct CsdResult {
    pub l1: CMatrix,
    pub l2: CMatrix,
    pub r1: CMatrix,
    pub r2: CMatrix,
    pub theta: Vec<f64>,
}

impl CsdResult {
    pub fn middle(&self) -> CMatrix {
        let m = self.theta.len();
        let mut cs = CMatrix::zeros(2 * m, 2 * m);
        for (i, &t) in self.theta.iter().enumerate() {
            let (c, s) = (libm::cos(t / 2.0), libm::sin(t / 2.0));
            cs[(i, i)] = Complex64::new(c, 0.0);
            cs[(m + i, m + i)] = Complex64::new(c, 0.0);
            cs[(i, m + i)] = Complex64::new(s, 0.0);
            cs[(m + i, i)] = Complex64::new(-s, 0.0);
        }
        cs
    }

    pub fn reassemble(&self) -> CMatrix {
        linalg::direct_sum(&self.l1, &self.l2)
            * self.middle()
            * linalg::direct_sum(&self.r1, &self.r2)
    }
}

/// SVD of the upper-left block gives `L1`, `C`, `R1` (cosines ascending), a QR
/// of `U10·R1†` gives `L2` and `S`, and each row of `R2` comes from whichever
/// of `U01`, `U11` has the larger coefficient. `R2` is re-orthonormalized at
/// the end.
pub fn cosine_sine_decompose(u: &CMatrix) -> Result<CsdResult> {
    let (rows, cols) = u.shape();
    if rows != cols || rows % 2 != 0 || rows == 0 {
        return Err(Error::DimensionMismatch {
            expected: rows + rows % 2,
            got: cols,
        });
    }
    let dev = linalg::unitarity_deviation(u);
    if !(dev <= UNITARY_INPUT_TOL) {
        return Err(Error::NotUnitary(dev));
    }
    let m = rows / 2;
    let u00 = u.view((0, 0), (m, m)).into_owned();
    let u01 = u.view((0, m), (m, m)).into_owned();
    let u10 = u.view((m, 0), (m, m)).into_owned();
    let u11 = u.view((m, m), (m, m)).into_owned();

    let svd = linalg::svd(&u00);
    let (su, svt) = (svd.u, svd.v_t);
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    let mut l1 = CMatrix::zeros(m, m);
    let mut r1 = CMatrix::zeros(m, m);
    let mut c = Vec::with_capacity(m);
    for (dst, &src) in order.iter().enumerate() {
        l1.set_column(dst, &su.column(src));
        r1.set_row(dst, &svt.row(src));
        c.push(svd.singular_values[src].min(1.0));
    }

    // U10·R1† = -L2·S has orthogonal columns of norm s_i, largest first
    let qr = (&u10 * r1.adjoint()).qr();
    let (q, r) = (qr.q(), qr.r());
    let mut l2 = CMatrix::zeros(m, m);
    let mut s = Vec::with_capacity(m);
    for i in 0..m {
        let d = r[(i, i)];
        let mag = d.norm();
        let ph = if mag > 0.0 {
            d / mag
        } else {
            Complex64::new(1.0, 0.0)
        };
        l2.set_column(i, &(q.column(i) * (-ph)));
        s.push(mag);
    }

    let from_top = l1.adjoint() * &u01;
    let from_bottom = l2.adjoint() * &u11;
    let mut r2 = CMatrix::from_element(m, m, ZERO);
    for i in 0..m {
        if s[i] > c[i] {
            r2.set_row(i, &(from_top.row(i) / Complex64::new(s[i], 0.0)));
        } else {
            r2.set_row(i, &(from_bottom.row(i) / Complex64::new(c[i], 0.0)));
        }
    }
    let r2 = linalg::nearest_unitary(&r2);
    let theta = c
        .iter()
        .zip(&s)
        .map(|(&c, &s)| 2.0 * libm::atan2(s, c))
        .collect();
    Ok(CsdResult {
        l1,
        l2,
        r1,
        r2,
        theta,
    })
}
