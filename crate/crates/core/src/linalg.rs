//! Small dense linear-algebra helpers shared by the IR, the simulators and the
//! synthesis routines.

use core::ops::Mul;

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// `e^{iθ}`.
#[inline]
pub fn cis(theta: f64) -> Complex64 {
    Complex64::new(libm::cos(theta), libm::sin(theta))
}

/// A 2×2 complex matrix in row-major order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[ONE, ZERO], [ZERO, ONE]]);
    pub const PAULI_X: Mat2 = Mat2([[ZERO, ONE], [ONE, ZERO]]);

    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn diag(a: Complex64, d: Complex64) -> Self {
        Mat2([[a, ZERO], [ZERO, d]])
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[row][col]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let m = &self.0;
        Mat2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    /// Largest entrywise deviation of `M†M` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let p = self.adjoint() * *self;
        max_entry_diff2(&p, &Mat2::IDENTITY)
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        max_entry_diff2(self, other)
    }

    pub fn to_cmatrix(&self) -> CMatrix {
        CMatrix::from_fn(2, 2, |r, c| self.0[r][c])
    }

    /// Reads a 2×2 matrix; panics if `m` has another shape.
    pub fn from_cmatrix(m: &CMatrix) -> Self {
        assert_eq!(m.shape(), (2, 2), "expected a 2x2 matrix");
        Mat2([[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]])
    }
}

fn max_entry_diff2(a: &Mat2, b: &Mat2) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..2 {
        for c in 0..2 {
            worst = worst.max((a.0[r][c] - b.0[r][c]).norm());
        }
    }
    worst
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Mat2(out)
    }
}

/// `R_x(θ) = [[cos θ/2, i sin θ/2], [i sin θ/2, cos θ/2]]`.
pub fn rx(theta: f64) -> Mat2 {
    let (s, c) = (libm::sin(theta / 2.0), libm::cos(theta / 2.0));
    let c = Complex64::new(c, 0.0);
    let is = Complex64::new(0.0, s);
    Mat2([[c, is], [is, c]])
}

/// `R_y(θ) = [[cos θ/2, sin θ/2], [-sin θ/2, cos θ/2]]`.
pub fn ry(theta: f64) -> Mat2 {
    let (s, c) = (libm::sin(theta / 2.0), libm::cos(theta / 2.0));
    Mat2([
        [Complex64::new(c, 0.0), Complex64::new(s, 0.0)],
        [Complex64::new(-s, 0.0), Complex64::new(c, 0.0)],
    ])
}

/// `R_z(θ) = diag(e^{-iθ/2}, e^{iθ/2})`.
pub fn rz(theta: f64) -> Mat2 {
    Mat2::diag(cis(-theta / 2.0), cis(theta / 2.0))
}

pub fn hadamard() -> Mat2 {
    let h = Complex64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
    Mat2([[h, h], [h, -h]])
}

/// Largest entrywise deviation of `U†U` from the identity. Non-square input
/// yields infinity.
pub fn unitarity_deviation(u: &CMatrix) -> f64 {
    if u.nrows() != u.ncols() {
        return f64::INFINITY;
    }
    let p = u.adjoint() * u;
    let mut worst = 0.0f64;
    for r in 0..p.nrows() {
        for c in 0..p.ncols() {
            let target = if r == c { ONE } else { ZERO };
            worst = worst.max((p[(r, c)] - target).norm());
        }
    }
    worst
}

/// The unitary polar factor `W·Z` of `M = W·Σ·Z`, i.e. the closest unitary in
/// Frobenius norm. Used to clean up accumulated rounding.
pub fn nearest_unitary(m: &CMatrix) -> CMatrix {
    let svd = svd(m);
    svd.u * svd.v_t
}

/// `M = U·diag(σ)·V†` for a square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Svd {
    pub u: CMatrix,
    pub singular_values: alloc::vec::Vec<f64>,
    pub v_t: CMatrix,
}

const JACOBI_SWEEPS: usize = 60;

/// One-sided (Hestenes) Jacobi SVD. Slower than bidiagonal QR but keeps full
/// relative accuracy when singular values repeat, which the QR-based routine
/// in nalgebra does not for complex input. Columns of `U` belonging to zero
/// singular values are completed by Gram-Schmidt.
pub fn svd(m: &CMatrix) -> Svd {
    assert!(m.is_square(), "svd expects a square matrix");
    let n = m.ncols();
    let mut w = m.clone();
    let mut v = CMatrix::identity(n, n);
    for _ in 0..JACOBI_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = w.column(p).norm_squared();
                let beta = w.column(q).norm_squared();
                let gamma = w.column(p).dotc(&w.column(q));
                let g = gamma.norm();
                if g <= f64::EPSILON * libm::sqrt(alpha * beta) || g < f64::MIN_POSITIVE {
                    continue;
                }
                rotated = true;
                // rephase column q so that the overlap is real and positive
                let ph = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + libm::sqrt(1.0 + zeta * zeta));
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                for mat in [&mut w, &mut v] {
                    for r in 0..n {
                        let a = mat[(r, p)];
                        let b = mat[(r, q)] * ph;
                        mat[(r, p)] = a * c - b * s;
                        mat[(r, q)] = a * s + b * c;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let sigma: alloc::vec::Vec<f64> = (0..n).map(|j| w.column(j).norm()).collect();
    let scale = sigma.iter().cloned().fold(0.0, f64::max);
    let mut u = CMatrix::zeros(n, n);
    let mut missing = alloc::vec::Vec::new();
    for j in 0..n {
        if sigma[j] > scale * f64::EPSILON * n as f64 && sigma[j] > 0.0 {
            u.set_column(j, &(w.column(j) / Complex64::new(sigma[j], 0.0)));
        } else {
            missing.push(j);
        }
    }
    for j in missing {
        // the basis vector with the largest remainder, orthogonalized twice
        let remainder = |e: usize, u: &CMatrix| {
            let mut cand = nalgebra::DVector::<Complex64>::zeros(n);
            cand[e] = ONE;
            for _ in 0..2 {
                for k in 0..n {
                    if k != j {
                        let proj = u.column(k).dotc(&cand);
                        cand -= u.column(k) * proj;
                    }
                }
            }
            cand
        };
        let best = (0..n)
            .map(|e| remainder(e, &u))
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .expect("n > 0");
        let norm = best.norm();
        u.set_column(j, &(best / Complex64::new(norm, 0.0)));
    }
    Svd {
        u,
        singular_values: sigma,
        v_t: v.adjoint(),
    }
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Block-diagonal matrix `a ⊕ b`.
pub fn direct_sum(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    let mut out = CMatrix::zeros(ra + rb, ca + cb);
    out.view_mut((0, 0), (ra, ca)).copy_from(a);
    out.view_mut((ra, ca), (rb, cb)).copy_from(b);
    out
}

/// Block-diagonal matrix with the given blocks along the diagonal.
pub fn block_diagonal(blocks: &[CMatrix]) -> CMatrix {
    let dim: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMatrix::zeros(dim, dim);
    let mut at = 0;
    for b in blocks {
        let d = b.nrows();
        out.view_mut((at, at), (d, d)).copy_from(b);
        at += d;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn rotation_entries_follow_sign_conventions() {
        let t = 0.7;
        let (s, c) = ((t / 2.0) as f64).sin_cos();
        let y = ry(t);
        assert!((y.get(0, 1) - Complex64::new(s, 0.0)).norm() < 1e-15);
        assert!((y.get(1, 0) - Complex64::new(-s, 0.0)).norm() < 1e-15);
        let x = rx(t);
        assert!((x.get(0, 1) - Complex64::new(0.0, s)).norm() < 1e-15);
        assert!((x.get(1, 1) - Complex64::new(c, 0.0)).norm() < 1e-15);
        let z = rz(t);
        assert!((z.get(0, 0) - cis(-t / 2.0)).norm() < 1e-15);
        assert!((z.get(1, 1) - cis(t / 2.0)).norm() < 1e-15);
    }

    #[test]
    fn ry_pi_sends_zero_to_minus_one() {
        let y = ry(PI);
        assert!(y.get(0, 0).norm() < 1e-15);
        assert!((y.get(1, 0) + ONE).norm() < 1e-15);
    }

    #[test]
    fn block_helpers() {
        let a = rz(0.3).to_cmatrix();
        let b = rx(1.1).to_cmatrix();
        let s = direct_sum(&a, &b);
        assert_eq!(s, block_diagonal(&[a.clone(), b.clone()]));
        assert!(unitarity_deviation(&s) < 1e-14);
        assert!(unitarity_deviation(&kron(&a, &b)) < 1e-14);
    }

    #[test]
    fn jacobi_svd_reconstructs() {
        // rank-deficient with a repeated singular value
        let a = kron(&ry(0.4).to_cmatrix(), &rz(2.0).to_cmatrix());
        let p = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(alloc::vec![
            ONE,
            ONE,
            Complex64::new(0.3, 0.0),
            ZERO
        ]));
        let m = &a * p * kron(&rx(1.3).to_cmatrix(), &hadamard().to_cmatrix());
        let d = svd(&m);
        let sig = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            4,
            d.singular_values.iter().map(|&x| Complex64::new(x, 0.0)),
        ));
        assert!(max_abs_diff(&(&d.u * sig * &d.v_t), &m) < 1e-14);
        assert!(unitarity_deviation(&d.u) < 1e-14);
        assert!(unitarity_deviation(&d.v_t) < 1e-14);
        let mut s = d.singular_values.clone();
        s.sort_by(f64::total_cmp);
        assert!(s[0] < 1e-15 && (s[1] - 0.3).abs() < 1e-15 && (s[3] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn polar_factor_restores_unitarity() {
        let u = kron(&ry(0.4).to_cmatrix(), &rz(2.0).to_cmatrix());
        let noisy = u.map(|z| z * Complex64::new(1.0 + 1e-9, 0.0));
        let fixed = nearest_unitary(&noisy);
        assert!(unitarity_deviation(&fixed) < 1e-14);
        assert!(max_abs_diff(&fixed, &u) < 1e-12);
    }
}
