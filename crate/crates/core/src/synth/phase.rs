use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linalg::cis;
use crate::{Error, Result};

/// `f: {0,1}^n → 𝕋` as angles, `f(x) = e^{iθ_x}`. Index `x` reads the first
/// bit as its most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseFunction {
    n: usize,
    angles: Vec<f64>,
}

impl PhaseFunction {
    pub fn new(n: usize, angles: Vec<f64>) -> Result<Self> {
        if angles.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                got: angles.len(),
            });
        }
        Ok(PhaseFunction { n, angles })
    }

    pub fn zero(n: usize) -> Self {
        PhaseFunction {
            n,
            angles: alloc::vec![0.0; 1 << n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn angle(&self, x: usize) -> f64 {
        self.angles[x]
    }

    pub fn value(&self, x: usize) -> Complex64 {
        cis(self.angles[x])
    }

    /// `f_i`: the first `k` bits fixed to `i`.
    pub fn restrict(&self, k: usize, i: usize) -> PhaseFunction {
        let len = 1 << (self.n - k);
        PhaseFunction {
            n: self.n - k,
            angles: self.angles[i * len..(i + 1) * len].to_vec(),
        }
    }

    /// `f̄(x, c)`, the angle of the lift at a point.
    pub fn lifted_angle(&self, x: usize, c: bool) -> f64 {
        if c {
            -self.angles[x]
        } else {
            self.angles[x]
        }
    }
}

/// `f̄(x, c) = f(x)^{1-2c}` on `n + 1` bits, `c` the lowest-order bit.
pub fn lift_bar(f: &PhaseFunction) -> PhaseFunction {
    let angles = f.angles.iter().flat_map(|&a| [a, -a]).collect();
    PhaseFunction { n: f.n + 1, angles }
}
