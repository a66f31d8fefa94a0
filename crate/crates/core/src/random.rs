//! Seeded instance generation.
//!
//! Every instance kind draws from its own ChaCha20 stream of the same 64-bit
//! seed, so instances are reproducible across platforms and independent of
//! each other. Haar-random unitaries are the `Q` factor of a QR decomposition
//! of a complex Gaussian matrix, with `Q`'s columns rescaled by the phases of
//! `R`'s diagonal.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::linalg::{CMatrix, Mat2};
use crate::synth::{Axis, MultiplexedRotation, Multiplexor1, PhaseFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    PhaseFunction,
    State,
    Unitary,
    Multiplexor,
    Rotation,
}

impl Kind {
    fn stream(&self) -> u64 {
        match self {
            Kind::PhaseFunction => 1,
            Kind::State => 2,
            Kind::Unitary => 3,
            Kind::Multiplexor => 4,
            Kind::Rotation => 5,
        }
    }
}

#[derive(Clone, Debug)]
pub struct InstanceRng(ChaCha20Rng);

impl InstanceRng {
    pub fn new(seed: u64, kind: Kind) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(kind.stream());
        InstanceRng(rng)
    }

    pub fn angle(&mut self) -> f64 {
        self.0
            .random_range(-core::f64::consts::PI..core::f64::consts::PI)
    }

    /// Standard complex Gaussian, `E|z|² = 1`.
    pub fn complex_gaussian(&mut self) -> Complex64 {
        let re: f64 = self.0.sample(StandardNormal);
        let im: f64 = self.0.sample(StandardNormal);
        Complex64::new(re, im) * core::f64::consts::FRAC_1_SQRT_2
    }

    pub fn inner(&mut self) -> &mut ChaCha20Rng {
        &mut self.0
    }
}

/// Angles uniform in `[-π, π)`.
pub fn random_phase_function(n: usize, rng: &mut InstanceRng) -> PhaseFunction {
    PhaseFunction::new(n, (0..1 << n).map(|_| rng.angle()).collect()).expect("2^n angles")
}

/// A normalized complex Gaussian vector (uniform on the unit sphere).
pub fn random_state(n: usize, rng: &mut InstanceRng) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..1 << n).map(|_| rng.complex_gaussian()).collect();
    let norm = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>());
    v.into_iter().map(|z| z / norm).collect()
}

pub fn haar_unitary(dim: usize, rng: &mut InstanceRng) -> CMatrix {
    let g = CMatrix::from_fn(dim, dim, |_, _| rng.complex_gaussian());
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..dim {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let col = q.column(j) * ph;
        q.set_column(j, &col);
    }
    q
}

pub fn haar_unitary_2(rng: &mut InstanceRng) -> Mat2 {
    Mat2::from_cmatrix(&haar_unitary(2, rng))
}

pub fn random_multiplexor(s: usize, rng: &mut InstanceRng) -> Multiplexor1 {
    Multiplexor1::new(s, (0..1 << s).map(|_| haar_unitary_2(rng)).collect())
        .expect("Haar blocks are unitary")
}

pub fn random_rotation(axis: Axis, s: usize, rng: &mut InstanceRng) -> MultiplexedRotation {
    MultiplexedRotation::new(axis, s, (0..1 << s).map(|_| rng.angle()).collect())
        .expect("2^s angles")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;

    #[test]
    fn deterministic_per_seed_and_kind() {
        let a = random_phase_function(3, &mut InstanceRng::new(1, Kind::PhaseFunction));
        let b = random_phase_function(3, &mut InstanceRng::new(1, Kind::PhaseFunction));
        assert_eq!(a, b);
        let c = random_phase_function(3, &mut InstanceRng::new(1, Kind::State));
        assert_ne!(a, c);
        assert!(a
            .angles()
            .iter()
            .all(|x| (-core::f64::consts::PI..core::f64::consts::PI).contains(x)));
    }

    #[test]
    fn states_are_normalized() {
        let psi = random_state(4, &mut InstanceRng::new(9, Kind::State));
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unitaries_are_unitary() {
        let mut rng = InstanceRng::new(5, Kind::Unitary);
        for dim in [2, 4, 16] {
            assert!(linalg::unitarity_deviation(&haar_unitary(dim, &mut rng)) < 1e-12);
        }
    }

    #[test]
    fn haar_phases_are_uniform() {
        // mean of U[0][0] over many draws vanishes for a Haar measure; without the
        // R-diagonal fix it is biased toward the positive real axis
        let mut rng = InstanceRng::new(12, Kind::Unitary);
        let trials = 4000;
        let mean: Complex64 = (0..trials)
            .map(|_| haar_unitary(2, &mut rng)[(0, 0)])
            .sum::<Complex64>()
            / trials as f64;
        assert!(mean.norm() < 0.05, "{mean}");
    }
}
