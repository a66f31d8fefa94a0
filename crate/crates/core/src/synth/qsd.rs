use alloc::vec::Vec;

use super::csd::cosine_sine_decompose;
use super::demux::Multiplexor1;
use super::multiplexed::{Axis, MultiplexedRotation};
use crate::circuit::Circuit;
use crate::linalg::{self, CMatrix, Mat2};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum QsdFactorKind {
    /// An `(n-1, 1)`-multiplexor with the last qubit as data.
    Leaf(Multiplexor1),
    /// A multiplexed `R_y` on an inner qubit.
    RotY(MultiplexedRotation),
}

/// One factor of the Shannon decomposition and the qubits it acts on;
/// `selects[0]` is the most significant select.
#[derive(Clone, Debug, PartialEq)]
pub struct QsdFactor {
    pub kind: QsdFactorKind,
    pub data: usize,
    pub selects: Vec<usize>,
}

impl QsdFactor {
    pub fn emit(&self, circuit: &mut Circuit, qubits: &[usize]) -> Result<()> {
        let sel: Vec<usize> = self.selects.iter().map(|&q| qubits[q]).collect();
        match &self.kind {
            QsdFactorKind::Leaf(m) => m.emit(circuit, &sel, qubits[self.data]),
            QsdFactorKind::RotY(m) => m.emit(circuit, &sel, qubits[self.data]),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self.kind, QsdFactorKind::Leaf(_))
    }
}

fn qubit_count(u: &CMatrix) -> Result<usize> {
    let dim = u.nrows();
    if dim != u.ncols() || !dim.is_power_of_two() || dim < 2 {
        return Err(Error::DimensionMismatch {
            expected: dim.next_power_of_two().max(2),
            got: u.ncols(),
        });
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Factors in time order: `2^{n-1}` leaves and `2^{n-1} - 1` multiplexed
/// `R_y`, all with `n - 1` selects.
pub fn qsd_factorize(u: &CMatrix) -> Result<Vec<QsdFactor>> {
    let n = qubit_count(u)?;
    let dev = linalg::unitarity_deviation(u);
    if !(dev <= 1e-10) {
        return Err(Error::NotUnitary(dev));
    }
    let mut out = Vec::with_capacity((1 << n) - 1);
    split(n, 0, alloc::vec![u.clone()], &mut out)?;
    Ok(out)
}

/// `blocks[x]` acts on qubits `j..n` when qubits `0..j` read `x`.
fn split(n: usize, j: usize, blocks: Vec<CMatrix>, out: &mut Vec<QsdFactor>) -> Result<()> {
    if j + 1 == n {
        let blocks = blocks
            .iter()
            .map(|b| Mat2::from_cmatrix(&linalg::nearest_unitary(b)))
            .collect();
        out.push(QsdFactor {
            kind: QsdFactorKind::Leaf(Multiplexor1::new(j, blocks)?),
            data: j,
            selects: (0..j).collect(),
        });
        return Ok(());
    }
    let half = 1usize << (n - j - 1);
    let mut rights = Vec::with_capacity(2 * blocks.len());
    let mut lefts = Vec::with_capacity(2 * blocks.len());
    let mut angles = Vec::with_capacity(blocks.len() * half);
    for b in &blocks {
        let d = cosine_sine_decompose(b)?;
        rights.push(d.r1);
        rights.push(d.r2);
        lefts.push(d.l1);
        lefts.push(d.l2);
        angles.extend_from_slice(&d.theta);
    }
    split(n, j + 1, rights, out)?;
    out.push(QsdFactor {
        kind: QsdFactorKind::RotY(MultiplexedRotation::new(Axis::Y, n - 1, angles)?),
        data: j,
        selects: (0..n).filter(|&q| q != j).collect(),
    });
    split(n, j + 1, lefts, out)
}

/// Single-copy circuit on register `q`.
pub fn qsd_synthesize(u: &CMatrix) -> Result<Circuit> {
    let factors = qsd_factorize(u)?;
    let n = qubit_count(u)?;
    let mut c = super::circuit_with(&[("q", n)]);
    let qubits: Vec<usize> = (0..n).collect();
    for f in &factors {
        f.emit(&mut c, &qubits)?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Gate;
    use crate::random::{haar_unitary, InstanceRng, Kind};
    use crate::sim::{circuit_unitary, equal_up_to_global_phase};

    #[test]
    fn one_qubit_is_one_u2() {
        let mut rng = InstanceRng::new(5, Kind::Unitary);
        let u = haar_unitary(2, &mut rng);
        let c = qsd_synthesize(&u).unwrap();
        assert_eq!(c.gates().len(), 1);
        assert!(matches!(c.gates()[0], Gate::U2(0, _)));
        assert!(linalg::max_abs_diff(&circuit_unitary(&c).unwrap(), &u) < 1e-12);
    }

    #[test]
    fn factor_counts() {
        let mut rng = InstanceRng::new(6, Kind::Unitary);
        for n in 1..=4 {
            let f = qsd_factorize(&haar_unitary(1 << n, &mut rng)).unwrap();
            assert_eq!(f.iter().filter(|f| f.is_leaf()).count(), 1 << (n - 1));
            assert_eq!(
                f.iter().filter(|f| !f.is_leaf()).count(),
                (1 << (n - 1)) - 1
            );
            assert!(f.iter().all(|f| f.selects.len() == n - 1));
        }
    }

    #[test]
    fn reconstruction() {
        let mut rng = InstanceRng::new(7, Kind::Unitary);
        for (n, tol) in [(2, 1e-9), (3, 1e-8), (4, 1e-8)] {
            for _ in 0..5 {
                let u = haar_unitary(1 << n, &mut rng);
                let c = qsd_synthesize(&u).unwrap();
                let (ok, dev) =
                    equal_up_to_global_phase(&circuit_unitary(&c).unwrap(), &u, tol).unwrap();
                assert!(ok, "n={n} dev={dev}");
            }
        }
    }

    #[test]
    fn single_copy_counts() {
        let mut rng = InstanceRng::new(8, Kind::Unitary);
        // leaves cost 4·2^{n-1} - 2, rotations 2^{n-1}
        for n in 2..=4u32 {
            let c = qsd_synthesize(&haar_unitary(1 << n, &mut rng)).unwrap();
            let h = 1u64 << (n - 1);
            assert_eq!(c.cnot_count(), h * (4 * h - 2) + (h - 1) * h);
        }
    }
}
