use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use super::dense::{apply_dense_with_cap, StateVector};
use super::phase_path::{is_phase_classical, simulate_phase_path};
use crate::circuit::Circuit;
use crate::linalg::{CMatrix, ZERO};
use crate::{Error, Result};

/// Inputs are enumerated exhaustively up to this many logical bits.
pub const EXHAUSTIVE_LIMIT_BITS: usize = 14;
pub const DEFAULT_SAMPLES: usize = 2000;
/// Failures kept in a report; `checked` still counts every input.
const MAX_RECORDED_FAILURES: usize = 16;
const ANCILLA_LEAK_TOL: f64 = 1e-9;

/// `(passes, deviation)` where deviation is `max |A - λB|` with `λ` the unit
/// phase aligning the largest-magnitude entry of `B` with `A`.
pub fn equal_up_to_global_phase(a: &CMatrix, b: &CMatrix, tol: f64) -> Result<(bool, f64)> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            expected: b.len(),
            got: a.len(),
        });
    }
    let (idx, _) = b.iter().enumerate().fold((0, -1.0), |best, (i, z)| {
        if z.norm() > best.1 {
            (i, z.norm())
        } else {
            best
        }
    });
    let lambda = phase_of(a.as_slice()[idx] * b.as_slice()[idx].conj());
    let dev = a
        .iter()
        .zip(b.iter())
        .map(|(x, y)| (x - lambda * y).norm())
        .fold(0.0, f64::max);
    Ok((dev <= tol, dev))
}

fn phase_of(z: Complex64) -> Complex64 {
    let r = z.norm();
    if r == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        z / r
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    Exhaustive,
    Random { samples: usize, seed: u64 },
}

impl Sampling {
    /// Exhaustive for at most [`EXHAUSTIVE_LIMIT_BITS`] logical bits,
    /// otherwise [`DEFAULT_SAMPLES`] seeded draws.
    pub fn auto(bits: usize, seed: u64) -> Sampling {
        if bits <= EXHAUSTIVE_LIMIT_BITS {
            Sampling::Exhaustive
        } else {
            Sampling::Random {
                samples: DEFAULT_SAMPLES,
                seed,
            }
        }
    }
}

/// Basis inputs over `bits` logical bits, in the order chosen by a [`Sampling`].
#[derive(Clone, Debug)]
pub struct LogicalInputs {
    bits: usize,
    next: usize,
    total: usize,
    rng: Option<ChaCha20Rng>,
}

impl LogicalInputs {
    pub fn new(bits: usize, sampling: Sampling) -> Self {
        match sampling {
            Sampling::Exhaustive => {
                assert!(bits < usize::BITS as usize, "too many bits to enumerate");
                LogicalInputs {
                    bits,
                    next: 0,
                    total: 1 << bits,
                    rng: None,
                }
            }
            Sampling::Random { samples, seed } => LogicalInputs {
                bits,
                next: 0,
                total: samples,
                rng: Some(ChaCha20Rng::seed_from_u64(seed)),
            },
        }
    }
}

impl Iterator for LogicalInputs {
    type Item = Vec<bool>;

    fn next(&mut self) -> Option<Vec<bool>> {
        if self.next == self.total {
            return None;
        }
        let i = self.next;
        self.next += 1;
        Some(match &mut self.rng {
            None => super::index_to_bits(i, self.bits),
            Some(rng) => (0..self.bits).map(|_| rng.random::<bool>()).collect(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureReason {
    PhaseMismatch,
    /// A logical bit changed.
    BasisChanged,
    /// An ancilla did not return to `|0⟩`.
    AncillaDirty,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    /// Logical input bits.
    pub input: Vec<bool>,
    pub expected_phase: f64,
    pub got_phase: f64,
    pub reason: FailureReason,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerificationReport {
    pub checked: usize,
    pub failures: Vec<Failure>,
    pub failure_count: usize,
    pub max_phase_error: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn fail(&mut self, f: Failure) {
        self.failure_count += 1;
        if self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(f);
        }
    }

    /// Combines reports of disjoint input sets.
    pub fn merge(mut self, other: VerificationReport) -> VerificationReport {
        self.checked += other.checked;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(f);
            }
        }
        self.max_phase_error = self.max_phase_error.max(other.max_phase_error);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PhaseReference {
    /// The phase must match exactly.
    Exact,
    /// One unit phase, fixed by the first input, is allowed between the
    /// circuit and the expectation.
    UpToGlobalPhase,
}

fn full_input(nq: usize, logical: &[usize], bits: &[bool]) -> Vec<bool> {
    let mut full = vec![false; nq];
    for (&q, &b) in logical.iter().zip(bits) {
        full[q] = b;
    }
    full
}

fn check_logical(nq: usize, logical: &[usize]) -> Result<()> {
    let mut seen = vec![false; nq];
    for &q in logical {
        if q >= nq {
            return Err(Error::QubitOutOfRange {
                index: q,
                width: nq,
            });
        }
        if core::mem::replace(&mut seen[q], true) {
            return Err(Error::RepeatedQubit("logical"));
        }
    }
    Ok(())
}

/// Checks a phase-classical circuit against `expected`, which gives the phase
/// angle for each logical input. Logical bits must come back unchanged, every
/// other qubit starts and must end in `|0⟩`.
pub fn verify_phase_oracle(
    circuit: &Circuit,
    logical: &[usize],
    expected: impl Fn(&[bool]) -> f64,
    reference: PhaseReference,
    sampling: Sampling,
    tol: f64,
) -> Result<VerificationReport> {
    let nq = circuit.num_qubits();
    check_logical(nq, logical)?;
    let mut report = VerificationReport::default();
    let mut lambda: Option<Complex64> = match reference {
        PhaseReference::Exact => Some(Complex64::new(1.0, 0.0)),
        PhaseReference::UpToGlobalPhase => None,
    };
    for bits in LogicalInputs::new(logical.len(), sampling) {
        let input = full_input(nq, logical, &bits);
        let path = simulate_phase_path(circuit, &input)?;
        report.checked += 1;
        let want = expected(&bits);
        let want_z = crate::linalg::cis(want);
        let got_phase = path.phase.arg();
        let reason = if logical.iter().any(|&q| path.bits[q] != input[q]) {
            Some(FailureReason::BasisChanged)
        } else if path.bits.iter().zip(&input).any(|(a, b)| a != b) {
            Some(FailureReason::AncillaDirty)
        } else {
            let l = *lambda.get_or_insert_with(|| phase_of(path.phase * want_z.conj()));
            let err = (path.phase - l * want_z).norm();
            report.max_phase_error = report.max_phase_error.max(err);
            (err > tol).then_some(FailureReason::PhaseMismatch)
        };
        if let Some(reason) = reason {
            report.fail(Failure {
                input: bits,
                expected_phase: want,
                got_phase,
                reason,
            });
        }
    }
    Ok(report)
}

/// Runs `trials` random logical basis inputs (all of them if there are fewer)
/// and checks that every ancilla ends in `|0⟩`. Uses the phase-path engine when
/// the circuit allows it, the dense engine otherwise.
pub fn verify_ancilla_restoration(
    circuit: &Circuit,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let logical = circuit.logical_qubits();
    let ancillas = circuit.ancilla_qubits();
    let nq = circuit.num_qubits();
    let sampling = if logical.len() < usize::BITS as usize - 1 && trials >= 1 << logical.len() {
        Sampling::Exhaustive
    } else {
        Sampling::Random {
            samples: trials,
            seed,
        }
    };
    let mut report = VerificationReport::default();
    if ancillas.is_empty() {
        report.checked = LogicalInputs::new(logical.len(), sampling).count();
        return Ok(report);
    }
    let classical = is_phase_classical(circuit);
    for bits in LogicalInputs::new(logical.len(), sampling) {
        let input = full_input(nq, &logical, &bits);
        report.checked += 1;
        let dirty = if classical {
            let path = simulate_phase_path(circuit, &input)?;
            ancillas.iter().any(|&q| path.bits[q])
        } else {
            let out = apply_dense_with_cap(
                circuit,
                &StateVector::basis(nq, super::bits_to_index(&input)),
                nq,
            )?;
            let mask: usize = ancillas.iter().map(|&q| 1usize << (nq - 1 - q)).sum();
            let leak: f64 = out
                .amplitudes()
                .iter()
                .enumerate()
                .filter(|(i, _)| i & mask != 0)
                .map(|(_, a)| a.norm_sqr())
                .sum();
            leak > ANCILLA_LEAK_TOL
        };
        if dirty {
            report.fail(Failure {
                input: bits,
                expected_phase: 0.0,
                got_phase: 0.0,
                reason: FailureReason::AncillaDirty,
            });
        }
    }
    Ok(report)
}

fn embed(nq: usize, logical: &[usize], logical_amps: &[Complex64]) -> StateVector {
    let mut amps = vec![ZERO; 1 << nq];
    for (j, a) in logical_amps.iter().enumerate() {
        amps[embed_index(nq, logical, j)] = *a;
    }
    StateVector::from_amplitudes(amps).expect("power of two")
}

fn embed_index(nq: usize, logical: &[usize], j: usize) -> usize {
    let l = logical.len();
    logical
        .iter()
        .enumerate()
        .filter(|(pos, _)| (j >> (l - 1 - pos)) & 1 == 1)
        .map(|(_, &q)| 1usize << (nq - 1 - q))
        .sum()
}

fn project(nq: usize, logical: &[usize], state: &StateVector) -> Vec<Complex64> {
    (0..1usize << logical.len())
        .map(|j| state.amplitudes()[embed_index(nq, logical, j)])
        .collect()
}

/// The circuit's operator on the logical qubits with every other qubit fixed
/// to `|0⟩` at entry and projected onto `|0⟩` at exit. Phase-classical
/// circuits take one phase-path run per column and ignore `cap`; anything
/// else takes one dense run per column.
pub fn restricted_operator(circuit: &Circuit, logical: &[usize], cap: usize) -> Result<CMatrix> {
    let nq = circuit.num_qubits();
    check_logical(nq, logical)?;
    let dim = 1usize << logical.len();
    let mut u = CMatrix::zeros(dim, dim);
    if is_phase_classical(circuit) {
        // every column is a single basis state; no dense simulation needed
        let l = logical.len();
        for j in 0..dim {
            let input = super::index_to_bits(embed_index(nq, logical, j), nq);
            let path = simulate_phase_path(circuit, &input)?;
            let out = super::bits_to_index(&path.bits);
            let i = logical
                .iter()
                .enumerate()
                .filter(|(_, &q)| path.bits[q])
                .map(|(pos, _)| 1usize << (l - 1 - pos))
                .sum();
            if embed_index(nq, logical, i) == out {
                u[(i, j)] = path.phase;
            }
        }
        return Ok(u);
    }
    let mut col = vec![ZERO; dim];
    for j in 0..dim {
        col.iter_mut().for_each(|z| *z = ZERO);
        col[j] = Complex64::new(1.0, 0.0);
        let out = apply_dense_with_cap(circuit, &embed(nq, logical, &col), cap)?;
        for (i, z) in project(nq, logical, &out).into_iter().enumerate() {
            u[(i, j)] = z;
        }
    }
    Ok(u)
}

/// Amplitudes on the logical qubits after running the circuit from `|0…0⟩`,
/// projected onto ancillas in `|0⟩`.
pub fn prepared_logical_state(
    circuit: &Circuit,
    logical: &[usize],
    cap: usize,
) -> Result<Vec<Complex64>> {
    let nq = circuit.num_qubits();
    check_logical(nq, logical)?;
    let out = apply_dense_with_cap(circuit, &StateVector::zero(nq), cap)?;
    Ok(project(nq, logical, &out))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorCheck {
    /// Build the whole restricted operator column by column.
    Exhaustive,
    /// Compare on random logical states; the global phase is fixed by the first
    /// probe.
    Probes { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct OperatorReport {
    pub passed: bool,
    pub max_deviation: f64,
    /// Columns or probe states simulated.
    pub checked: usize,
}

/// Compares the circuit, restricted to ancillas in `|0⟩`, with `target` up to
/// one global phase. Probe comparisons use full output states, so amplitude
/// leaking into nonzero ancilla values counts as deviation.
pub fn verify_operator(
    circuit: &Circuit,
    logical: &[usize],
    target: &CMatrix,
    check: OperatorCheck,
    tol: f64,
    cap: usize,
) -> Result<OperatorReport> {
    let nq = circuit.num_qubits();
    check_logical(nq, logical)?;
    let dim = 1usize << logical.len();
    if target.nrows() != dim || target.ncols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: target.nrows(),
        });
    }
    match check {
        OperatorCheck::Exhaustive => {
            let u = restricted_operator(circuit, logical, cap)?;
            let (passed, max_deviation) = equal_up_to_global_phase(&u, target, tol)?;
            Ok(OperatorReport {
                passed,
                max_deviation,
                checked: dim,
            })
        }
        OperatorCheck::Probes { count, seed } => {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let mut lambda: Option<Complex64> = None;
            let mut max_deviation: f64 = 0.0;
            for _ in 0..count {
                let psi = random_unit_vector(dim, &mut rng);
                let out = apply_dense_with_cap(circuit, &embed(nq, logical, &psi), cap)?;
                let v = nalgebra::DVector::from_vec(psi);
                let want = target * v;
                let want_full = embed(nq, logical, want.as_slice());
                let l = *lambda.get_or_insert_with(|| phase_of(want_full.inner(&out)));
                let dev = out
                    .amplitudes()
                    .iter()
                    .zip(want_full.amplitudes())
                    .map(|(a, b)| (a - l * b).norm())
                    .fold(0.0, f64::max);
                max_deviation = max_deviation.max(dev);
            }
            Ok(OperatorReport {
                passed: max_deviation <= tol,
                max_deviation,
                checked: count,
            })
        }
    }
}

fn random_unit_vector(dim: usize, rng: &mut ChaCha20Rng) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let norm = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>());
    v.into_iter().map(|z| z / norm).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Gate, RegisterRole};
    use crate::linalg::{self, cis, Mat2};
    use crate::sim::circuit_unitary;
    use core::f64::consts::PI;

    #[test]
    fn global_phase_equivalence() {
        let u = linalg::kron(&linalg::ry(0.3).to_cmatrix(), &linalg::rx(1.1).to_cmatrix());
        let v = u.map(|z| z * cis(PI / 7.0));
        assert!(equal_up_to_global_phase(&u, &v, 1e-14).unwrap().0);
        let (ok, dev) = equal_up_to_global_phase(
            &Mat2::IDENTITY.to_cmatrix(),
            &Mat2::PAULI_X.to_cmatrix(),
            1e-3,
        )
        .unwrap();
        assert!(!ok && dev > 0.5);
        assert!(equal_up_to_global_phase(&u, &CMatrix::zeros(2, 2), 1.0).is_err());
    }

    fn phase_circuit() -> Circuit {
        let mut c = Circuit::new();
        c.add_register("x", 2, RegisterRole::Logical).unwrap();
        c.add_register("w", 1, RegisterRole::Ancilla).unwrap();
        c.push(Gate::Toffoli(0, 1, 2)).unwrap();
        c.push(Gate::Rz(2, 0.5)).unwrap();
        c.push(Gate::Toffoli(0, 1, 2)).unwrap();
        c
    }

    #[test]
    fn phase_oracle_accepts_correct_and_rejects_wrong() {
        let c = phase_circuit();
        // Rz(0.5) on the ancilla contributes e^{∓i/4}
        let good = |b: &[bool]| if b[0] && b[1] { 0.25 } else { -0.25 };
        let r = verify_phase_oracle(
            &c,
            &[0, 1],
            good,
            PhaseReference::Exact,
            Sampling::Exhaustive,
            1e-12,
        )
        .unwrap();
        assert!(r.passed());
        assert_eq!(r.checked, 4);
        let shifted = |b: &[bool]| good(b) + 1.0;
        let r = verify_phase_oracle(
            &c,
            &[0, 1],
            shifted,
            PhaseReference::UpToGlobalPhase,
            Sampling::Exhaustive,
            1e-12,
        )
        .unwrap();
        assert!(r.passed());
        let r = verify_phase_oracle(
            &c,
            &[0, 1],
            |_| 0.0,
            PhaseReference::UpToGlobalPhase,
            Sampling::Exhaustive,
            1e-9,
        )
        .unwrap();
        assert_eq!(r.failure_count, 1);
        assert_eq!(r.failures[0].input, [true, true]);
        assert_eq!(r.failures[0].reason, FailureReason::PhaseMismatch);
    }

    #[test]
    fn dirty_ancilla_is_witnessed() {
        let mut c = phase_circuit();
        c.push(Gate::cnot(1, 2)).unwrap();
        let r = verify_ancilla_restoration(&c, 10, 1).unwrap();
        assert_eq!(r.checked, 4);
        assert_eq!(r.failure_count, 2);
        assert!(r.failures.iter().all(|f| f.input[1]));
        // the dense path must agree
        c.push(Gate::Ry(0, 0.0)).unwrap();
        c.push(Gate::Ry(0, 0.3)).unwrap();
        c.push(Gate::Ry(0, -0.3)).unwrap();
        assert_eq!(
            verify_ancilla_restoration(&c, 10, 1).unwrap().failure_count,
            2
        );
    }

    #[test]
    fn no_ancillas_passes_vacuously() {
        let mut c = Circuit::new();
        c.add_register("q", 2, RegisterRole::Logical).unwrap();
        c.push(Gate::Ry(0, 1.0)).unwrap();
        assert!(verify_ancilla_restoration(&c, 100, 0).unwrap().passed());
    }

    #[test]
    fn restricted_operator_engines_agree() {
        let mut c = Circuit::new();
        c.add_register("q", 2, RegisterRole::Logical).unwrap();
        c.add_register("w", 1, RegisterRole::Ancilla).unwrap();
        c.extend([
            Gate::Toffoli(0, 1, 2),
            Gate::Rz(2, 0.9),
            Gate::Diag2(0, 2, [0.1, 0.2, -0.4, 1.1]),
            Gate::X(1),
            Gate::cnot(1, 2),
        ])
        .unwrap();
        c.add_global_phase(0.3);
        let fast = restricted_operator(&c, &[0, 1], 10).unwrap();
        let mut dense = c.clone();
        dense.push(Gate::U2(0, linalg::hadamard())).unwrap();
        dense.push(Gate::U2(0, linalg::hadamard())).unwrap();
        assert!(!is_phase_classical(&dense));
        let slow = restricted_operator(&dense, &[0, 1], 10).unwrap();
        assert!(linalg::max_abs_diff(&fast, &slow) < 1e-12);
    }

    #[test]
    fn restricted_operator_drops_ancillas() {
        let mut c = Circuit::new();
        c.add_register("w", 1, RegisterRole::Ancilla).unwrap();
        c.add_register("q", 2, RegisterRole::Logical).unwrap();
        c.push(Gate::cnot(1, 0)).unwrap();
        c.push(Gate::Ry(0, 0.7)).unwrap();
        c.push(Gate::Ry(0, -0.7)).unwrap();
        c.push(Gate::cnot(0, 2)).unwrap();
        c.push(Gate::cnot(1, 0)).unwrap();
        let mut sub = Circuit::new();
        sub.add_register("q", 2, RegisterRole::Logical).unwrap();
        sub.push(Gate::cnot(0, 1)).unwrap();
        let target = circuit_unitary(&sub).unwrap();
        let u = restricted_operator(&c, &[1, 2], 10).unwrap();
        assert!(linalg::max_abs_diff(&u, &target) < 1e-12);
        for check in [
            OperatorCheck::Exhaustive,
            OperatorCheck::Probes { count: 3, seed: 2 },
        ] {
            assert!(
                verify_operator(&c, &[1, 2], &target, check, 1e-12, 10)
                    .unwrap()
                    .passed
            );
        }
        let wrong = CMatrix::identity(4, 4);
        assert!(
            !verify_operator(
                &c,
                &[1, 2],
                &wrong,
                OperatorCheck::Probes { count: 3, seed: 2 },
                1e-6,
                10
            )
            .unwrap()
            .passed
        );
    }

    #[test]
    fn logical_state_projection() {
        let mut c = Circuit::new();
        c.add_register("q", 1, RegisterRole::Logical).unwrap();
        c.add_register("w", 1, RegisterRole::Ancilla).unwrap();
        c.push(Gate::Ry(0, PI / 2.0)).unwrap();
        let psi = prepared_logical_state(&c, &[0], 10).unwrap();
        assert!((psi[0].re - libm::sqrt(0.5)).abs() < 1e-15);
        assert!((psi[1].re + libm::sqrt(0.5)).abs() < 1e-15);
    }

    #[test]
    fn sampling_rule() {
        assert_eq!(Sampling::auto(14, 3), Sampling::Exhaustive);
        assert_eq!(
            Sampling::auto(15, 3),
            Sampling::Random {
                samples: 2000,
                seed: 3
            }
        );
        let a: Vec<_> = LogicalInputs::new(
            20,
            Sampling::Random {
                samples: 5,
                seed: 9,
            },
        )
        .collect();
        let b: Vec<_> = LogicalInputs::new(
            20,
            Sampling::Random {
                samples: 5,
                seed: 9,
            },
        )
        .collect();
        assert_eq!(a, b);
        assert_eq!(LogicalInputs::new(3, Sampling::Exhaustive).count(), 8);
    }
}
