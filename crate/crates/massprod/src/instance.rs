//! Seeded random instances and their files.
//!
//! Every instance is drawn from a ChaCha20 generator seeded with the 64-bit
//! seed, on a stream chosen by the kind. Phase angles are uniform in
//! `[-π, π)`. States are normalized complex Gaussian vectors. Unitaries are
//! Haar: QR of a complex Gaussian matrix with each column of `Q` multiplied by
//! the phase of the matching diagonal entry of `R`. Multiplexor blocks are
//! independent Haar 2×2 unitaries.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use massprod_core::linalg::CMatrix;
use massprod_core::random::{self, InstanceRng, Kind};
use massprod_core::synth::{Multiplexor1, PhaseFunction};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{JobError, JobResult};
use crate::formats::{ComplexJson, MultiplexorJson, PhaseFunctionJson};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    PhaseFunction,
    State,
    Unitary,
    Multiplexor,
}

impl InstanceKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            InstanceKind::PhaseFunction => "phase-function",
            InstanceKind::State => "state",
            InstanceKind::Unitary => "unitary",
            InstanceKind::Multiplexor => "multiplexor",
        }
    }
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InstanceKind {
    type Err = JobError;

    fn from_str(s: &str) -> JobResult<Self> {
        match s {
            "phase-function" => Ok(InstanceKind::PhaseFunction),
            "state" => Ok(InstanceKind::State),
            "unitary" => Ok(InstanceKind::Unitary),
            "multiplexor" => Ok(InstanceKind::Multiplexor),
            _ => Err(JobError::Usage(format!(
                "unknown instance kind `{s}` (expected phase-function, state, unitary or multiplexor)"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Instance {
    PhaseFunction(PhaseFunction),
    State(Vec<Complex64>),
    Unitary(CMatrix),
    /// `n` is the select count.
    Multiplexor(Multiplexor1),
}

impl Instance {
    pub fn kind(&self) -> InstanceKind {
        match self {
            Instance::PhaseFunction(_) => InstanceKind::PhaseFunction,
            Instance::State(_) => InstanceKind::State,
            Instance::Unitary(_) => InstanceKind::Unitary,
            Instance::Multiplexor(_) => InstanceKind::Multiplexor,
        }
    }

    /// Qubits of one copy.
    pub fn width(&self) -> usize {
        match self {
            Instance::PhaseFunction(f) => f.n(),
            Instance::State(v) => v.len().trailing_zeros() as usize,
            Instance::Unitary(u) => u.nrows().trailing_zeros() as usize,
            Instance::Multiplexor(m) => m.s() + 1,
        }
    }

    pub fn to_json(&self) -> String {
        fn pretty<T: Serialize>(v: &T) -> String {
            serde_json::to_string_pretty(v).expect("plain data serializes")
        }
        match self {
            Instance::PhaseFunction(f) => pretty(&PhaseFunctionJson::from_function(f)),
            Instance::State(v) => pretty(&ComplexJson::from_slice(v)),
            Instance::Unitary(u) => pretty(&ComplexJson::from_matrix(u)),
            Instance::Multiplexor(m) => pretty(&MultiplexorJson::from_multiplexor(m)),
        }
    }

    pub fn from_json(kind: InstanceKind, text: &str) -> JobResult<Self> {
        fn parse<T: DeserializeOwned>(text: &str) -> JobResult<T> {
            serde_json::from_str(text).map_err(|e| JobError::Format(e.to_string()))
        }
        Ok(match kind {
            InstanceKind::PhaseFunction => {
                Instance::PhaseFunction(parse::<PhaseFunctionJson>(text)?.to_function()?)
            }
            InstanceKind::State => {
                let v = parse::<ComplexJson>(text)?.to_vec()?;
                if v.is_empty() || !v.len().is_power_of_two() {
                    return Err(JobError::Format(format!(
                        "state has {} amplitudes, expected 2^n",
                        v.len()
                    )));
                }
                Instance::State(v)
            }
            InstanceKind::Unitary => Instance::Unitary(parse::<ComplexJson>(text)?.to_matrix()?),
            InstanceKind::Multiplexor => {
                Instance::Multiplexor(parse::<MultiplexorJson>(text)?.to_multiplexor()?)
            }
        })
    }

    pub fn read(kind: InstanceKind, path: &Path) -> JobResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| JobError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(kind, &text)
    }
}

/// Deterministic instance for `(kind, n, seed)`; for multiplexors `n` is the
/// select count.
pub fn generate_instance(kind: InstanceKind, n: usize, seed: u64) -> JobResult<Instance> {
    if n > 16 {
        return Err(JobError::Usage(format!(
            "n = {n} is too large for a dense instance"
        )));
    }
    Ok(match kind {
        InstanceKind::PhaseFunction => {
            if n == 0 {
                return Err(JobError::Usage("phase functions need n ≥ 1".into()));
            }
            Instance::PhaseFunction(random::random_phase_function(
                n,
                &mut InstanceRng::new(seed, Kind::PhaseFunction),
            ))
        }
        InstanceKind::State => {
            if n == 0 {
                return Err(JobError::Usage("states need n ≥ 1".into()));
            }
            Instance::State(random::random_state(
                n,
                &mut InstanceRng::new(seed, Kind::State),
            ))
        }
        InstanceKind::Unitary => {
            if n == 0 {
                return Err(JobError::Usage("unitaries need n ≥ 1".into()));
            }
            Instance::Unitary(random::haar_unitary(
                1 << n,
                &mut InstanceRng::new(seed, Kind::Unitary),
            ))
        }
        InstanceKind::Multiplexor => Instance::Multiplexor(random::random_multiplexor(
            n,
            &mut InstanceRng::new(seed, Kind::Multiplexor),
        )),
    })
}
