//! JSON file formats.
//!
//! Circuits: `{registers: [{name, width, role}], gates: [{kind, qubits, params}],
//! global_phase}`. Phase functions: `{n, angles}`. States and unitaries:
//! `{re, im}`, row-major. Multiplexors: `{s, blocks: [{re, im}]}`, each block
//! a row-major 2×2 matrix.

use massprod_core::circuit::{Circuit, Gate, RegisterRole};
use massprod_core::linalg::{CMatrix, Mat2};
use massprod_core::massprod::{MassProdParams, SynthesisReport};
use massprod_core::sim::{FailureReason, VerificationReport};
use massprod_core::synth::{Multiplexor1, PhaseFunction};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{JobError, JobResult};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegisterJson {
    pub name: String,
    pub width: usize,
    pub role: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateJson {
    pub kind: String,
    pub qubits: Vec<usize>,
    #[serde(default)]
    pub params: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircuitJson {
    pub registers: Vec<RegisterJson>,
    pub gates: Vec<GateJson>,
    #[serde(default)]
    pub global_phase: f64,
}

impl CircuitJson {
    pub fn from_circuit(c: &Circuit) -> Self {
        CircuitJson {
            registers: c
                .registers()
                .iter()
                .map(|r| RegisterJson {
                    name: r.name.clone(),
                    width: r.width,
                    role: r.role.as_str().into(),
                })
                .collect(),
            gates: c
                .gates()
                .iter()
                .map(|g| GateJson {
                    kind: g.name().into(),
                    qubits: g.qubits().to_vec(),
                    params: g.params(),
                })
                .collect(),
            global_phase: c.global_phase(),
        }
    }

    pub fn to_circuit(&self) -> JobResult<Circuit> {
        let mut c = Circuit::new();
        for r in &self.registers {
            let role = RegisterRole::parse(&r.role).ok_or_else(|| {
                JobError::Format(format!("register `{}`: unknown role `{}`", r.name, r.role))
            })?;
            c.add_register(r.name.clone(), r.width, role)?;
        }
        for g in &self.gates {
            c.push(Gate::from_parts(&g.kind, &g.qubits, &g.params)?)?;
        }
        c.add_global_phase(self.global_phase);
        Ok(c)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseFunctionJson {
    pub n: usize,
    pub angles: Vec<f64>,
}

impl PhaseFunctionJson {
    pub fn from_function(f: &PhaseFunction) -> Self {
        PhaseFunctionJson {
            n: f.n(),
            angles: f.angles().to_vec(),
        }
    }

    pub fn to_function(&self) -> JobResult<PhaseFunction> {
        Ok(PhaseFunction::new(self.n, self.angles.clone())?)
    }
}

/// Dense complex array, real and imaginary parts split.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl ComplexJson {
    pub fn from_slice(v: &[Complex64]) -> Self {
        ComplexJson {
            re: v.iter().map(|z| z.re).collect(),
            im: v.iter().map(|z| z.im).collect(),
        }
    }

    pub fn to_vec(&self) -> JobResult<Vec<Complex64>> {
        if self.re.len() != self.im.len() {
            return Err(JobError::Format(format!(
                "re has {} entries but im has {}",
                self.re.len(),
                self.im.len()
            )));
        }
        Ok(self
            .re
            .iter()
            .zip(&self.im)
            .map(|(&re, &im)| Complex64::new(re, im))
            .collect())
    }

    pub fn from_matrix(m: &CMatrix) -> Self {
        let rows: Vec<Complex64> = m.transpose().iter().copied().collect();
        Self::from_slice(&rows)
    }

    pub fn to_matrix(&self) -> JobResult<CMatrix> {
        let v = self.to_vec()?;
        let dim = (v.len() as f64).sqrt().round() as usize;
        if dim * dim != v.len() || !dim.is_power_of_two() {
            return Err(JobError::Format(format!(
                "{} entries do not form a 2^n × 2^n matrix",
                v.len()
            )));
        }
        Ok(CMatrix::from_row_slice(dim, dim, &v))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiplexorJson {
    pub s: usize,
    pub blocks: Vec<ComplexJson>,
}

impl MultiplexorJson {
    pub fn from_multiplexor(m: &Multiplexor1) -> Self {
        let blocks = m
            .blocks()
            .iter()
            .map(|b| ComplexJson::from_slice(&b.0.concat()))
            .collect();
        MultiplexorJson { s: m.s(), blocks }
    }

    pub fn to_multiplexor(&self) -> JobResult<Multiplexor1> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let v = b.to_vec()?;
                if v.len() != 4 {
                    return Err(JobError::Format(format!(
                        "multiplexor block has {} entries, expected 4",
                        v.len()
                    )));
                }
                Ok(Mat2::new(v[0], v[1], v[2], v[3]))
            })
            .collect::<JobResult<Vec<_>>>()?;
        Ok(Multiplexor1::new(self.s, blocks)?)
    }
}

fn params_json(p: &MassProdParams) -> Value {
    json!({ "n": p.n, "k": p.k, "t": p.t, "d": p.d })
}

/// Schema-stable report: absent sections are `null`.
pub fn report_json(r: &SynthesisReport) -> Value {
    json!({
        "kind": r.kind,
        "n": r.n,
        "r": r.r,
        "copies": r.copies,
        "cnot_count": r.cnot_count,
        "gate_count": r.gate_count,
        "ancilla_count": r.ancilla_count,
        "qubit_count": r.qubit_count,
        "params": r.params.as_ref().map(params_json),
        "bound_value": r.bound_value,
        "d_source": "cost model of this implementation; the bound's d is not fixed by the construction",
        "naive_count": r.naive_count,
        "ratio": r.ratio,
        "fallback": r.fallback,
        "slots": r.slots.as_ref().map(|s| json!({
            "shared_subcircuits": s.shared_subcircuits,
            "groups_per_subcircuit": s.groups_per_subcircuit,
        })),
        "components": r.components.iter().map(|c| json!({
            "label": c.label,
            "n": c.n,
            "cnot_count": c.cnot_count,
            "params": c.params.as_ref().map(params_json),
            "bound_value": c.bound_value,
            "fallback": c.fallback,
        })).collect::<Vec<_>>(),
        "state_split": r.state_split.as_ref().map(|s| json!({
            "threshold": s.threshold,
            "naive_levels": s.naive_levels,
            "mass_levels": s.mass_levels,
            "naive_cnots": s.naive_cnots,
            "mass_cnots": s.mass_cnots,
            "analytic_cnots": s.analytic_cnots,
        })),
        "qsd": r.qsd.as_ref().map(|q| json!({
            "leaves": q.leaves,
            "rotations": q.rotations,
            "headline_bound": q.headline_bound,
            "factor_bound_sum": q.factor_bound_sum,
        })),
    })
}

pub const REPORT_CSV_HEADER: &str =
    "kind,n,r,copies,cnot_count,gate_count,ancilla_count,naive_count,ratio,bound_value,k,t,d";

pub fn report_csv_row(r: &SynthesisReport) -> String {
    let opt = |v: Option<String>| v.unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.kind,
        r.n,
        r.r,
        r.copies,
        r.cnot_count,
        r.gate_count,
        r.ancilla_count,
        r.naive_count,
        r.ratio,
        opt(r.bound_value.map(|b| b.to_string())),
        opt(r.params.map(|p| p.k.to_string())),
        opt(r.params.map(|p| p.t.to_string())),
        opt(r.params.map(|p| p.d.to_string())),
    )
}

fn reason_str(r: FailureReason) -> &'static str {
    match r {
        FailureReason::PhaseMismatch => "phase-mismatch",
        FailureReason::BasisChanged => "basis-changed",
        FailureReason::AncillaDirty => "ancilla-dirty",
    }
}

/// `{checked, failures: [{input, expected_phase, got_phase, reason}],
/// failure_count, max_phase_error, passed, method}`. Inputs are bit strings,
/// logical qubit 0 first.
pub fn verification_json(r: &VerificationReport, method: &str) -> Value {
    json!({
        "method": method,
        "passed": r.passed(),
        "checked": r.checked,
        "failure_count": r.failure_count,
        "failures": r.failures.iter().map(|f| json!({
            "input": f.input.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>(),
            "expected_phase": f.expected_phase,
            "got_phase": f.got_phase,
            "reason": reason_str(f.reason),
        })).collect::<Vec<_>>(),
        "max_phase_error": r.max_phase_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use massprod_core::random::{haar_unitary, random_multiplexor, InstanceRng, Kind};
    use massprod_core::synth::synth_diagonal;

    #[test]
    fn circuit_round_trip() {
        let f = PhaseFunction::new(2, vec![0.1, -0.4, 2.0, 0.3]).unwrap();
        let mut c = synth_diagonal(&f);
        c.push(Gate::U2(0, massprod_core::linalg::hadamard()))
            .unwrap();
        c.push(Gate::Diag2(0, 1, [0.1, 0.2, 0.3, 0.4])).unwrap();
        let text = serde_json::to_string(&CircuitJson::from_circuit(&c)).unwrap();
        let back: CircuitJson = serde_json::from_str(&text).unwrap();
        let d = back.to_circuit().unwrap();
        assert_eq!(d.gates(), c.gates());
        assert_eq!(d.global_phase(), c.global_phase());
        assert_eq!(d.registers().len(), c.registers().len());
    }

    #[test]
    fn bad_gate_is_rejected() {
        let j = CircuitJson {
            registers: vec![RegisterJson {
                name: "q".into(),
                width: 1,
                role: "logical".into(),
            }],
            gates: vec![GateJson {
                kind: "cx".into(),
                qubits: vec![0, 3],
                params: vec![],
            }],
            global_phase: 0.0,
        };
        assert!(j.to_circuit().is_err());
    }

    #[test]
    fn matrix_is_row_major() {
        let mut rng = InstanceRng::new(1, Kind::Unitary);
        let u = haar_unitary(4, &mut rng);
        let j = ComplexJson::from_matrix(&u);
        assert_eq!(Complex64::new(j.re[1], j.im[1]), u[(0, 1)]);
        assert_eq!(j.to_matrix().unwrap(), u);
    }

    #[test]
    fn multiplexor_round_trip() {
        let mut rng = InstanceRng::new(2, Kind::Multiplexor);
        let m = random_multiplexor(2, &mut rng);
        let back = MultiplexorJson::from_multiplexor(&m)
            .to_multiplexor()
            .unwrap();
        assert_eq!(back.blocks(), m.blocks());
    }
}
