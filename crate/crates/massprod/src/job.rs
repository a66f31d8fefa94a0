//! Job specification and runner behind the command-line front end.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use massprod_core::circuit::qasm::export_qasm;
use massprod_core::circuit::Circuit;
use massprod_core::linalg::{kron, CMatrix};
use massprod_core::massprod::{
    analytic_cnot_count, ceil_log2, mass_produce_diagonal, mass_produce_multiplexor1,
    mass_produce_state, mass_produce_unitary, naive_diagonal_cnots, Options, Produced,
    SynthesisReport,
};
use massprod_core::sim::{
    prepared_logical_state, verify_operator, verify_phase_oracle, OperatorCheck, PhaseReference,
    Sampling, DEFAULT_DENSE_CAP,
};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{JobError, JobResult};
use crate::formats::{
    report_csv_row, report_json, verification_json, CircuitJson, REPORT_CSV_HEADER,
};
use crate::instance::{generate_instance, Instance, InstanceKind};

pub const PHASE_TOL: f64 = 1e-9;
pub const FIDELITY_TOL: f64 = 1e-9;
pub const OPERATOR_TOL: f64 = 1e-8;
/// Operator probes used when neither `--samples` nor an exhaustive check fit.
pub const DEFAULT_PROBES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    SynthDiagonal,
    SynthState,
    SynthUnitary,
    SynthMux,
    Verify,
    CountSweep,
    Generate,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::SynthDiagonal,
        Command::SynthState,
        Command::SynthUnitary,
        Command::SynthMux,
        Command::Verify,
        Command::CountSweep,
        Command::Generate,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Command::SynthDiagonal => "synth-diagonal",
            Command::SynthState => "synth-state",
            Command::SynthUnitary => "synth-unitary",
            Command::SynthMux => "synth-mux",
            Command::Verify => "verify",
            Command::CountSweep => "count-sweep",
            Command::Generate => "generate",
        }
    }

    /// Instance kind a synthesis command consumes.
    pub fn synth_kind(&self) -> Option<InstanceKind> {
        match self {
            Command::SynthDiagonal => Some(InstanceKind::PhaseFunction),
            Command::SynthState => Some(InstanceKind::State),
            Command::SynthUnitary => Some(InstanceKind::Unitary),
            Command::SynthMux => Some(InstanceKind::Multiplexor),
            _ => None,
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Command {
    type Err = JobError;

    fn from_str(s: &str) -> JobResult<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Command::ALL.iter().map(Command::as_str).collect();
                JobError::Usage(format!(
                    "unknown command `{s}` (expected one of {})",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = JobError;

    fn from_str(s: &str) -> JobResult<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(JobError::Usage(format!(
                "unknown format `{s}` (expected json or csv)"
            ))),
        }
    }
}

/// `N` or an inclusive range `A..B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NSpec {
    pub lo: usize,
    pub hi: usize,
}

impl NSpec {
    pub fn single(n: usize) -> Self {
        NSpec { lo: n, hi: n }
    }

    fn exactly_one(&self) -> JobResult<usize> {
        if self.lo == self.hi {
            Ok(self.lo)
        } else {
            Err(JobError::Usage(
                "this command takes a single --n, not a range".into(),
            ))
        }
    }
}

impl FromStr for NSpec {
    type Err = JobError;

    fn from_str(s: &str) -> JobResult<Self> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| JobError::Usage(format!("bad --n value `{s}` (expected N or A..B)")))
        };
        match s.split_once("..") {
            Some((a, b)) => {
                let (lo, hi) = (num(a)?, num(b)?);
                if lo > hi {
                    return Err(JobError::Usage(format!("empty range `{s}`")));
                }
                Ok(NSpec { lo, hi })
            }
            None => Ok(NSpec::single(num(s)?)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JobSpec {
    pub command: Command,
    /// Instance kind for `verify` and `generate`.
    pub kind: Option<InstanceKind>,
    pub n: Option<NSpec>,
    /// Instance file; when absent the instance is generated from `(kind, n, seed)`.
    pub input: Option<PathBuf>,
    /// Circuit file checked by `verify`.
    pub circuit: Option<PathBuf>,
    pub r: usize,
    pub k: Option<usize>,
    pub seed: u64,
    pub samples: Option<usize>,
    pub dense_cap: usize,
    /// Output directory.
    pub out: Option<PathBuf>,
    pub qasm_out: Option<PathBuf>,
    pub format: Option<Format>,
    /// Repeat per copy instead of failing when `n` is too small for `r`.
    pub fallback: bool,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        JobSpec {
            command,
            kind: None,
            n: None,
            input: None,
            circuit: None,
            r: 1,
            k: None,
            seed: 0,
            samples: None,
            dense_cap: DEFAULT_DENSE_CAP,
            out: None,
            qasm_out: None,
            format: None,
            fallback: false,
        }
    }

    fn validate(&self) -> JobResult<()> {
        if self.r == 0 {
            return Err(JobError::Usage("--r must be at least 1".into()));
        }
        if self.dense_cap == 0 {
            return Err(JobError::Usage("--dense-cap must be positive".into()));
        }
        if self.samples == Some(0) {
            return Err(JobError::Usage("--samples must be positive".into()));
        }
        if self.k == Some(0) {
            return Err(JobError::Usage("--k must be at least 1".into()));
        }
        for p in [&self.input, &self.circuit].into_iter().flatten() {
            if !p.exists() {
                return Err(JobError::Usage(format!("{} does not exist", p.display())));
            }
        }
        Ok(())
    }

    fn options(&self) -> Options {
        Options {
            k: self.k,
            fallback: self.fallback,
        }
    }

    fn load_instance(&self, kind: InstanceKind) -> JobResult<Instance> {
        match &self.input {
            Some(path) => Instance::read(kind, path),
            None => {
                let n = self
                    .n
                    .ok_or_else(|| JobError::Usage("need --in or --n".into()))?
                    .exactly_one()?;
                generate_instance(kind, n, self.seed)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verification {
    pub passed: bool,
    pub json: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub k: usize,
    pub cnot_mass: u64,
    pub cnot_naive: u64,
    pub ratio: f64,
}

#[derive(Clone, Debug, Default)]
pub struct JobOutcome {
    /// False when a verification failed.
    pub passed: bool,
    pub written: Vec<PathBuf>,
    /// Text meant for standard output when no `--out` is given.
    pub stdout: String,
    pub report: Option<SynthesisReport>,
    pub verification: Option<Verification>,
    pub sweep: Vec<SweepRow>,
}

impl JobOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

pub fn run_job(spec: &JobSpec) -> JobResult<JobOutcome> {
    spec.validate()?;
    match spec.command {
        Command::Verify => run_verify(spec),
        Command::CountSweep => run_sweep(spec),
        Command::Generate => run_generate(spec),
        cmd => run_synth(spec, cmd.synth_kind().expect("synthesis command")),
    }
}

fn produce(instance: &Instance, r: usize, opts: &Options) -> JobResult<Produced> {
    Ok(match instance {
        Instance::PhaseFunction(f) => mass_produce_diagonal(f, r, opts)?,
        Instance::State(psi) => mass_produce_state(psi, r, opts)?,
        Instance::Unitary(u) => mass_produce_unitary(u, r, opts)?,
        Instance::Multiplexor(m) => mass_produce_multiplexor1(m, r, opts)?,
    })
}

fn run_synth(spec: &JobSpec, kind: InstanceKind) -> JobResult<JobOutcome> {
    let instance = spec.load_instance(kind)?;
    let produced = produce(&instance, spec.r, &spec.options())?;
    let verification = verify_circuit(&produced.circuit, &instance, spec)?;
    let mut out = JobOutcome {
        passed: verification.passed,
        ..Default::default()
    };
    let report_text = match spec.format.unwrap_or(Format::Json) {
        Format::Json => pretty(&report_json(&produced.report)),
        Format::Csv => format!(
            "{REPORT_CSV_HEADER}\n{}\n",
            report_csv_row(&produced.report)
        ),
    };
    if let Some(dir) = &spec.out {
        let report_name = match spec.format.unwrap_or(Format::Json) {
            Format::Json => "report.json",
            Format::Csv => "report.csv",
        };
        out.written.push(write(
            dir,
            "circuit.json",
            &pretty(&CircuitJson::from_circuit(&produced.circuit)),
        )?);
        out.written.push(write(dir, report_name, &report_text)?);
        out.written.push(write(
            dir,
            "verification.json",
            &pretty(&verification.json),
        )?);
    } else {
        out.stdout = report_text;
    }
    if let Some(path) = &spec.qasm_out {
        write_file(path, &export_qasm(&produced.circuit.expand_macros())?)?;
        out.written.push(path.clone());
    }
    out.report = Some(produced.report);
    out.verification = Some(verification);
    Ok(out)
}

fn run_verify(spec: &JobSpec) -> JobResult<JobOutcome> {
    let kind = spec
        .kind
        .ok_or_else(|| JobError::Usage("verify needs --kind".into()))?;
    let path = spec
        .circuit
        .as_ref()
        .ok_or_else(|| JobError::Usage("verify needs --circuit".into()))?;
    let text = fs::read_to_string(path).map_err(|source| JobError::Io {
        path: path.clone(),
        source,
    })?;
    let parsed: CircuitJson = serde_json::from_str(&text).map_err(|source| JobError::Json {
        path: path.clone(),
        source,
    })?;
    let circuit = parsed.to_circuit()?;
    let instance = spec.load_instance(kind)?;
    let verification = verify_circuit(&circuit, &instance, spec)?;
    let mut out = JobOutcome {
        passed: verification.passed,
        ..Default::default()
    };
    let text = pretty(&verification.json);
    match &spec.out {
        Some(dir) => out.written.push(write(dir, "verification.json", &text)?),
        None => out.stdout = text,
    }
    out.verification = Some(verification);
    Ok(out)
}

fn run_generate(spec: &JobSpec) -> JobResult<JobOutcome> {
    let kind = spec
        .kind
        .ok_or_else(|| JobError::Usage("generate needs --kind".into()))?;
    let n = spec
        .n
        .ok_or_else(|| JobError::Usage("generate needs --n".into()))?
        .exactly_one()?;
    let text = generate_instance(kind, n, spec.seed)?.to_json();
    let mut out = JobOutcome {
        passed: true,
        ..Default::default()
    };
    match &spec.out {
        Some(dir) => out.written.push(write(dir, "instance.json", &text)?),
        None => out.stdout = text,
    }
    Ok(out)
}

/// `k ≥ 1` with `n > k·t` minimizing the closed-form count.
pub fn best_k(n: usize, t: usize) -> Option<usize> {
    (1..n)
        .filter(|&k| n > k * t)
        .min_by_key(|&k| analytic_cnot_count(n, k, t))
}

/// Diagonal mass production against `r ×` the single-copy count, one row per
/// `n`. Without `--k` each row uses the cheapest admissible `k`.
pub fn count_sweep(ns: NSpec, r: usize, k: Option<usize>, seed: u64) -> JobResult<Vec<SweepRow>> {
    if r < 2 {
        return Err(JobError::Usage(
            "count-sweep needs --r of at least 2".into(),
        ));
    }
    let t = ceil_log2(r);
    (ns.lo..=ns.hi)
        .map(|n| {
            let k = match k {
                Some(k) => k,
                None => best_k(n, t).ok_or_else(|| {
                    JobError::Core(massprod_core::Error::Domain(format!(
                        "no k with n > k·t for n={n}, t={t}"
                    )))
                })?,
            };
            let Instance::PhaseFunction(f) =
                generate_instance(InstanceKind::PhaseFunction, n, seed)?
            else {
                unreachable!("phase-function kind");
            };
            let p = mass_produce_diagonal(
                &f,
                r,
                &Options {
                    k: Some(k),
                    fallback: false,
                },
            )?;
            let cnot_naive = r as u64 * naive_diagonal_cnots(n);
            let cnot_mass = p.report.cnot_count;
            Ok(SweepRow {
                n,
                k,
                cnot_mass,
                cnot_naive,
                ratio: cnot_mass as f64 / cnot_naive as f64,
            })
        })
        .collect()
}

pub const SWEEP_CSV_HEADER: [&str; 4] = ["n", "cnot_mass", "cnot_naive", "ratio"];

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SWEEP_CSV_HEADER).expect("in-memory write");
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.cnot_mass.to_string(),
            r.cnot_naive.to_string(),
            r.ratio.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
}

fn run_sweep(spec: &JobSpec) -> JobResult<JobOutcome> {
    let ns = spec
        .n
        .ok_or_else(|| JobError::Usage("count-sweep needs --n A..B".into()))?;
    let rows = count_sweep(ns, spec.r, spec.k, spec.seed)?;
    let (name, text) = match spec.format.unwrap_or(Format::Csv) {
        Format::Csv => ("sweep.csv", sweep_csv(&rows)),
        Format::Json => ("sweep.json", pretty(&json!({ "r": spec.r, "rows": rows }))),
    };
    let mut out = JobOutcome {
        passed: true,
        ..Default::default()
    };
    match &spec.out {
        Some(dir) => out.written.push(write(dir, name, &text)?),
        None => out.stdout = text,
    }
    out.sweep = rows;
    Ok(out)
}

fn tensor_power(m: &CMatrix, copies: usize) -> CMatrix {
    (1..copies).fold(m.clone(), |acc, _| kron(&acc, m))
}

/// Checks `circuit` against `copies` of `instance`, the copy count read off
/// the number of logical qubits.
pub fn verify_circuit(
    circuit: &Circuit,
    instance: &Instance,
    spec: &JobSpec,
) -> JobResult<Verification> {
    let logical = circuit.logical_qubits();
    let w = instance.width();
    if logical.is_empty() || logical.len() % w != 0 {
        return Err(JobError::Format(format!(
            "circuit has {} logical qubits, not a multiple of the instance width {w}",
            logical.len()
        )));
    }
    let copies = logical.len() / w;
    match instance {
        Instance::PhaseFunction(f) => {
            let sampling = match spec.samples {
                Some(samples) => Sampling::Random {
                    samples,
                    seed: spec.seed,
                },
                None => Sampling::auto(logical.len(), spec.seed),
            };
            let expected = |bits: &[bool]| -> f64 {
                bits.chunks(w)
                    .map(|x| f.angle(massprod_core::sim::bits_to_index(x)))
                    .sum()
            };
            let rep = verify_phase_oracle(
                circuit,
                &logical,
                expected,
                PhaseReference::Exact,
                sampling,
                PHASE_TOL,
            )?;
            Ok(Verification {
                passed: rep.passed(),
                json: verification_json(&rep, "phase-path"),
            })
        }
        Instance::State(psi) => {
            let got = prepared_logical_state(circuit, &logical, spec.dense_cap)?;
            let col = CMatrix::from_column_slice(psi.len(), 1, psi);
            let target = tensor_power(&col, copies);
            let overlap: Complex64 = target.iter().zip(&got).map(|(t, g)| t.conj() * g).sum();
            let fidelity = overlap.norm_sqr();
            let passed = 1.0 - fidelity <= FIDELITY_TOL;
            Ok(Verification {
                passed,
                json: json!({
                    "method": "dense-state",
                    "passed": passed,
                    "checked": 1,
                    "failure_count": usize::from(!passed),
                    "failures": [],
                    "max_phase_error": 1.0 - fidelity,
                    "fidelity": fidelity,
                }),
            })
        }
        Instance::Unitary(_) | Instance::Multiplexor(_) => {
            let single = match instance {
                Instance::Unitary(u) => u.clone(),
                Instance::Multiplexor(m) => m.matrix(),
                _ => unreachable!(),
            };
            let target = tensor_power(&single, copies);
            let check = match spec.samples {
                Some(count) => OperatorCheck::Probes {
                    count,
                    seed: spec.seed,
                },
                None if logical.len() <= 8 && circuit.num_qubits() <= 16 => {
                    OperatorCheck::Exhaustive
                }
                None => OperatorCheck::Probes {
                    count: DEFAULT_PROBES,
                    seed: spec.seed,
                },
            };
            let rep = verify_operator(
                circuit,
                &logical,
                &target,
                check,
                OPERATOR_TOL,
                spec.dense_cap,
            )?;
            Ok(Verification {
                passed: rep.passed,
                json: json!({
                    "method": match check {
                        OperatorCheck::Exhaustive => "dense-operator-exhaustive",
                        OperatorCheck::Probes { .. } => "dense-operator-probes",
                    },
                    "passed": rep.passed,
                    "checked": rep.checked,
                    "failure_count": usize::from(!rep.passed),
                    "failures": [],
                    "max_phase_error": rep.max_deviation,
                }),
            })
        }
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn write_file(path: &Path, text: &str) -> JobResult<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|source| JobError::Io {
            path: parent.to_path_buf(),
            source,
        })?;
    }
    fs::write(path, text).map_err(|source| JobError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(dir: &Path, name: &str, text: &str) -> JobResult<PathBuf> {
    let path = dir.join(name);
    write_file(&path, text)?;
    Ok(path)
}
