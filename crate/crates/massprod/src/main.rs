use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use massprod::{run_job, Command, Format, InstanceKind, JobSpec, NSpec};
use massprod_core::sim::DEFAULT_DENSE_CAP;

/// Mass-produced circuit synthesis: build, verify and count r parallel copies.
#[derive(Parser, Debug)]
#[command(name = "massprod", version)]
struct Cli {
    /// synth-diagonal, synth-state, synth-unitary, synth-mux, verify, count-sweep or generate
    #[arg(long)]
    command: Command,
    /// Qubit count N, or an inclusive range A..B for count-sweep
    #[arg(long)]
    n: Option<NSpec>,
    /// Number of copies
    #[arg(long, default_value_t = 1)]
    r: usize,
    /// Prefix width override
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Instance file (otherwise generated from --n and --seed)
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Circuit file to check (verify)
    #[arg(long)]
    circuit: Option<PathBuf>,
    /// Instance kind for verify and generate: phase-function, state, unitary or multiplexor
    #[arg(long)]
    kind: Option<InstanceKind>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the circuit as OpenQASM 2.0
    #[arg(long)]
    qasm_out: Option<PathBuf>,
    /// Verification samples (phase oracles) or probe states (operators)
    #[arg(long)]
    samples: Option<usize>,
    /// Largest qubit count the dense simulator accepts
    #[arg(long, default_value_t = DEFAULT_DENSE_CAP)]
    dense_cap: usize,
    /// json or csv
    #[arg(long)]
    format: Option<Format>,
    /// Repeat per copy when n is too small to mass-produce r copies
    #[arg(long)]
    fallback: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let spec = JobSpec {
        command: cli.command,
        kind: cli.kind,
        n: cli.n,
        input: cli.input,
        circuit: cli.circuit,
        r: cli.r,
        k: cli.k,
        seed: cli.seed,
        samples: cli.samples,
        dense_cap: cli.dense_cap,
        out: cli.out,
        qasm_out: cli.qasm_out,
        format: cli.format,
        fallback: cli.fallback,
    };
    match run_job(&spec) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            for p in &outcome.written {
                eprintln!("wrote {}", p.display());
            }
            if !outcome.passed {
                eprintln!("verification failed");
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
