//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Run with `cargo test -p massprod --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use massprod::{count_sweep, verify_circuit, Command, Instance, JobSpec, NSpec};
use massprod_core::circuit::{Circuit, Gate};
use massprod_core::linalg::{self, kron, CMatrix};
use massprod_core::massprod::{
    build_comparator, build_mass_prod, build_threshold, ceil_log2, cost_bound,
    mass_produce_diagonal, mass_produce_state, mass_produce_unitary, Options,
};
use massprod_core::random::{self, InstanceRng, Kind};
use massprod_core::sim::{
    bits_to_index, circuit_unitary, equal_up_to_global_phase, index_to_bits,
    prepared_logical_state, restricted_operator, simulate_phase_path, verify_phase_oracle,
    PhaseReference, Sampling,
};
use massprod_core::synth::{
    qsd_factorize, qsd_synthesize, synth_state_prep_single, Axis, MultiplexedRotation,
    PhaseFunction,
};
use num_complex::Complex64;

type Outcome = Result<String, String>;

struct Criterion {
    id: usize,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `f̄(x, c) = f(x)^{1-2c}`, read straight off the angle table.
fn lifted(f: &PhaseFunction, x: usize, c: bool) -> f64 {
    let a = f.angles()[x];
    if c {
        -a
    } else {
        a
    }
}

fn diag(f: &PhaseFunction) -> CMatrix {
    let n = f.angles().len();
    CMatrix::from_fn(n, n, |r, c| {
        if r == c {
            linalg::cis(f.angles()[r])
        } else {
            linalg::ZERO
        }
    })
}

fn fidelity(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.conj() * y)
        .sum::<Complex64>()
        .norm_sqr()
}

fn rotation_synthesis() -> Outcome {
    let axes = [Axis::X, Axis::Y, Axis::Z];
    let mut worst = 0.0f64;
    for s in 1..=6usize {
        for seed in 0..20u64 {
            let mut rng = InstanceRng::new(seed, Kind::Rotation);
            let angles: Vec<f64> = (0..1 << s).map(|_| rng.angle()).collect();
            let axis = axes[seed as usize % 3];
            let m = MultiplexedRotation::new(axis, s, angles.clone()).map_err(|e| e.to_string())?;
            let c = m.synthesize();
            ensure(c.cnot_count() == 1 << s, || {
                format!(
                    "s={s} seed={seed}: {} CNOTs, want {}",
                    c.cnot_count(),
                    1 << s
                )
            })?;
            // block-diagonal target assembled from the rotation formulas
            let blocks: Vec<CMatrix> = angles
                .iter()
                .map(|&a| {
                    match axis {
                        Axis::X => linalg::rx(a),
                        Axis::Y => linalg::ry(a),
                        Axis::Z => linalg::rz(a),
                    }
                    .to_cmatrix()
                })
                .collect();
            let target = linalg::block_diagonal(&blocks);
            let u = circuit_unitary(&c).map_err(|e| e.to_string())?;
            let err = linalg::max_abs_diff(&u, &target);
            worst = worst.max(err);
            ensure(err < 1e-10, || format!("s={s} seed={seed}: error {err:e}"))?;
        }
    }
    Ok(format!(
        "120 instances, 2^s CNOTs each, max error {worst:.1e}"
    ))
}

fn copy_phase_oracle(f: &PhaseFunction, copies: usize) -> impl Fn(&[bool]) -> f64 + '_ {
    let n = f.n();
    move |bits: &[bool]| {
        (0..copies)
            .map(|j| {
                let chunk = &bits[j * (n + 1)..(j + 1) * (n + 1)];
                lifted(f, bits_to_index(&chunk[..n]), chunk[n])
            })
            .sum()
    }
}

fn mass_prod_check(n: usize, k: usize, t: usize, instances: u64, sampling: Sampling) -> Outcome {
    let mut checked = 0;
    let mut worst = 0.0f64;
    for seed in 0..instances {
        let f = random::random_phase_function(n, &mut InstanceRng::new(seed, Kind::PhaseFunction));
        let mp = build_mass_prod(&f, k, t).map_err(|e| e.to_string())?;
        let logical = mp.circuit.logical_qubits();
        let rep = verify_phase_oracle(
            &mp.circuit,
            &logical,
            copy_phase_oracle(&f, 1 << t),
            PhaseReference::Exact,
            sampling,
            1e-9,
        )
        .map_err(|e| e.to_string())?;
        ensure(rep.passed(), || {
            format!(
                "seed {seed}: {} failures, first {:?}",
                rep.failure_count,
                rep.failures.first()
            )
        })?;
        checked += rep.checked;
        worst = worst.max(rep.max_phase_error);
    }
    Ok(format!(
        "{checked} basis inputs, max phase error {worst:.1e}"
    ))
}

fn diagonal_t1() -> Outcome {
    mass_prod_check(4, 2, 1, 10, Sampling::Exhaustive)
}

fn diagonal_t2() -> Outcome {
    mass_prod_check(
        7,
        2,
        2,
        3,
        Sampling::Random {
            samples: 2000,
            seed: 17,
        },
    )
}

fn dense_cross_check() -> Outcome {
    let f = random::random_phase_function(3, &mut InstanceRng::new(5, Kind::PhaseFunction));
    let p = mass_produce_diagonal(&f, 2, &Options::default()).map_err(|e| e.to_string())?;
    let u = restricted_operator(&p.circuit, &p.circuit.logical_qubits(), 26)
        .map_err(|e| e.to_string())?;
    let d = diag(&f);
    let (ok, dev) = equal_up_to_global_phase(&u, &kron(&d, &d), 1e-9).map_err(|e| e.to_string())?;
    ensure(ok, || format!("deviation {dev:e}"))?;
    Ok(format!("64x64 operator, deviation {dev:.1e}"))
}

fn bound_grid() -> Outcome {
    let mut tuples = 0;
    let mut tightest = 0.0f64;
    for n in 4..=12usize {
        for k in 1..=ceil_log2(n) {
            for t in [1usize, 2] {
                if n <= k * t {
                    continue;
                }
                let f = random::random_phase_function(
                    n,
                    &mut InstanceRng::new((n * 100 + k * 10 + t) as u64, Kind::PhaseFunction),
                );
                let mp = build_mass_prod(&f, k, t).map_err(|e| e.to_string())?;
                let count = mp.circuit.cnot_count() as f64;
                let bound = cost_bound(&mp.params);
                ensure(count <= bound, || {
                    format!("n={n} k={k} t={t}: {count} CNOTs > bound {bound}")
                })?;
                tuples += 1;
                tightest = tightest.max(count / bound);
            }
        }
    }
    Ok(format!(
        "{tuples} tuples at d=64, zero violations, largest count/bound {tightest:.3}"
    ))
}

fn scaling_sweep() -> Outcome {
    let rows = count_sweep(NSpec { lo: 4, hi: 12 }, 2, None, 0).map_err(|e| e.to_string())?;
    let table: Vec<String> = rows
        .iter()
        .map(|r| format!("n={} k={} {:.3}", r.n, r.k, r.ratio))
        .collect();
    let table = table.join(", ");
    let above: Vec<usize> = rows
        .iter()
        .filter(|r| r.n >= 6 && r.ratio >= 1.0)
        .map(|r| r.n)
        .collect();
    let decreasing = rows.windows(2).all(|w| w[1].ratio < w[0].ratio);
    ensure(decreasing, || {
        format!("ratios not strictly decreasing: {table}")
    })?;
    ensure(above.is_empty(), || {
        format!("ratio >= 1 at n = {above:?}; ratios: {table}")
    })?;
    Ok(table)
}

fn state_preparation() -> Outcome {
    let mut rng = InstanceRng::new(70, Kind::State);
    let mut worst = 1.0f64;
    for i in 0..50 {
        let n = 1 + i % 5;
        let psi = random::random_state(n, &mut rng);
        let c = synth_state_prep_single(&psi).map_err(|e| e.to_string())?;
        let got = prepared_logical_state(&c, &c.logical_qubits(), 20).map_err(|e| e.to_string())?;
        let fid = fidelity(&got, &psi);
        worst = worst.min(fid);
        ensure(fid >= 1.0 - 1e-9, || {
            format!("single copy n={n}: fidelity {fid}")
        })?;
    }
    let mut pair_worst = 1.0f64;
    for _ in 0..5 {
        let psi = random::random_state(4, &mut rng);
        let p = mass_produce_state(&psi, 2, &Options::default()).map_err(|e| e.to_string())?;
        let got = prepared_logical_state(&p.circuit, &p.circuit.logical_qubits(), 26)
            .map_err(|e| e.to_string())?;
        let target: Vec<Complex64> = psi
            .iter()
            .flat_map(|a| psi.iter().map(move |b| a * b))
            .collect();
        let fid = fidelity(&got, &target);
        pair_worst = pair_worst.min(fid);
        ensure(fid >= 1.0 - 1e-9, || format!("n=4 r=2: fidelity {fid}"))?;
        let split = p.report.state_split.as_ref().ok_or("missing state split")?;
        ensure(p.report.cnot_count == split.analytic_cnots, || {
            format!(
                "count {} != analytic {}",
                p.report.cnot_count, split.analytic_cnots
            )
        })?;
        ensure(
            split.threshold == 2 && split.naive_levels == [0, 1] && split.mass_levels == [2, 3],
            || format!("split {split:?}"),
        )?;
    }
    Ok(format!(
        "single-copy min fidelity 1-{:.1e}, n=4 r=2 min fidelity 1-{:.1e}, levels 0,1 naive and 2,3 mass-produced",
        1.0 - worst,
        1.0 - pair_worst
    ))
}

fn shannon_decomposition() -> Outcome {
    let mut rng = InstanceRng::new(80, Kind::Unitary);
    let mut worst = 0.0f64;
    for n in [2usize, 3] {
        for _ in 0..20 {
            let u = random::haar_unitary(1 << n, &mut rng);
            let factors = qsd_factorize(&u).map_err(|e| e.to_string())?;
            let leaves = factors.iter().filter(|f| f.is_leaf()).count();
            ensure(
                leaves == 1 << (n - 1) && factors.len() - leaves == (1 << (n - 1)) - 1,
                || {
                    format!(
                        "n={n}: {leaves} leaves, {} rotations",
                        factors.len() - leaves
                    )
                },
            )?;
            let c = qsd_synthesize(&u).map_err(|e| e.to_string())?;
            let got = circuit_unitary(&c).map_err(|e| e.to_string())?;
            let (ok, dev) = equal_up_to_global_phase(&got, &u, 1e-8).map_err(|e| e.to_string())?;
            worst = worst.max(dev);
            ensure(ok, || format!("n={n}: deviation {dev:e}"))?;
        }
    }
    Ok(format!("40 unitaries, max deviation {worst:.1e}"))
}

fn unitary_mass_production() -> Outcome {
    let mut rng = InstanceRng::new(90, Kind::Unitary);
    let ceiling = 2.5 * 16.0 * 1.5;
    let (mut worst, mut most) = (0.0f64, 0u64);
    for i in 0..10 {
        let u = random::haar_unitary(4, &mut rng);
        let p = mass_produce_unitary(&u, 2, &Options::default()).map_err(|e| e.to_string())?;
        let got = restricted_operator(&p.circuit, &p.circuit.logical_qubits(), 26)
            .map_err(|e| e.to_string())?;
        let (ok, dev) =
            equal_up_to_global_phase(&got, &kron(&u, &u), 1e-8).map_err(|e| e.to_string())?;
        worst = worst.max(dev);
        ensure(ok, || format!("instance {i}: deviation {dev:e}"))?;
        let count = p.report.cnot_count;
        let q = p.report.qsd.as_ref().ok_or("missing qsd summary")?;
        ensure(count as f64 <= ceiling, || {
            format!("instance {i}: {count} CNOTs > {ceiling}")
        })?;
        ensure(count as f64 <= q.factor_bound_sum, || {
            format!(
                "instance {i}: {count} CNOTs > factor bound sum {}",
                q.factor_bound_sum
            )
        })?;
        most = most.max(count);
    }
    Ok(format!(
        "10 unitaries, max deviation {worst:.1e}, at most {most} CNOTs (ceiling {ceiling})"
    ))
}

/// Copy of `c` with the first `rz` angle shifted.
fn corrupt(c: &Circuit) -> Circuit {
    let mut out = Circuit::new();
    for r in c.registers() {
        out.add_register(r.name.clone(), r.width, r.role)
            .expect("same registers");
    }
    let mut done = false;
    for g in c.gates() {
        let g = match *g {
            Gate::Rz(q, t) if !done => {
                done = true;
                Gate::Rz(q, t + 0.05)
            }
            g => g,
        };
        out.push(g).expect("same qubits");
    }
    out
}

fn run_logical(c: &Circuit, logical: &[usize], bits: &[bool]) -> Result<Vec<bool>, String> {
    let mut input = vec![false; c.num_qubits()];
    for (&q, &b) in logical.iter().zip(bits) {
        input[q] = b;
    }
    let path = simulate_phase_path(c, &input).map_err(|e| e.to_string())?;
    for q in c.ancilla_qubits() {
        ensure(!path.bits[q], || {
            format!("ancilla {q} dirty on input {bits:?}")
        })?;
    }
    ensure((path.phase - linalg::ONE).norm() < 1e-12, || {
        "reversible circuit picked up a phase".into()
    })?;
    Ok(logical.iter().map(|&q| path.bits[q]).collect())
}

fn negative_controls() -> Outcome {
    // a perturbed rotation must be reported with a concrete input
    let f = random::random_phase_function(4, &mut InstanceRng::new(7, Kind::PhaseFunction));
    let p = mass_produce_diagonal(&f, 2, &Options::default()).map_err(|e| e.to_string())?;
    let bad = corrupt(&p.circuit);
    let spec = JobSpec::new(Command::Verify);
    let v = verify_circuit(&bad, &Instance::PhaseFunction(f), &spec).map_err(|e| e.to_string())?;
    ensure(!v.passed, || "corrupted circuit passed verification".into())?;
    let witness = v.json["failures"][0]["input"]
        .as_str()
        .ok_or("no witness input")?
        .to_string();
    ensure(witness.len() == 8, || format!("witness {witness:?}"))?;

    // B_{4,2,ℓ}: a ^= 1{ℓ ≤ m prefix}, b ^= 1{ℓ > M prefix}
    let (n, k) = (4usize, 2usize);
    for ell in 0..=1usize << k {
        let c = build_threshold(n, k, ell);
        let logical = c.logical_qubits();
        for input in 0..1usize << (2 * n + 2) {
            let bits = index_to_bits(input, 2 * n + 2);
            let m = bits_to_index(&bits[..k]);
            let big = bits_to_index(&bits[n..n + k]);
            let mut want = bits.clone();
            want[2 * n] ^= ell <= m;
            want[2 * n + 1] ^= ell > big;
            let got = run_logical(&c, &logical, &bits)?;
            ensure(got == want, || {
                format!("B ell={ell} input {input:#b}: got {got:?}")
            })?;
            if m <= big && !bits[2 * n] && !bits[2 * n + 1] {
                ensure(!(got[2 * n] && got[2 * n + 1]), || {
                    format!("B ell={ell}: both flags set for m={m} M={big}")
                })?;
            }
        }
    }

    // A_3: flag ^= 1{x > y}
    let n = 3;
    let c = build_comparator(n);
    let logical = c.logical_qubits();
    for input in 0..1usize << (2 * n + 1) {
        let bits = index_to_bits(input, 2 * n + 1);
        let (x, y) = (bits_to_index(&bits[..n]), bits_to_index(&bits[n..2 * n]));
        let mut want = bits.clone();
        want[2 * n] ^= x > y;
        let got = run_logical(&c, &logical, &bits)?;
        ensure(got == want, || format!("A_3 x={x} y={y}: got {got:?}"))?;
    }
    Ok(format!(
        "corruption caught on input {witness}, B_(4,2,l) for l=0..4 and A_3 match brute force"
    ))
}

fn main() -> ExitCode {
    let minute = Duration::from_secs(60);
    let criteria = [
        Criterion {
            id: 1,
            name: "multiplexed rotations: 2^s CNOTs, matrix within 1e-10",
            budget: Some(Duration::from_secs(10)),
            run: rotation_synthesis,
        },
        Criterion {
            id: 2,
            name: "diagonal pair n=4 k=2: exhaustive phase path within 1e-9",
            budget: Some(minute),
            run: diagonal_t1,
        },
        Criterion {
            id: 3,
            name: "diagonal quadruple n=7 k=2 t=2: 2000 samples within 1e-9",
            budget: Some(5 * minute),
            run: diagonal_t2,
        },
        Criterion {
            id: 4,
            name: "dense cross-check n=3 r=2 against diag(f) x diag(f) within 1e-9",
            budget: None,
            run: dense_cross_check,
        },
        Criterion {
            id: 5,
            name: "cost bound over n=4..12, k=1..ceil(log n), t=1,2",
            budget: None,
            run: bound_grid,
        },
        Criterion {
            id: 6,
            name: "count sweep r=2 n=4..12: ratio < 1 for n >= 6, strictly decreasing",
            budget: Some(2 * minute),
            run: scaling_sweep,
        },
        Criterion {
            id: 7,
            name: "state preparation: fidelity >= 1-1e-9, analytic count, level split",
            budget: None,
            run: state_preparation,
        },
        Criterion {
            id: 8,
            name: "Shannon decomposition n=2,3: within 1e-8, factor counts",
            budget: None,
            run: shannon_decomposition,
        },
        Criterion {
            id: 9,
            name: "unitary pair n=2: within 1e-8, count <= 60 and <= factor bounds",
            budget: None,
            run: unitary_mass_production,
        },
        Criterion {
            id: 10,
            name: "negative controls: corruption witness, B and A truth tables",
            budget: None,
            run: negative_controls,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let mut outcome = (c.run)();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(budget)) = (&outcome, c.budget) {
            if elapsed > budget {
                outcome = Err(format!("took {elapsed:.1?}, budget {budget:?}"));
            }
        }
        match outcome {
            Ok(detail) => println!("PASS  [{:>2}] {} ({:.1?}): {detail}", c.id, c.name, elapsed),
            Err(detail) => {
                failed += 1;
                println!("FAIL  [{:>2}] {} ({:.1?}): {detail}", c.id, c.name, elapsed);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
