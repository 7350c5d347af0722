//! End-to-end acceptance checks. Runs without the libtest harness so every
//! criterion prints exactly one PASS/FAIL line, and exits nonzero on failure.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tncode::decoder::{leaf_tensors, NetworkDecoder, OpCounts};
use tncode::experiment::{
    crossing, fit_threshold, run_mc_prepared, write_csv, McPoint, PreparedCode, DEFAULT_P_GRID, DEFAULT_TRIALS,
};
use tncode::holographic::{build_code, build_network, chain_network, predicted_op_count, schedule_for};
use tncode::oracle::{exhaustive_chi, exhaustive_contract, exhaustive_failure_rate};
use tncode::verify::{all_syndromes, random_syndromes};
use tncode::{
    builtin_seven_qubit_state, builtin_six_qubit, contract, pauli, ChiTable, CodeTensor, Error, LegBinding,
    NoiseModel, PauliString, StabilizerCode, Syndrome,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<T>(r: tncode::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn decoder_for(network: tncode::TensorNetwork) -> Result<NetworkDecoder, String> {
    let code = e2s(build_code(&network))?;
    e2s(NetworkDecoder::new(network, code))
}

fn worst_error(dec: &NetworkDecoder, p: f64, syndromes: &[Syndrome]) -> Result<f64, String> {
    let noise = e2s(NoiseModel::depolarizing(dec.code().n(), p))?;
    let mut worst = 0.0f64;
    for s in syndromes {
        let net = e2s(dec.chi(&noise, s))?;
        let lit = e2s(exhaustive_chi(dec.code(), &noise, s))?;
        for class in 0..lit.num_classes() {
            let (a, b) = (net.value(class), lit.value(class));
            let rel = if b == 0.0 { a.abs() } else { (a - b).abs() / b };
            worst = worst.max(rel);
        }
        ensure(net.argmax == lit.argmax, || format!("argmax differs for syndrome {s}"))?;
    }
    Ok(worst)
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let six = decoder_for(e2s(build_network(1))?)?;
    let mut worst = 0.0f64;
    for p in [0.01, 0.1, 0.3] {
        worst = worst.max(worst_error(&six, p, &all_syndromes(5))?);
    }
    let eleven = decoder_for(chain_network(1))?;
    ensure((eleven.code().n(), eleven.code().k()) == (11, 1), || "chain of one link is not [[11,1]]".into())?;
    worst = worst.max(worst_error(&eleven, 0.1, &all_syndromes(10))?);
    let sixteen = decoder_for(chain_network(2))?;
    ensure(sixteen.code().n() == 16, || "chain of two links is not 16 qubits".into())?;
    worst = worst.max(worst_error(&sixteen, 0.1, &random_syndromes(15, 200, 0xacce))?);
    let elapsed = start.elapsed();
    ensure(worst <= 1e-10, || format!("max relative error {worst:e}"))?;
    ensure(elapsed <= Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!("max relative error {worst:.1e} over 32x3 + 1024 + 200 syndromes in {elapsed:.1?}"))
}

fn constructive_contraction() -> Outcome {
    let start = Instant::now();
    let t1 = e2s(CodeTensor::from_code(builtin_six_qubit()))?;
    let t0 = e2s(CodeTensor::from_code(builtin_seven_qubit_state()))?;
    let binding = LegBinding::single(5, 0);
    for (label, a, b) in [("T1 x T0", &t1, &t0), ("T1 x T1", &t1, &t1)] {
        let con = e2s(contract(a, b, &binding))?;
        let lit = e2s(exhaustive_contract(a, b, &binding))?;
        ensure(con.classes().is_some(), || format!("{label}: classes not enumerated"))?;
        ensure(con.classes() == lit.classes(), || format!("{label}: class tables differ"))?;
        let report = con.self_check();
        ensure(report.passed(), || format!("{label}: {}", report.violations.join("; ")))?;
        // entries are indicator values
        let classes = con.classes().unwrap();
        for (class, keys) in classes.iter().enumerate() {
            for &key in keys.iter().take(64) {
                let g = PauliString::from_key(con.n_legs(), key);
                ensure(e2s(con.entry_pauli(class, &g))? == 1, || format!("{label}: member entry is not 1"))?;
                let mut off = g.clone();
                off.mul_at(0, tncode::PauliOp::X);
                let v = e2s(con.entry_pauli(class, &off))?;
                ensure(v <= 1, || format!("{label}: entry {v}"))?;
            }
        }
    }
    let eleven = e2s(contract(&t1, &t0, &binding))?;
    let d = eleven.code().distance_of(3);
    let elapsed = start.elapsed();
    ensure(d == Some(3), || format!("distance search gave {d:?}"))?;
    ensure(elapsed <= Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("T1xT0 and T1xT1 class tables equal; [[11,1,3]] certified in {elapsed:.1?}"))
}

fn precondition_necessity() -> Outcome {
    let toy = e2s(StabilizerCode::new(2, vec![pauli("ZZ")], vec![pauli("XX")], vec![pauli("ZI")]))?;
    let t = e2s(CodeTensor::from_code(toy))?;
    let binding = LegBinding::new(vec![0, 1], vec![0, 1]);
    ensure(!e2s(t.code().distinguishes_errors_on(&[0, 1]))?, || "toy code distinguishes its legs".into())?;
    match exhaustive_contract(&t, &t, &binding) {
        Err(Error::EntryExceedsOne { value, index, .. }) => {
            ensure(
                matches!(contract(&t, &t, &binding), Err(Error::PreconditionViolated { .. })),
                || "constructive contraction did not refuse".into(),
            )?;
            Ok(format!("entry {value} at index {index:?} detected"))
        }
        other => Err(format!("expected an entry >= 2, got {other:?}")),
    }
}

fn construction_validity() -> Outcome {
    let mut notes = Vec::new();
    for radius in 2..=4usize {
        let net = e2s(build_network(radius))?;
        for node in &net.nodes {
            let legs: Vec<usize> = node.ingoing.iter().map(|l| l.leg).collect();
            if !legs.is_empty() {
                let ok = e2s(node.kind.code().distinguishes_errors_on(&legs))?;
                ensure(ok, || format!("R={radius}: node {} fails on legs {legs:?}", node.id))?;
            }
        }
        let code = e2s(build_code(&net))?;
        e2s(code.validate())?;
        ensure(code.num_stabilizers() == code.n() - 1, || format!("R={radius}: k != 1"))?;
        let schedule = e2s(schedule_for(&net))?;
        let dec = e2s(NetworkDecoder::new(net, code))?;
        let noise = e2s(NoiseModel::depolarizing(dec.code().n(), 0.1))?;
        let s = random_syndromes(dec.code().num_stabilizers(), 1, radius as u64).remove(0);
        let (_, counts) = e2s(dec.chi_counted(&noise, &s))?;
        let scheduled = schedule.bond_dims_by_layer();
        ensure(counts.bond_dims == scheduled, || {
            format!("R={radius}: observed {:?} vs scheduled {scheduled:?}", counts.bond_dims)
        })?;
        // depth l carries D[r] with r = l + 1; the central trace yields scalars
        for (depth, &d) in counts.bond_dims.iter().enumerate().skip(1) {
            let want = 4usize.pow((radius - depth - 1) as u32);
            ensure(d == want, || format!("R={radius}: depth {depth} bond {d}, expected {want}"))?;
        }
        ensure(counts.bond_dims[0] == 1, || format!("R={radius}: central step bond {}", counts.bond_dims[0]))?;
        notes.push(format!("R={radius} n={} bonds {:?}", dec.code().n(), counts.bond_dims));
    }
    Ok(notes.join("; "))
}

fn mc_for_radius(radius: usize, seed: u64) -> Result<Vec<McPoint>, String> {
    let net = e2s(build_network(radius))?;
    let code = e2s(build_code(&net))?;
    let prepared = e2s(PreparedCode::from_network(net, code))?;
    e2s(run_mc_prepared(&prepared, &DEFAULT_P_GRID, DEFAULT_TRIALS, seed))
}

fn synthetic_points(p_th: f64, nu: f64) -> Vec<McPoint> {
    let mut points = Vec::new();
    for n in [36usize, 174, 834] {
        for i in 0..11 {
            let p = 0.14 + 0.01 * i as f64;
            let x = (p - p_th) * (n as f64).powf(1.0 / nu);
            let rate = 0.3 + 0.5 * x + 0.1 * x * x;
            let trials = 1_000_000u64;
            let failures = (rate * trials as f64).round() as u64;
            points.push(McPoint::new(0, n, p, trials, failures));
        }
    }
    points
}

fn threshold() -> Outcome {
    let start = Instant::now();
    let curves: Vec<Vec<McPoint>> = (2..=4).map(|r| mc_for_radius(r, 2024)).collect::<Result<_, _>>()?;
    let mc_time = start.elapsed();
    let cross = crossing(&curves[1], &curves[2]).ok_or("radius-3 and radius-4 curves do not cross")?;
    ensure((0.17..=0.21).contains(&cross), || format!("R3/R4 crossing at {cross:.4}"))?;
    let all: Vec<McPoint> = curves.concat();
    let fit = e2s(fit_threshold(&all))?;

    let synthetic = e2s(fit_threshold(&synthetic_points(0.188, 2.970)))?;
    ensure((synthetic.p_th - 0.188).abs() <= 0.005, || format!("synthetic p_th {}", synthetic.p_th))?;
    ensure((synthetic.nu - 2.970).abs() <= 0.05, || format!("synthetic nu {}", synthetic.nu))?;
    Ok(format!(
        "R3/R4 crossing {cross:.4}; MC fit p_th={:.4} nu={:.3} ({mc_time:.0?}); synthetic fit p_th={:.5} nu={:.4}",
        fit.p_th, fit.nu, synthetic.p_th, synthetic.nu
    ))
}

fn complexity() -> Outcome {
    let mut rows = Vec::new();
    for radius in 2..=5usize {
        let net = e2s(build_network(radius))?;
        let bound = e2s(predicted_op_count(&net, 3.0))?;
        let dec = decoder_for(net)?.with_parallel(false);
        let noise = e2s(NoiseModel::depolarizing(dec.code().n(), 0.1))?;
        let e = e2s(dec.code().pure_error_for(&random_syndromes(dec.code().num_stabilizers(), 1, 5).remove(0)))?;
        let (_, _, counts): (_, _, OpCounts) = e2s(dec.contract_leaves(&e2s(leaf_tensors(&noise, &e))?))?;
        let total = counts.total() as f64;
        ensure(total <= bound, || format!("R={radius}: {total} ops exceeds bound {bound}"))?;
        rows.push((dec.code().n() as f64, total, bound));
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = rows.iter().map(|&(n, c, _)| (n.ln(), c.ln())).unzip();
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = ys.iter().sum::<f64>() / ys.len() as f64;
    let slope = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
        / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    ensure(slope <= 3.0, || format!("fitted exponent {slope:.3}"))?;
    let detail: Vec<String> = rows
        .iter()
        .map(|(n, c, b)| format!("n={n} ops={c:.3e} bound={b:.3e}"))
        .collect();
    Ok(format!("{}; exponent {slope:.3}", detail.join(", ")))
}

fn statistical_harness() -> Outcome {
    let prepared = e2s(PreparedCode::from_network(e2s(build_network(1))?, builtin_six_qubit()))?;
    let mut notes = Vec::new();
    for (p, trials) in [(0.2, 100_000u64), (0.75, 100_000)] {
        let exact = e2s(exhaustive_failure_rate(&prepared.code, &e2s(NoiseModel::depolarizing(6, p))?))?;
        let point = e2s(run_mc_prepared(&prepared, &[p], trials, 99))?.remove(0);
        let sigma = (exact * (1.0 - exact) / trials as f64).sqrt();
        let z = (point.failure_rate - exact) / sigma;
        ensure(z.abs() <= 4.0, || format!("p={p}: MC {} vs exact {exact} ({z:.2} sigma)", point.failure_rate))?;
        notes.push(format!("p={p}: MC {:.5} exact {exact:.5} ({z:+.2} sigma)", point.failure_rate));
    }
    let csv = || -> Result<Vec<u8>, String> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().map_err(|e| e.to_string())?;
        let points = pool.install(|| run_mc_prepared(&prepared, &[0.1, 0.2, 0.3], 5000, 7));
        let mut buf = Vec::new();
        e2s(write_csv(&e2s(points)?, &mut buf))?;
        Ok(buf)
    };
    ensure(csv()? == csv()?, || "repeated seeded runs differ".into())?;
    notes.push("repeated seeded CSV byte-identical".into());
    Ok(notes.join("; "))
}

fn invariant_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    // symplectic bilinearity, exhaustive on two qubits
    let two: Vec<PauliString> = (0..16u128).map(|k| PauliString::from_key(2, k)).collect();
    for a in &two {
        for b in &two {
            let ab = e2s(a.multiply(b))?;
            for c in &two {
                ensure(ab.anticommutes_with(c) == a.anticommutes_with(c) ^ b.anticommutes_with(c), || {
                    format!("bilinearity fails for {a} {b} {c}")
                })?;
            }
        }
    }
    // coset partition counts and tensor group invariants
    let t1 = e2s(CodeTensor::from_code(builtin_six_qubit()))?;
    let t0 = e2s(CodeTensor::from_code(builtin_seven_qubit_state()))?;
    for (a, b, binding) in [
        (&t1, &t0, LegBinding::single(2, 4)),
        (&t0, &t0, LegBinding::new(vec![5, 6], vec![0, 1])),
        (&t1, &t1, LegBinding::single(0, 3)),
    ] {
        let t = e2s(contract(a, b, &binding))?;
        let report = t.self_check();
        ensure(report.passed(), || report.violations.join("; "))?;
        let classes = t.classes().ok_or("classes not enumerated")?;
        let r = t.code().num_stabilizers();
        ensure(classes.iter().all(|c| c.len() == 1 << r), || "coset sizes wrong".into())?;
    }
    // pure-error right inverse and canonical-form group equality
    let eleven = e2s(build_code(&chain_network(1)))?;
    for code in [builtin_six_qubit(), eleven.clone()] {
        let r = code.num_stabilizers();
        for v in 0..1u64 << r {
            let s = Syndrome::from_index(r, v);
            ensure(e2s(code.syndrome_of(&e2s(code.pure_error_for(&s))?))? == s, || "pure error mismatch".into())?;
        }
        for leg in 0..code.n() {
            if e2s(code.distinguishes_errors_on(&[leg]))? {
                let canon = e2s(code.canonicalize_on_legs(&[leg]))?;
                ensure(canon.same_stabilizer_group(&code), || format!("canonical form on leg {leg} changed the group"))?;
            }
        }
    }
    // chi normalization and argmax scale invariance
    let dec = decoder_for(chain_network(1))?;
    let noise = e2s(NoiseModel::depolarizing(11, 0.13))?;
    let mut total = 0.0;
    for s in all_syndromes(10) {
        let chi = e2s(dec.chi(&noise, &s))?;
        total += chi.values().iter().sum::<f64>();
        let e = e2s(dec.code().pure_error_for(&s))?;
        let leaves = e2s(leaf_tensors(&noise, &e))?;
        let scaled: Vec<[f64; 4]> = leaves
            .iter()
            .map(|l| {
                let c: f64 = rng.gen_range(0.1..10.0);
                l.map(|v| v * c)
            })
            .collect();
        let (values, log_scale, _) = e2s(dec.contract_leaves(&scaled))?;
        let rescaled = ChiTable::from_values(&values, log_scale, s.clone());
        ensure(rescaled.argmax == chi.argmax, || format!("argmax moved under scaling for {s}"))?;
    }
    ensure((total - 1.0).abs() < 1e-10, || format!("chi sums to {total}"))?;
    Ok("bilinearity, coset counts, pure-error inverse, canonical forms, normalization, scale invariance; \
        randomized suites in tests/properties.rs"
        .into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 oracle decoder equivalence", oracle_equivalence),
        ("2 constructive contraction = literal summation", constructive_contraction),
        ("3 precondition necessity", precondition_necessity),
        ("4 holographic construction validity", construction_validity),
        ("5 threshold reproduction", threshold),
        ("6 complexity bound", complexity),
        ("7 statistical harness", statistical_harness),
        ("8 invariant suites", invariant_suites),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{:.1?}]", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why} [{:.1?}]", start.elapsed());
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
