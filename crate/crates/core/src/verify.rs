//! Oracle-equivalence suites behind the `verify` command.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decoder::{NetworkDecoder, NoiseModel};
use crate::error::{Error, Result};
use crate::holographic::{build_code, build_code_by_contraction, build_network, chain_network};
use crate::oracle::{exhaustive_chi, exhaustive_contract};
use crate::pauli::pauli;
use crate::stabilizer::{builtin_seven_qubit_state, builtin_six_qubit, StabilizerCode, Syndrome};
use crate::tensor::{contract, CodeTensor, LegBinding};

/// Tolerance for network-vs-oracle `χ` comparisons.
pub const CHI_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn from_result(name: &str, r: Result<String>) -> Self {
        match r {
            Ok(detail) => Self {
                name: name.into(),
                passed: true,
                detail,
            },
            Err(e) => Self {
                name: name.into(),
                passed: false,
                detail: e.to_string(),
            },
        }
    }
}

fn fail(msg: String) -> Error {
    Error::InvalidCode(msg)
}

/// Largest relative error of network decoding against the exhaustive oracle
/// over the given syndromes.
pub fn network_vs_oracle(
    network: crate::holographic::TensorNetwork,
    code: &StabilizerCode,
    p: f64,
    syndromes: &[Syndrome],
) -> Result<f64> {
    let dec = NetworkDecoder::new(network, code.clone())?;
    let noise = NoiseModel::depolarizing(code.n(), p)?;
    let mut worst = 0.0f64;
    for s in syndromes {
        let a = dec.chi(&noise, s)?;
        let b = exhaustive_chi(code, &noise, s)?;
        worst = worst.max(a.relative_error(&b));
    }
    Ok(worst)
}

pub fn all_syndromes(len: usize) -> Vec<Syndrome> {
    (0..1u64 << len).map(|v| Syndrome::from_index(len, v)).collect()
}

pub fn random_syndromes(len: usize, count: usize, seed: u64) -> Vec<Syndrome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let flags: Vec<bool> = (0..len).map(|_| rng.gen()).collect();
            Syndrome::from_bools(&flags)
        })
        .collect()
}

fn chi_suite(name: &str, network: crate::holographic::TensorNetwork, ps: &[f64], syndromes: Option<usize>) -> CheckResult {
    let r = (|| {
        let code = build_code(&network)?;
        let ss = match syndromes {
            None => all_syndromes(code.num_stabilizers()),
            Some(c) => random_syndromes(code.num_stabilizers(), c, 0x5eed),
        };
        let mut worst = 0.0f64;
        for &p in ps {
            worst = worst.max(network_vs_oracle(network.clone(), &code, p, &ss)?);
        }
        if worst > CHI_TOLERANCE {
            return Err(fail(format!("relative error {worst:e}")));
        }
        Ok(format!("{} syndromes, max relative error {worst:.2e}", ss.len()))
    })();
    CheckResult::from_result(name, r)
}

fn contraction_suite() -> CheckResult {
    let r = (|| {
        let t1 = CodeTensor::from_code(builtin_six_qubit())?;
        let t0 = CodeTensor::from_code(builtin_seven_qubit_state())?;
        for (a, b, binding) in [(&t1, &t0, LegBinding::single(5, 0)), (&t1, &t1, LegBinding::single(5, 0))] {
            let lit = exhaustive_contract(a, b, &binding)?;
            let con = contract(a, b, &binding)?;
            if lit.classes() != con.classes() {
                return Err(fail("class tables differ".into()));
            }
            let report = con.self_check();
            if !report.passed() {
                return Err(fail(report.violations.join("; ")));
            }
        }
        let eleven = contract(&t1, &t0, &LegBinding::single(5, 0))?;
        match eleven.code().distance_of(3) {
            Some(3) => Ok("T1 x T0 and T1 x T1 agree; [[11,1,3]] distance 3".into()),
            d => Err(fail(format!("[[11,1]] distance search gave {d:?}"))),
        }
    })();
    CheckResult::from_result("constructive contraction = literal summation", r)
}

fn precondition_suite() -> CheckResult {
    let r = (|| {
        let toy = StabilizerCode::new(2, vec![pauli("ZZ")], vec![pauli("XX")], vec![pauli("ZI")])?;
        let t = CodeTensor::from_code(toy)?;
        let binding = LegBinding::new(vec![0, 1], vec![0, 1]);
        match exhaustive_contract(&t, &t, &binding) {
            Err(Error::EntryExceedsOne { value, .. }) => {
                if !matches!(contract(&t, &t, &binding), Err(Error::PreconditionViolated { .. })) {
                    return Err(fail("constructive contraction accepted the binding".into()));
                }
                Ok(format!("entry {value} detected"))
            }
            other => Err(fail(format!("expected an entry >= 2, got {other:?}"))),
        }
    })();
    CheckResult::from_result("precondition negative control", r)
}

fn builder_suite() -> CheckResult {
    let r = (|| {
        for radius in 1..=3 {
            let net = build_network(radius)?;
            let fast = build_code(&net)?;
            fast.validate()?;
            let slow = build_code_by_contraction(&net)?;
            if !fast.same_stabilizer_group(&slow) {
                return Err(fail(format!("radius {radius}: builders disagree")));
            }
        }
        Ok("radius 1-3 codes valid; both builders agree".into())
    })();
    CheckResult::from_result("holographic code construction", r)
}

/// Runs every suite; quick enough for interactive use.
pub fn run_all() -> Vec<CheckResult> {
    vec![
        chi_suite("six-qubit network = oracle", build_network(1).expect("radius 1"), &[0.01, 0.1, 0.3], None),
        chi_suite("[[11,1,3]] network = oracle", chain_network(1), &[0.1], None),
        chi_suite("16-qubit chain network = oracle", chain_network(2), &[0.1], Some(200)),
        contraction_suite(),
        precondition_suite(),
        builder_suite(),
    ]
}
