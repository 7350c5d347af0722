//! Brute-force reference implementations. These share no contraction code with
//! the main paths and are only meant for small instances.

use std::collections::HashMap;

use crate::decoder::{ChiTable, NoiseModel};
use crate::error::{Error, Result};
use crate::gf2;
use crate::pauli::PauliString;
use crate::stabilizer::{ClassIndex, StabilizerCode, Syndrome};
use crate::tensor::{CodeTensor, LegBinding, DEFAULT_ENUMERATION_CAP, MAX_KEYED_LEGS};

/// Largest code for [`exhaustive_failure_rate`].
pub const FAILURE_RATE_MAX_QUBITS: usize = 8;

fn prob_of_key(noise: &NoiseModel, key: u128) -> f64 {
    (0..noise.num_qubits())
        .map(|q| noise.probs(q)[((key >> (2 * q)) & 3) as usize])
        .product()
}

fn check_cap(code: &StabilizerCode) -> Result<()> {
    if code.num_stabilizers() > DEFAULT_ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "stabilizer group walk",
            needed: code.num_stabilizers(),
            cap: DEFAULT_ENUMERATION_CAP,
        });
    }
    if code.n() > MAX_KEYED_LEGS {
        return Err(Error::CapExceeded {
            what: "base-4 index keys",
            needed: 2 * code.n(),
            cap: 2 * MAX_KEYED_LEGS,
        });
    }
    Ok(())
}

/// `χ(L, s) = Σ_S prob(E(s) S L)` by a Gray-code walk over the stabilizer group.
pub fn exhaustive_chi(code: &StabilizerCode, noise: &NoiseModel, s: &Syndrome) -> Result<ChiTable> {
    check_cap(code)?;
    if noise.num_qubits() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            found: noise.num_qubits(),
        });
    }
    let e = code.pure_error_for(s)?.key();
    let gens: Vec<u128> = code.stabilizers().iter().map(PauliString::key).collect();
    let values: Vec<f64> = (0..code.num_classes())
        .map(|c| -> Result<f64> {
            let mut cur = e ^ code.class_representative(c)?.key();
            let mut sum = prob_of_key(noise, cur);
            for step in 1u64..(1u64 << gens.len()) {
                cur ^= gens[step.trailing_zeros() as usize];
                sum += prob_of_key(noise, cur);
            }
            Ok(sum)
        })
        .collect::<Result<_>>()?;
    Ok(ChiTable::from_values(&values, 0.0, s.clone()))
}

/// Literal summation over every bound-leg value and every pair of class
/// members. Output classes are indexed with the logical qubits of `a` first,
/// and output legs are the unbound legs of `a` then of `b`.
pub fn exhaustive_contract(a: &CodeTensor, b: &CodeTensor, binding: &LegBinding) -> Result<CodeTensor> {
    binding.validate(a.n_legs(), b.n_legs())?;
    let (ca, cb) = match (a.classes(), b.classes()) {
        (Some(x), Some(y)) => (x, y),
        _ => {
            return Err(Error::CapExceeded {
                what: "coset enumeration",
                needed: a.code().num_stabilizers().max(b.code().num_stabilizers()),
                cap: DEFAULT_ENUMERATION_CAP,
            })
        }
    };
    let n_out = a.n_legs() + b.n_legs() - 2 * binding.len();
    if n_out > MAX_KEYED_LEGS {
        return Err(Error::CapExceeded {
            what: "base-4 index keys",
            needed: 2 * n_out,
            cap: 2 * MAX_KEYED_LEGS,
        });
    }
    let digit = |key: u128, q: usize| (key >> (2 * q)) & 3;
    let a_free: Vec<usize> = (0..a.n_legs()).filter(|q| !binding.left_legs.contains(q)).collect();
    let b_free: Vec<usize> = (0..b.n_legs()).filter(|q| !binding.right_legs.contains(q)).collect();
    let gather = |key: u128, legs: &[usize]| -> u128 {
        legs.iter()
            .enumerate()
            .fold(0, |acc, (i, &q)| acc | (digit(key, q) << (2 * i)))
    };
    let shift = 2 * a_free.len();

    let ka = a.k_logical();
    let mut out: Vec<Vec<u128>> = vec![Vec::new(); 1 << (2 * (ka + b.k_logical()))];
    for (la, keys_a) in ca.iter().enumerate() {
        for (lb, keys_b) in cb.iter().enumerate() {
            let mut by_bound: HashMap<u128, Vec<u128>> = HashMap::new();
            for &kb in keys_b {
                by_bound
                    .entry(gather(kb, &binding.right_legs))
                    .or_default()
                    .push(gather(kb, &b_free) << shift);
            }
            let class = la | (lb << (2 * ka));
            let mut counts: HashMap<u128, u32> = HashMap::new();
            for &ka_key in keys_a {
                let Some(partners) = by_bound.get(&gather(ka_key, &binding.left_legs)) else {
                    continue;
                };
                let left = gather(ka_key, &a_free);
                for &right in partners {
                    *counts.entry(left | right).or_insert(0) += 1;
                }
            }
            if let Some((&key, &value)) = counts.iter().filter(|(_, &v)| v >= 2).min_by_key(|(&k, _)| k) {
                return Err(Error::EntryExceedsOne {
                    class,
                    index: PauliString::from_key(n_out, key).to_string(),
                    value,
                });
            }
            out[class].extend(counts.into_keys());
        }
    }
    let code = code_from_class_sets(n_out, ka + b.k_logical(), &out)?;
    Ok(CodeTensor::from_parts(code, out))
}

/// Generators read off the class sets: a basis of class `I` and one member of
/// each single-qubit logical class.
fn code_from_class_sets(n: usize, k: usize, classes: &[Vec<u128>]) -> Result<StabilizerCode> {
    let mut rows: Vec<Vec<u64>> = classes[0]
        .iter()
        .map(|&key| PauliString::from_key(n, key).to_row())
        .collect();
    let rank = gf2::rref(&mut rows, None).len();
    let stabilizers: Vec<PauliString> = rows[..rank]
        .iter()
        .map(|row| PauliString::from_row(n, row))
        .collect();
    let member = |class: ClassIndex| -> Result<PauliString> {
        classes[class]
            .first()
            .map(|&key| PauliString::from_key(n, key))
            .ok_or_else(|| Error::InvalidCode(format!("contracted class {class} is empty")))
    };
    let logical_x = (0..k).map(|a| member(1 << (2 * a))).collect::<Result<_>>()?;
    let logical_z = (0..k).map(|a| member(2 << (2 * a))).collect::<Result<_>>()?;
    StabilizerCode::new(n, stabilizers, logical_x, logical_z)
}

/// Failure probability of maximum-likelihood decoding, summed over all `4^n` errors.
pub fn exhaustive_failure_rate(code: &StabilizerCode, noise: &NoiseModel) -> Result<f64> {
    if code.n() > FAILURE_RATE_MAX_QUBITS {
        return Err(Error::CapExceeded {
            what: "error enumeration",
            needed: 2 * code.n(),
            cap: 2 * FAILURE_RATE_MAX_QUBITS,
        });
    }
    let mut best: HashMap<Syndrome, ClassIndex> = HashMap::new();
    let mut failure = 0.0;
    for key in 0..(1u128 << (2 * code.n())) {
        let e = PauliString::from_key(code.n(), key);
        let s = code.syndrome_of(&e)?;
        let argmax = match best.get(&s) {
            Some(&c) => c,
            None => {
                let c = exhaustive_chi(code, noise, &s)?.argmax;
                best.insert(s.clone(), c);
                c
            }
        };
        let residual = e.multiply(&code.pure_error_for(&s)?)?;
        if code.logical_class_of(&residual)? != Some(argmax) {
            failure += prob_of_key(noise, key);
        }
    }
    Ok(failure)
}
