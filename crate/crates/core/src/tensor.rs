//! Code tensors `T(L)`: indicator functions of the logical cosets `S·L`, and
//! contraction of two code tensors into the tensor of a larger stabilizer code.
//!
//! Index strings are stored as base-4 keys `Σ g_i 4^i`. With σ-codes
//! I = 0, X = 1, Y = 2, Z = 3 the phase-free product of two strings is the XOR
//! of their keys, which is what the enumeration below relies on.

use crate::error::{Error, Result};
use crate::gf2;
use crate::pauli::PauliString;
use crate::stabilizer::{ClassIndex, LegCanonical, StabilizerCode};

/// Largest `n - k` for which class sets are enumerated.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

/// Largest leg count for base-4 keys.
pub const MAX_KEYED_LEGS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegBinding {
    pub left_legs: Vec<usize>,
    pub right_legs: Vec<usize>,
}

impl LegBinding {
    pub fn new(left_legs: Vec<usize>, right_legs: Vec<usize>) -> Self {
        Self {
            left_legs,
            right_legs,
        }
    }

    pub fn single(left: usize, right: usize) -> Self {
        Self::new(vec![left], vec![right])
    }

    pub fn len(&self) -> usize {
        self.left_legs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left_legs.is_empty()
    }

    pub(crate) fn validate(&self, n_left: usize, n_right: usize) -> Result<()> {
        if self.left_legs.len() != self.right_legs.len() {
            return Err(Error::InvalidBinding(format!(
                "{} left legs vs {} right legs",
                self.left_legs.len(),
                self.right_legs.len()
            )));
        }
        for (legs, n) in [(&self.left_legs, n_left), (&self.right_legs, n_right)] {
            for (i, &q) in legs.iter().enumerate() {
                if q >= n {
                    return Err(Error::QubitOutOfRange { qubit: q, n });
                }
                if legs[..i].contains(&q) {
                    return Err(Error::InvalidBinding(format!("leg {q} bound twice")));
                }
            }
        }
        Ok(())
    }
}

/// Sorted base-4 keys of every member of each logical class.
pub type ClassTable = Vec<Vec<u128>>;

/// The tensors `T(L)` of a stabilizer code.
///
/// Class sets are materialized only when `n - k` is within the enumeration
/// cap; larger codes answer [`CodeTensor::entry`] from their generators.
#[derive(Clone, Debug)]
pub struct CodeTensor {
    code: StabilizerCode,
    classes: Option<ClassTable>,
}

impl CodeTensor {
    pub fn from_code(code: StabilizerCode) -> Result<Self> {
        Self::from_code_with_cap(code, DEFAULT_ENUMERATION_CAP)
    }

    pub fn from_code_with_cap(code: StabilizerCode, cap: usize) -> Result<Self> {
        let classes = enumerate_classes(&code, cap)?;
        Ok(Self {
            code,
            classes: Some(classes),
        })
    }

    /// Tensor without materialized class sets.
    pub fn lazy(code: StabilizerCode) -> Self {
        Self {
            code,
            classes: None,
        }
    }

    /// Enumerates when within the default cap, otherwise stays lazy.
    pub fn auto(code: StabilizerCode) -> Self {
        match enumerate_classes(&code, DEFAULT_ENUMERATION_CAP) {
            Ok(classes) => Self {
                code,
                classes: Some(classes),
            },
            Err(_) => Self::lazy(code),
        }
    }

    /// Pairs a code with externally computed class sets (sorted on entry).
    pub fn from_parts(code: StabilizerCode, mut classes: ClassTable) -> Self {
        for c in &mut classes {
            c.sort_unstable();
        }
        Self {
            code,
            classes: Some(classes),
        }
    }

    pub fn n_legs(&self) -> usize {
        self.code.n()
    }

    pub fn k_logical(&self) -> usize {
        self.code.k()
    }

    pub fn code(&self) -> &StabilizerCode {
        &self.code
    }

    pub fn classes(&self) -> Option<&ClassTable> {
        self.classes.as_ref()
    }

    pub fn into_code(self) -> StabilizerCode {
        self.code
    }

    /// `T(L)_g` as 0 or 1.
    pub fn entry(&self, class: ClassIndex, g: &[u8]) -> Result<u8> {
        if g.len() != self.n_legs() {
            return Err(Error::LengthMismatch {
                expected: self.n_legs(),
                found: g.len(),
            });
        }
        self.entry_pauli(class, &PauliString::from_indices(g)?)
    }

    pub fn entry_pauli(&self, class: ClassIndex, g: &PauliString) -> Result<u8> {
        if class >= self.code.num_classes() {
            return Err(Error::BadClass(class));
        }
        if g.num_qubits() != self.n_legs() {
            return Err(Error::LengthMismatch {
                expected: self.n_legs(),
                found: g.num_qubits(),
            });
        }
        let hit = match &self.classes {
            Some(classes) => classes[class].binary_search(&g.key()).is_ok(),
            None => self.code.logical_class_of(g)? == Some(class),
        };
        Ok(hit as u8)
    }

    /// Members of one class as Pauli strings; needs enumerated classes.
    pub fn members(&self, class: ClassIndex) -> Option<impl Iterator<Item = PauliString> + '_> {
        let n = self.n_legs();
        self.classes
            .as_ref()
            .and_then(|c| c.get(class))
            .map(move |keys| keys.iter().map(move |&k| PauliString::from_key(n, k)))
    }

    /// Relabels legs: new leg `i` is old leg `perm[i]`.
    pub fn permute_legs(&self, perm: &[usize]) -> Result<CodeTensor> {
        let code = self.code.permute_qubits(perm)?;
        Ok(match &self.classes {
            Some(classes) => {
                let n = self.n_legs();
                let classes = classes
                    .iter()
                    .map(|keys| {
                        keys.iter()
                            .map(|&k| PauliString::from_key(n, k).permuted(perm).map(|p| p.key()))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<ClassTable>>()?;
                Self::from_parts(code, classes)
            }
            None => Self::lazy(code),
        })
    }

    /// Checks the defining properties of a code tensor directly on its class
    /// sets: 0/1 entries with the right counts, class `I` an abelian group,
    /// every class a coset of it with the correct product and commutation
    /// structure, and agreement with the attached generators.
    pub fn self_check(&self) -> SelfCheckReport {
        let mut report = SelfCheckReport::default();
        let owned;
        let classes = match &self.classes {
            Some(c) => c,
            None => match enumerate_classes(&self.code, DEFAULT_ENUMERATION_CAP) {
                Ok(c) => {
                    owned = c;
                    &owned
                }
                Err(e) => {
                    report.violations.push(format!("cannot enumerate classes: {e}"));
                    return report;
                }
            },
        };
        check_class_table(&self.code, classes, &mut report);
        report
    }
}

#[derive(Clone, Debug, Default)]
pub struct SelfCheckReport {
    pub violations: Vec<String>,
}

impl SelfCheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_class_table(code: &StabilizerCode, classes: &ClassTable, report: &mut SelfCheckReport) {
    let n = code.n();
    let k = code.k();
    let r = code.num_stabilizers();
    let v = &mut report.violations;
    if classes.len() != 1 << (2 * k) {
        v.push(format!("expected {} classes, found {}", 1 << (2 * k), classes.len()));
        return;
    }
    let size = 1usize << r;
    for (c, keys) in classes.iter().enumerate() {
        if keys.len() != size {
            v.push(format!("class {c} has {} members, expected {size}", keys.len()));
        }
        if keys.windows(2).any(|w| w[0] >= w[1]) {
            v.push(format!("class {c} has repeated entries (entry >= 2)"));
        }
    }
    let mut all: Vec<u128> = classes.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    let total: usize = classes.iter().map(Vec::len).sum();
    if all.len() != total {
        v.push("class sets overlap".into());
    }
    if !v.is_empty() {
        return;
    }

    let stab = &classes[0];
    if stab.binary_search(&0).is_err() {
        v.push("class I lacks the identity".into());
    }
    let mut rows: Vec<Vec<u64>> = stab
        .iter()
        .map(|&key| PauliString::from_key(n, key).to_row())
        .collect();
    let pivots = gf2::rref(&mut rows, None);
    if pivots.len() >= usize::BITS as usize || (1usize << pivots.len()) != stab.len() {
        v.push(format!(
            "class I is not a group: rank {} for {} members",
            pivots.len(),
            stab.len()
        ));
        return;
    }
    let basis: Vec<PauliString> = rows[..pivots.len()]
        .iter()
        .map(|row| PauliString::from_row(n, row))
        .collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if basis[i].anticommutes_with(&basis[j]) {
                v.push("class I is not abelian".into());
                return;
            }
        }
    }

    let reps: Vec<PauliString> = classes
        .iter()
        .map(|keys| PauliString::from_key(n, keys[0]))
        .collect();
    for (c, keys) in classes.iter().enumerate() {
        let rep_key = keys[0];
        let mut coset: Vec<u128> = stab.iter().map(|s| s ^ rep_key).collect();
        coset.sort_unstable();
        if &coset != keys {
            v.push(format!("class {c} is not a coset of class I"));
        }
        if basis.iter().any(|b| b.anticommutes_with(&reps[c])) {
            v.push(format!("class {c} is not in the normalizer"));
        }
        if code.class_pattern(&reps[c]) != c {
            v.push(format!("class {c} disagrees with the code's logical operators"));
        }
    }
    let labels: Vec<PauliString> = (0..classes.len())
        .map(|c| crate::stabilizer::class_label(k, c))
        .collect();
    for a in 0..classes.len() {
        for b in 0..classes.len() {
            let prod = reps[a].key() ^ reps[b].key();
            if classes[a ^ b].binary_search(&prod).is_err() {
                v.push(format!("class({a})·class({b}) is not inside class({})", a ^ b));
            }
            if reps[a].anticommutes_with(&reps[b]) != labels[a].anticommutes_with(&labels[b]) {
                v.push(format!("classes {a} and {b} have the wrong commutation"));
            }
        }
    }
}

/// Base-4 keys of every stabilizer-group element, built by doubling.
pub(crate) fn stabilizer_group_keys(code: &StabilizerCode) -> Vec<u128> {
    let mut keys = Vec::with_capacity(1 << code.num_stabilizers());
    keys.push(0u128);
    for g in code.stabilizers() {
        let gk = g.key();
        for i in 0..keys.len() {
            keys.push(keys[i] ^ gk);
        }
    }
    keys
}

fn enumerate_classes(code: &StabilizerCode, cap: usize) -> Result<ClassTable> {
    if code.num_stabilizers() > cap {
        return Err(Error::CapExceeded {
            what: "coset enumeration",
            needed: code.num_stabilizers(),
            cap,
        });
    }
    if code.n() > MAX_KEYED_LEGS {
        return Err(Error::CapExceeded {
            what: "base-4 index keys",
            needed: 2 * code.n(),
            cap: 2 * MAX_KEYED_LEGS,
        });
    }
    let group = stabilizer_group_keys(code);
    (0..code.num_classes())
        .map(|c| {
            let rep = code.class_representative(c)?.key();
            let mut keys: Vec<u128> = group.iter().map(|s| s ^ rep).collect();
            keys.sort_unstable();
            Ok(keys)
        })
        .collect()
}

/// Contracts the bound legs of two code tensors.
///
/// The output leg order is: unbound legs of `a` in their original order, then
/// unbound legs of `b`. Logical qubits of `a` come first. Class sets are
/// enumerated when the result is small enough.
pub fn contract(a: &CodeTensor, b: &CodeTensor, binding: &LegBinding) -> Result<CodeTensor> {
    let code = contract_codes(a.code(), b.code(), binding)?;
    Ok(CodeTensor::auto(code))
}

/// Generators, logical representatives and pure errors of the contracted code.
///
/// One side must distinguish every Pauli error on its bound legs (`a` is tried
/// first). That side is put in leg-canonical form; each generator `S'_j` of the
/// other side survives as `P_j ⊗ S'_j`, where `P_j` is the unique product of
/// canonical generators agreeing with `S'_j` on the bound legs, and the
/// canonical-side generators that are trivial on the bound legs survive as
/// `S_i ⊗ 1`. Logicals and pure errors are lifted the same way.
pub fn contract_codes(
    a: &StabilizerCode,
    b: &StabilizerCode,
    binding: &LegBinding,
) -> Result<StabilizerCode> {
    binding.validate(a.n(), b.n())?;
    let a_canonical = a.distinguishes_errors_on(&binding.left_legs)?;
    if !a_canonical && !b.distinguishes_errors_on(&binding.right_legs)? {
        return Err(Error::PreconditionViolated {
            legs: binding.left_legs.clone(),
        });
    }
    let (dist, dist_legs, other, other_legs) = if a_canonical {
        (a, &binding.left_legs, b, &binding.right_legs)
    } else {
        (b, &binding.right_legs, a, &binding.left_legs)
    };
    let canon = dist.canonicalize_on_legs(dist_legs)?;
    let lc = LegCanonical::from_code(&canon, dist_legs);
    let l = binding.len();

    let a_free: Vec<usize> = (0..a.n()).filter(|q| !binding.left_legs.contains(q)).collect();
    let b_free: Vec<usize> = (0..b.n()).filter(|q| !binding.right_legs.contains(q)).collect();
    let assemble = |pa: &PauliString, pb: &PauliString| -> PauliString {
        pa.restrict(&a_free)
            .expect("free legs in range")
            .concat(&pb.restrict(&b_free).expect("free legs in range"))
    };
    let lift_other = |o: &PauliString| -> PauliString {
        let partner = lc.matching(&o.restrict(other_legs).expect("bound legs in range"));
        if a_canonical {
            assemble(&partner, o)
        } else {
            assemble(o, &partner)
        }
    };
    let id_other = PauliString::identity(other.n());
    let lift_dist = |d: &PauliString| -> PauliString {
        if a_canonical {
            assemble(d, &id_other)
        } else {
            assemble(&id_other, d)
        }
    };

    let dist_gens: Vec<_> = canon.stabilizers()[2 * l..].iter().map(&lift_dist).collect();
    let dist_pure: Vec<_> = canon.pure_errors()[2 * l..].iter().map(&lift_dist).collect();
    let other_gens: Vec<_> = other.stabilizers().iter().map(&lift_other).collect();
    let other_pure: Vec<_> = other.pure_errors().iter().map(&lift_other).collect();
    let dist_lx: Vec<_> = canon.logical_x().iter().map(&lift_dist).collect();
    let dist_lz: Vec<_> = canon.logical_z().iter().map(&lift_dist).collect();
    let other_lx: Vec<_> = other.logical_x().iter().map(&lift_other).collect();
    let other_lz: Vec<_> = other.logical_z().iter().map(&lift_other).collect();

    let join = |first: Vec<PauliString>, second: Vec<PauliString>| {
        let mut v = first;
        v.extend(second);
        v
    };
    let (stabs, pure, lx, lz) = if a_canonical {
        (
            join(dist_gens, other_gens),
            join(dist_pure, other_pure),
            join(dist_lx, other_lx),
            join(dist_lz, other_lz),
        )
    } else {
        (
            join(other_gens, dist_gens),
            join(other_pure, dist_pure),
            join(other_lx, dist_lx),
            join(other_lz, dist_lz),
        )
    };
    let n = a.n() + b.n() - 2 * l;
    let mut code = StabilizerCode::unchecked(n, stabs, lx, lz, pure)?;
    code.reduce_pure_errors();
    debug_assert!(code.validate().is_ok(), "{:?}", code.validate());
    Ok(code)
}
