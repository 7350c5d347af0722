//! Stabilizer codes as generator sets: syndromes, pure errors, logical classes,
//! and the leg-canonical generator form used when contracting code tensors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2;
use crate::pauli::{words_for, PauliOp, PauliString};

/// Logical class index: `Σ_α (x_α + 2 z_α) 4^α` for the class label
/// `L = ⊗_α σ(x_α, z_α)`. For one logical qubit this orders the classes
/// I = 0, X = 1, Z = 2, Y = 3.
pub type ClassIndex = usize;

/// Stabilizer measurement outcomes; bit `i` set means `s_i = -1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Syndrome {
    len: usize,
    bits: Vec<u64>,
}

impl Syndrome {
    pub fn trivial(len: usize) -> Self {
        Self {
            len,
            bits: vec![0; words_for(len)],
        }
    }

    pub fn from_bools(flags: &[bool]) -> Self {
        let mut s = Self::trivial(flags.len());
        for (i, &f) in flags.iter().enumerate() {
            s.set(i, f);
        }
        s
    }

    /// Syndrome whose bits are the low `len` bits of `value`.
    pub fn from_index(len: usize, value: u64) -> Self {
        let mut s = Self::trivial(len);
        for i in 0..len.min(64) {
            s.set(i, (value >> i) & 1 == 1);
        }
        s
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.bits[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, flipped: bool) {
        assert!(i < self.len);
        let m = 1u64 << (i % 64);
        if flipped {
            self.bits[i / 64] |= m;
        } else {
            self.bits[i / 64] &= !m;
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn flipped(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Lowercase hex, most significant digit first; bit 0 is `s_1`.
    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4).max(1);
        let mut out = String::from("0x");
        for d in (0..digits).rev() {
            let mut v = 0u8;
            for b in 0..4 {
                let i = 4 * d + b;
                if i < self.len && self.get(i) {
                    v |= 1 << b;
                }
            }
            out.push(char::from_digit(v as u32, 16).unwrap());
        }
        out
    }

    /// Parses a `+`/`-` string (one character per generator) or `0x` hex.
    /// Hex input needs the expected length.
    pub fn parse(text: &str, len: usize) -> Result<Self> {
        let text = text.trim();
        if let Some(hex) = text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
            let mut s = Self::trivial(len);
            for (d, c) in hex.chars().rev().enumerate() {
                let v = c
                    .to_digit(16)
                    .ok_or_else(|| Error::Parse(format!("bad hex digit {c:?}")))?;
                for b in 0..4 {
                    if (v >> b) & 1 == 1 {
                        let i = 4 * d + b;
                        if i >= len {
                            return Err(Error::Parse(format!(
                                "hex syndrome sets bit {i} beyond length {len}"
                            )));
                        }
                        s.set(i, true);
                    }
                }
            }
            return Ok(s);
        }
        let s: Syndrome = text.parse()?;
        if s.len != len {
            return Err(Error::LengthMismatch {
                expected: len,
                found: s.len,
            });
        }
        Ok(s)
    }
}

impl FromStr for Syndrome {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let flags = text
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c {
                '+' => Ok(false),
                '-' => Ok(true),
                other => Err(Error::Parse(format!("bad syndrome character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_bools(&flags))
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "-" } else { "+" })?;
        }
        Ok(())
    }
}

impl Serialize for Syndrome {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Syndrome {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Syndrome({self})")
    }
}

/// A stabilizer code with its generators, logical representatives and pure errors.
///
/// Invariants (checked by [`StabilizerCode::validate`]):
/// stabilizers commute pairwise and are independent; logicals commute with the
/// stabilizers and satisfy `X_α Z_β = (-1)^{δ_αβ} Z_β X_α`; pure error `E_i`
/// anticommutes with `S_j` iff `i == j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerCode {
    n: usize,
    k: usize,
    stabilizers: Vec<PauliString>,
    logical_x: Vec<PauliString>,
    logical_z: Vec<PauliString>,
    pure_errors: Vec<PauliString>,
}

impl StabilizerCode {
    /// Validated construction; pure errors are solved for.
    pub fn new(
        n: usize,
        stabilizers: Vec<PauliString>,
        logical_x: Vec<PauliString>,
        logical_z: Vec<PauliString>,
    ) -> Result<Self> {
        let mut code = Self::unchecked(n, stabilizers, logical_x, logical_z, Vec::new())?;
        code.check_stabilizers_and_logicals()?;
        code.pure_errors = solve_pure_errors(n, &code.stabilizers)?;
        code.reduce_pure_errors();
        Ok(code)
    }

    /// Validated construction with caller-supplied pure errors.
    pub fn with_pure_errors(
        n: usize,
        stabilizers: Vec<PauliString>,
        logical_x: Vec<PauliString>,
        logical_z: Vec<PauliString>,
        pure_errors: Vec<PauliString>,
    ) -> Result<Self> {
        let code = Self::unchecked(n, stabilizers, logical_x, logical_z, pure_errors)?;
        code.validate()?;
        Ok(code)
    }

    /// Shape checks only. Used where the algebra guarantees the invariants.
    pub(crate) fn unchecked(
        n: usize,
        stabilizers: Vec<PauliString>,
        logical_x: Vec<PauliString>,
        logical_z: Vec<PauliString>,
        pure_errors: Vec<PauliString>,
    ) -> Result<Self> {
        if stabilizers.len() > n {
            return Err(Error::InvalidCode(format!(
                "{} stabilizers on {n} qubits",
                stabilizers.len()
            )));
        }
        let k = n - stabilizers.len();
        if logical_x.len() != k || logical_z.len() != k {
            return Err(Error::InvalidCode(format!(
                "expected {k} logical X and Z representatives, got {} and {}",
                logical_x.len(),
                logical_z.len()
            )));
        }
        if !pure_errors.is_empty() && pure_errors.len() != stabilizers.len() {
            return Err(Error::InvalidCode(format!(
                "expected {} pure errors, got {}",
                stabilizers.len(),
                pure_errors.len()
            )));
        }
        for p in stabilizers
            .iter()
            .chain(&logical_x)
            .chain(&logical_z)
            .chain(&pure_errors)
        {
            if p.num_qubits() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: p.num_qubits(),
                });
            }
        }
        Ok(Self {
            n,
            k,
            stabilizers,
            logical_x,
            logical_z,
            pure_errors,
        })
    }

    fn check_stabilizers_and_logicals(&self) -> Result<()> {
        let r = self.stabilizers.len();
        for i in 0..r {
            for j in i + 1..r {
                if self.stabilizers[i].anticommutes_with(&self.stabilizers[j]) {
                    return Err(Error::InvalidCode(format!(
                        "stabilizers {i} and {j} anticommute"
                    )));
                }
            }
        }
        let rows: Vec<_> = self.stabilizers.iter().map(|s| s.to_row()).collect();
        let rank = gf2::rank(&rows);
        if rank != r {
            return Err(Error::DependentStabilizers { rank, expected: r });
        }
        for (a, l) in self.logical_x.iter().chain(&self.logical_z).enumerate() {
            if let Some(j) = self.stabilizers.iter().position(|s| s.anticommutes_with(l)) {
                return Err(Error::InvalidCode(format!(
                    "logical {a} anticommutes with stabilizer {j}"
                )));
            }
        }
        for a in 0..self.k {
            for b in 0..self.k {
                let xz = self.logical_x[a].anticommutes_with(&self.logical_z[b]);
                if xz != (a == b) {
                    return Err(Error::InvalidCode(format!(
                        "logical X{a} / Z{b} commutation is wrong"
                    )));
                }
                if b > a
                    && (self.logical_x[a].anticommutes_with(&self.logical_x[b])
                        || self.logical_z[a].anticommutes_with(&self.logical_z[b]))
                {
                    return Err(Error::InvalidCode(format!(
                        "logicals {a} and {b} of the same type anticommute"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Checks every construction invariant.
    pub fn validate(&self) -> Result<()> {
        self.check_stabilizers_and_logicals()?;
        if self.pure_errors.len() != self.stabilizers.len() {
            return Err(Error::InvalidCode("missing pure errors".into()));
        }
        for (i, e) in self.pure_errors.iter().enumerate() {
            for (j, s) in self.stabilizers.iter().enumerate() {
                if e.anticommutes_with(s) != (i == j) {
                    return Err(Error::InvalidCode(format!(
                        "pure error {i} vs stabilizer {j} has the wrong commutation"
                    )));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    /// `n - k`.
    #[inline]
    pub fn num_stabilizers(&self) -> usize {
        self.stabilizers.len()
    }

    pub fn stabilizers(&self) -> &[PauliString] {
        &self.stabilizers
    }

    pub fn logical_x(&self) -> &[PauliString] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[PauliString] {
        &self.logical_z
    }

    pub fn pure_errors(&self) -> &[PauliString] {
        &self.pure_errors
    }

    /// `4^k`.
    pub fn num_classes(&self) -> usize {
        1usize << (2 * self.k)
    }

    pub fn syndrome_of(&self, e: &PauliString) -> Result<Syndrome> {
        if e.num_qubits() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: e.num_qubits(),
            });
        }
        Ok(self.syndrome_unchecked(e))
    }

    pub(crate) fn syndrome_unchecked(&self, e: &PauliString) -> Syndrome {
        let mut s = Syndrome::trivial(self.stabilizers.len());
        for (i, st) in self.stabilizers.iter().enumerate() {
            if st.anticommutes_with(e) {
                s.set(i, true);
            }
        }
        s
    }

    /// `E(s)`: product of the pure errors `E_i` with `s_i = -1`.
    pub fn pure_error_for(&self, s: &Syndrome) -> Result<PauliString> {
        if s.len() != self.stabilizers.len() {
            return Err(Error::LengthMismatch {
                expected: self.stabilizers.len(),
                found: s.len(),
            });
        }
        let mut e = PauliString::identity(self.n);
        for i in s.flipped() {
            e.mul_assign(&self.pure_errors[i]);
        }
        Ok(e)
    }

    /// Class of `op` if it lies in the normalizer, `None` otherwise.
    pub fn logical_class_of(&self, op: &PauliString) -> Result<Option<ClassIndex>> {
        if op.num_qubits() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: op.num_qubits(),
            });
        }
        if self.stabilizers.iter().any(|s| s.anticommutes_with(op)) {
            return Ok(None);
        }
        Ok(Some(self.class_pattern(op)))
    }

    /// Class index from commutation with the logical representatives alone.
    pub(crate) fn class_pattern(&self, op: &PauliString) -> ClassIndex {
        let mut c = 0;
        for a in 0..self.k {
            let x = self.logical_z[a].anticommutes_with(op) as usize;
            let z = self.logical_x[a].anticommutes_with(op) as usize;
            c |= (x | (z << 1)) << (2 * a);
        }
        c
    }

    /// Length-`k` label of a class index.
    pub fn class_label(&self, class: ClassIndex) -> Result<PauliString> {
        if class >= self.num_classes() {
            return Err(Error::BadClass(class));
        }
        Ok(class_label(self.k, class))
    }

    /// `∏ X_α^{x_α} Z_α^{z_α}` for the class label.
    pub fn class_representative(&self, class: ClassIndex) -> Result<PauliString> {
        if class >= self.num_classes() {
            return Err(Error::BadClass(class));
        }
        let mut rep = PauliString::identity(self.n);
        for a in 0..self.k {
            let bits = (class >> (2 * a)) & 3;
            if bits & 1 == 1 {
                rep.mul_assign(&self.logical_x[a]);
            }
            if bits & 2 == 2 {
                rep.mul_assign(&self.logical_z[a]);
            }
        }
        Ok(rep)
    }

    fn check_legs(&self, legs: &[usize]) -> Result<()> {
        for (i, &q) in legs.iter().enumerate() {
            if q >= self.n {
                return Err(Error::QubitOutOfRange { qubit: q, n: self.n });
            }
            if legs[..i].contains(&q) {
                return Err(Error::InvalidBinding(format!("leg {q} repeated")));
            }
        }
        Ok(())
    }

    /// True iff every nontrivial Pauli supported on `legs` has a nontrivial syndrome.
    pub fn distinguishes_errors_on(&self, legs: &[usize]) -> Result<bool> {
        self.check_legs(legs)?;
        let l = legs.len();
        for v in 1..(1u64 << (2 * l)) {
            let mut e = PauliString::identity(self.n);
            for (j, &q) in legs.iter().enumerate() {
                e.set(q, PauliOp::from_code(((v >> (2 * j)) & 3) as u8)?);
            }
            if self.stabilizers.iter().all(|s| !s.anticommutes_with(&e)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equivalent generator set in leg-canonical form.
    ///
    /// For leg `j = legs[t]` the generators `2t` and `2t+1` act as `X` and `Z`
    /// on leg `j` and as identity on the other listed legs; every later
    /// generator is the identity on all listed legs. Logical representatives
    /// are multiplied by stabilizers so they act trivially on the legs, and the
    /// pure errors of the canonical pairs are the single-qubit `Z_j`, `X_j`.
    pub fn canonicalize_on_legs(&self, legs: &[usize]) -> Result<StabilizerCode> {
        self.check_legs(legs)?;
        if legs.is_empty() {
            return Ok(self.clone());
        }
        let mut gens = self.stabilizers.clone();
        for (t, &leg) in legs.iter().enumerate() {
            for (half, probe) in [(0, PauliOp::Z), (1, PauliOp::X)] {
                let slot = 2 * t + half;
                let e = PauliString::single(self.n, leg, probe);
                let Some(p) = (slot..gens.len()).find(|&i| gens[i].anticommutes_with(&e)) else {
                    return Err(Error::PreconditionViolated {
                        legs: legs.to_vec(),
                    });
                };
                let pivot = gens.remove(p);
                gens.insert(slot, pivot);
                let pivot = gens[slot].clone();
                for (i, g) in gens.iter_mut().enumerate() {
                    if i != slot && g.anticommutes_with(&e) {
                        g.mul_assign(&pivot);
                    }
                }
            }
        }
        let canon = LegCanonical {
            legs: legs.to_vec(),
            gens: gens[..2 * legs.len()].to_vec(),
        };
        let logical_x: Vec<_> = self.logical_x.iter().map(|l| canon.clean(l)).collect();
        let logical_z: Vec<_> = self.logical_z.iter().map(|l| canon.clean(l)).collect();

        let mut pure_errors = solve_pure_errors(self.n, &gens)?;
        for (t, &leg) in legs.iter().enumerate() {
            pure_errors[2 * t] = PauliString::single(self.n, leg, PauliOp::Z);
            pure_errors[2 * t + 1] = PauliString::single(self.n, leg, PauliOp::X);
        }
        for e in pure_errors.iter_mut().skip(2 * legs.len()) {
            *e = canon.clean(e);
        }
        let mut out = Self::unchecked(self.n, gens, logical_x, logical_z, pure_errors)?;
        out.reduce_pure_errors();
        debug_assert!(out.validate().is_ok());
        Ok(out)
    }

    /// Multiplies pure errors by logicals so each commutes with every logical
    /// representative. Syndromes are unaffected.
    pub(crate) fn reduce_pure_errors(&mut self) {
        for e in &mut self.pure_errors {
            for a in 0..self.k {
                if e.anticommutes_with(&self.logical_x[a]) {
                    e.mul_assign(&self.logical_z[a]);
                }
                if e.anticommutes_with(&self.logical_z[a]) {
                    e.mul_assign(&self.logical_x[a]);
                }
            }
        }
    }

    /// Minimum weight of a nontrivial logical operator, searched up to
    /// `max_weight`; `None` when none exists at or below it.
    pub fn distance_of(&self, max_weight: usize) -> Option<usize> {
        if self.k == 0 {
            return None;
        }
        let mut positions = Vec::new();
        (1..=max_weight.min(self.n)).find(|&w| self.has_logical_of_weight(w, 0, &mut positions))
    }

    fn has_logical_of_weight(&self, w: usize, start: usize, positions: &mut Vec<usize>) -> bool {
        if positions.len() == w {
            let mut ops = vec![0u8; w];
            loop {
                let mut p = PauliString::identity(self.n);
                for (&q, &o) in positions.iter().zip(&ops) {
                    p.set(q, PauliOp::from_code(o + 1).unwrap());
                }
                if self.stabilizers.iter().all(|s| !s.anticommutes_with(&p))
                    && self.class_pattern(&p) != 0
                {
                    return true;
                }
                // next assignment in {X,Y,Z}^w
                let mut i = 0;
                while i < w && ops[i] == 2 {
                    ops[i] = 0;
                    i += 1;
                }
                if i == w {
                    return false;
                }
                ops[i] += 1;
            }
        }
        for q in start..self.n {
            positions.push(q);
            let found = self.has_logical_of_weight(w, q + 1, positions);
            positions.pop();
            if found {
                return true;
            }
        }
        false
    }

    /// Relabels qubits: new qubit `i` is old qubit `perm[i]`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<StabilizerCode> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: perm.len(),
            });
        }
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidBinding(format!("{perm:?} is not a permutation")));
            }
        }
        let map = |v: &[PauliString]| -> Result<Vec<PauliString>> {
            v.iter().map(|p| p.permuted(perm)).collect()
        };
        Self::unchecked(
            self.n,
            map(&self.stabilizers)?,
            map(&self.logical_x)?,
            map(&self.logical_z)?,
            map(&self.pure_errors)?,
        )
    }

    /// True iff both generator sets span the same stabilizer group.
    pub fn same_stabilizer_group(&self, other: &StabilizerCode) -> bool {
        if self.n != other.n || self.stabilizers.len() != other.stabilizers.len() {
            return false;
        }
        let mut rows: Vec<_> = self.stabilizers.iter().map(|s| s.to_row()).collect();
        let r = rows.len();
        let pivots = gf2::rref(&mut rows, None);
        rows.truncate(pivots.len());
        pivots.len() == r
            && other
                .stabilizers
                .iter()
                .all(|s| gf2::reduce(&rows, &pivots, &s.to_row()).iter().all(|&w| w == 0))
    }

    pub fn to_description(&self) -> CodeDescription {
        CodeDescription {
            n: self.n,
            k: self.k,
            stabilizers: self.stabilizers.clone(),
            logical_x: self.logical_x.clone(),
            logical_z: self.logical_z.clone(),
            pure_errors: Some(self.pure_errors.clone()),
        }
    }

    pub fn from_description(d: CodeDescription) -> Result<Self> {
        let code = match d.pure_errors {
            Some(pe) if !pe.is_empty() || d.stabilizers.is_empty() => {
                Self::with_pure_errors(d.n, d.stabilizers, d.logical_x, d.logical_z, pe)?
            }
            _ => Self::new(d.n, d.stabilizers, d.logical_x, d.logical_z)?,
        };
        if code.k != d.k {
            return Err(Error::InvalidCode(format!(
                "declared k = {} but generators give k = {}",
                d.k, code.k
            )));
        }
        Ok(code)
    }
}

/// JSON form of a code; pure errors are recomputed when absent.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodeDescription {
    pub n: usize,
    pub k: usize,
    pub stabilizers: Vec<PauliString>,
    pub logical_x: Vec<PauliString>,
    pub logical_z: Vec<PauliString>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pure_errors: Option<Vec<PauliString>>,
}

pub(crate) fn class_label(k: usize, class: ClassIndex) -> PauliString {
    let mut label = PauliString::identity(k);
    for a in 0..k {
        let bits = (class >> (2 * a)) & 3;
        label.set(a, PauliOp::from_bits(bits & 1 == 1, bits & 2 == 2));
    }
    label
}

/// Class index of a length-`k` label.
pub fn class_index_of_label(label: &PauliString) -> ClassIndex {
    (0..label.num_qubits())
        .map(|a| {
            let (x, z) = label.get(a).bits();
            ((x as usize) | ((z as usize) << 1)) << (2 * a)
        })
        .sum()
}

/// The leg-canonical generators `C_{2t}` (X on `legs[t]`) and `C_{2t+1}`
/// (Z on `legs[t]`) of a canonicalized code.
#[derive(Clone, Debug)]
pub(crate) struct LegCanonical {
    pub legs: Vec<usize>,
    pub gens: Vec<PauliString>,
}

impl LegCanonical {
    pub fn from_code(code: &StabilizerCode, legs: &[usize]) -> Self {
        Self {
            legs: legs.to_vec(),
            gens: code.stabilizers[..2 * legs.len()].to_vec(),
        }
    }

    /// The unique product of canonical generators acting as `pattern` on the legs.
    pub fn matching(&self, pattern: &PauliString) -> PauliString {
        let n = self.gens.first().map_or(0, |g| g.num_qubits());
        let mut p = PauliString::identity(n);
        for t in 0..self.legs.len() {
            let (x, z) = pattern.get(t).bits();
            if x {
                p.mul_assign(&self.gens[2 * t]);
            }
            if z {
                p.mul_assign(&self.gens[2 * t + 1]);
            }
        }
        p
    }

    /// `op` times the canonical product matching it, so the result is
    /// identity on the legs.
    pub fn clean(&self, op: &PauliString) -> PauliString {
        let pattern = op.restrict(&self.legs).expect("legs in range");
        let mut out = op.clone();
        out.mul_assign(&self.matching(&pattern));
        out
    }
}

/// Solves `E_i S_j = (-1)^{δ_ij} S_j E_i` by symplectic Gaussian elimination.
pub fn solve_pure_errors(n: usize, stabilizers: &[PauliString]) -> Result<Vec<PauliString>> {
    let r = stabilizers.len();
    if r == 0 {
        return Ok(Vec::new());
    }
    let w = words_for(n);
    // Row j is S_j with X and Z halves swapped, so row_j · e is the symplectic product.
    let mut rows: Vec<Vec<u64>> = stabilizers
        .iter()
        .map(|s| {
            let mut row = Vec::with_capacity(2 * w);
            row.extend_from_slice(s.z_words());
            row.extend_from_slice(s.x_words());
            row
        })
        .collect();
    let tw = words_for(r);
    let mut track: Vec<Vec<u64>> = (0..r)
        .map(|i| {
            let mut t = vec![0u64; tw];
            t[i / 64] |= 1 << (i % 64);
            t
        })
        .collect();
    let pivots = gf2::rref(&mut rows, Some(&mut track));
    if pivots.len() < r {
        return Err(Error::DependentStabilizers {
            rank: pivots.len(),
            expected: r,
        });
    }
    Ok((0..r)
        .map(|i| {
            let mut e = vec![0u64; 2 * w];
            for (t, &p) in pivots.iter().enumerate() {
                if gf2::bit(&track[t], i) {
                    e[p / 64] |= 1 << (p % 64);
                }
            }
            PauliString::from_row(n, &e)
        })
        .collect())
}

fn parse_all(rows: &[&str]) -> Vec<PauliString> {
    rows.iter().map(|r| r.parse().expect("builtin Pauli text")).collect()
}

/// Rows of the six-qubit code table over qubits `0..=6`, where column 0 is the
/// logical column: `S_1..S_5`, then `X_1`, `Z_1`.
pub const SIX_QUBIT_TABLE: [&str; 7] = [
    "IZIZIII", "IXZYYXI", "IXXXXZI", "IIZZXIX", "IXYXYIZ", "XXZXZII", "ZXYYXII",
];

/// The [[6,1,3]] code on physical columns 1–6.
pub fn builtin_six_qubit() -> StabilizerCode {
    let phys: Vec<String> = SIX_QUBIT_TABLE.iter().map(|r| r[1..].to_string()).collect();
    let rows: Vec<&str> = phys.iter().map(String::as_str).collect();
    let all = parse_all(&rows);
    StabilizerCode::new(6, all[..5].to_vec(), vec![all[5].clone()], vec![all[6].clone()])
        .expect("six-qubit code is valid")
}

/// The seven-qubit stabilizer state whose generators are all seven rows of [`SIX_QUBIT_TABLE`].
pub fn builtin_seven_qubit_state() -> StabilizerCode {
    StabilizerCode::new(7, parse_all(&SIX_QUBIT_TABLE), vec![], vec![])
        .expect("seven-qubit state is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::pauli;

    #[test]
    fn six_qubit_code_matches_generator_rows() {
        let c = builtin_six_qubit();
        assert_eq!((c.n(), c.k()), (6, 1));
        assert_eq!(c.stabilizers()[0], pauli("ZIZIII"));
        assert_eq!(c.logical_x()[0], pauli("XZXZII"));
        assert_eq!(c.logical_z()[0], pauli("XYYXII"));
        c.validate().unwrap();
        assert_eq!(c.stabilizers()[3].restrict(&[5]).unwrap(), pauli("X"));
    }

    #[test]
    fn seven_qubit_state() {
        let c = builtin_seven_qubit_state();
        assert_eq!((c.n(), c.k()), (7, 0));
        assert!(c.stabilizers().contains(&pauli("ZXYYXII")));
        for a in c.stabilizers() {
            for b in c.stabilizers() {
                assert!(a.commutes(b).unwrap());
            }
        }
    }

    #[test]
    fn syndromes() {
        let c = builtin_six_qubit();
        assert!(c.syndrome_of(&PauliString::identity(6)).unwrap().is_trivial());
        let s = c.syndrome_of(&pauli("ZIIIII")).unwrap();
        assert_eq!(s.flipped().collect::<Vec<_>>(), vec![1, 2, 4]);
        for st in c.stabilizers() {
            assert!(c.syndrome_of(st).unwrap().is_trivial());
        }
        assert!(c.syndrome_of(&pauli("ZZ")).is_err());
    }

    #[test]
    fn pure_errors() {
        let c = builtin_six_qubit();
        assert_eq!(c.pure_errors().len(), 5);
        for (i, e) in c.pure_errors().iter().enumerate() {
            for (j, s) in c.stabilizers().iter().enumerate() {
                assert_eq!(e.anticommutes_with(s), i == j);
            }
            assert!(!e.anticommutes_with(&c.logical_x()[0]));
            assert!(!e.anticommutes_with(&c.logical_z()[0]));
        }
        let single = StabilizerCode::new(1, vec![pauli("Z")], vec![], vec![]).unwrap();
        assert_eq!(single.pure_errors(), &[pauli("X")]);
        let free = StabilizerCode::new(1, vec![], vec![pauli("X")], vec![pauli("Z")]).unwrap();
        assert!(free.pure_errors().is_empty());
        assert!(solve_pure_errors(2, &[pauli("ZZ"), pauli("ZZ")]).is_err());
    }

    #[test]
    fn pure_error_for_syndrome() {
        let c = builtin_six_qubit();
        assert!(c.pure_error_for(&Syndrome::trivial(5)).unwrap().is_identity());
        for i in 0..5 {
            let s = Syndrome::from_index(5, 1 << i);
            assert_eq!(c.pure_error_for(&s).unwrap(), c.pure_errors()[i]);
        }
        let s = Syndrome::from_bools(&[false, true, true, false, true]);
        let e = c.pure_error_for(&s).unwrap();
        assert_eq!(c.syndrome_of(&e).unwrap(), s);
    }

    #[test]
    fn dependent_generators_are_rejected() {
        let err = StabilizerCode::new(
            3,
            vec![pauli("ZZI"), pauli("IZZ"), pauli("ZIZ")],
            vec![],
            vec![],
        );
        assert!(err.is_err());
    }

    #[test]
    fn canonical_form_six_qubit_leg_six() {
        let c = builtin_six_qubit();
        let cc = c.canonicalize_on_legs(&[5]).unwrap();
        assert_eq!(cc.stabilizers()[0], c.stabilizers()[3]);
        assert_eq!(cc.stabilizers()[1], c.stabilizers()[4]);
        assert_eq!(&cc.stabilizers()[2..], &c.stabilizers()[..3]);
        assert!(cc.same_stabilizer_group(&c));
        cc.validate().unwrap();
        assert_eq!(c.canonicalize_on_legs(&[]).unwrap(), c);
    }

    #[test]
    fn canonical_form_seven_qubit_leg_zero() {
        let c = builtin_seven_qubit_state();
        let cc = c.canonicalize_on_legs(&[0]).unwrap();
        assert_eq!(cc.stabilizers()[0].get(0), PauliOp::X);
        assert_eq!(cc.stabilizers()[1].get(0), PauliOp::Z);
        assert!(cc.stabilizers()[2..].iter().all(|s| s.get(0) == PauliOp::I));
        assert!(cc.same_stabilizer_group(&c));
        let two = c.canonicalize_on_legs(&[5, 6]).unwrap();
        assert_eq!(two.stabilizers()[0].restrict(&[5, 6]).unwrap(), pauli("XI"));
        assert_eq!(two.stabilizers()[1].restrict(&[5, 6]).unwrap(), pauli("ZI"));
        assert_eq!(two.stabilizers()[2].restrict(&[5, 6]).unwrap(), pauli("IX"));
        assert_eq!(two.stabilizers()[3].restrict(&[5, 6]).unwrap(), pauli("IZ"));
        two.validate().unwrap();
    }

    #[test]
    fn distinguishability() {
        assert!(builtin_six_qubit().distinguishes_errors_on(&[5]).unwrap());
        assert!(builtin_seven_qubit_state()
            .distinguishes_errors_on(&[5, 6])
            .unwrap());
        let rep = StabilizerCode::new(2, vec![pauli("ZZ")], vec![pauli("XX")], vec![pauli("ZI")])
            .unwrap();
        assert!(!rep.distinguishes_errors_on(&[0]).unwrap());
        assert!(matches!(
            rep.canonicalize_on_legs(&[0]),
            Err(Error::PreconditionViolated { .. })
        ));
    }

    #[test]
    fn logical_classes() {
        let c = builtin_six_qubit();
        for s in c.stabilizers() {
            assert_eq!(c.logical_class_of(s).unwrap(), Some(0));
        }
        assert_eq!(c.logical_class_of(&pauli("XZXZII")).unwrap(), Some(1));
        assert_eq!(c.logical_class_of(&pauli("XYYXII")).unwrap(), Some(2));
        assert_eq!(c.logical_class_of(&pauli("XIIIII")).unwrap(), None);
        assert_eq!(c.class_label(3).unwrap(), pauli("Y"));
        for cls in 0..4 {
            let rep = c.class_representative(cls).unwrap();
            assert_eq!(c.logical_class_of(&rep).unwrap(), Some(cls));
        }
    }

    #[test]
    fn distance() {
        let c = builtin_six_qubit();
        assert_eq!(c.distance_of(3), Some(3));
        assert_eq!(c.distance_of(2), None);
        assert_eq!(c.distance_of(0), None);
    }

    #[test]
    fn syndrome_text_forms() {
        let s: Syndrome = "+-+--".parse().unwrap();
        assert_eq!(s.flipped().collect::<Vec<_>>(), vec![1, 3, 4]);
        assert_eq!(s.to_string(), "+-+--");
        assert_eq!(s.to_hex(), "0x1a");
        assert_eq!(Syndrome::parse("0x1a", 5).unwrap(), s);
        assert!(Syndrome::parse("0x20", 5).is_err());
        assert!(Syndrome::parse("+-", 5).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = builtin_six_qubit();
        let text = serde_json::to_string(&c.to_description()).unwrap();
        let back = StabilizerCode::from_description(serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, c);
        let mut d = c.to_description();
        d.pure_errors = None;
        assert_eq!(StabilizerCode::from_description(d).unwrap(), c);
    }
}
