//! Phase-free n-qubit Pauli operators in bit-packed symplectic form.
//!
//! Qubit `i` carries the single-qubit operator with X-part `x[i]` and Z-part
//! `z[i]`. The σ-code of the operator is 0 = I, 1 = X, 2 = Y, 3 = Z, so that
//! a string such as `XZYYXI` has index string `(1,3,2,2,1,0)`.
//!
//! Phases are never stored: products are taken modulo {±1, ±i}.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// Single-qubit Pauli operator, indexed by its σ-code.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum PauliOp {
    I = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

impl PauliOp {
    pub const ALL: [PauliOp; 4] = [PauliOp::I, PauliOp::X, PauliOp::Y, PauliOp::Z];

    pub fn from_code(code: u8) -> Result<Self> {
        match code {
            0 => Ok(PauliOp::I),
            1 => Ok(PauliOp::X),
            2 => Ok(PauliOp::Y),
            3 => Ok(PauliOp::Z),
            other => Err(Error::Parse(format!("invalid Pauli code {other}"))),
        }
    }

    #[inline]
    pub fn code(self) -> u8 {
        self as u8
    }

    /// `(x, z)` symplectic bits.
    #[inline]
    pub fn bits(self) -> (bool, bool) {
        match self {
            PauliOp::I => (false, false),
            PauliOp::X => (true, false),
            PauliOp::Y => (true, true),
            PauliOp::Z => (false, true),
        }
    }

    #[inline]
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliOp::I,
            (true, false) => PauliOp::X,
            (true, true) => PauliOp::Y,
            (false, true) => PauliOp::Z,
        }
    }


    pub fn as_char(self) -> char {
        match self {
            PauliOp::I => 'I',
            PauliOp::X => 'X',
            PauliOp::Y => 'Y',
            PauliOp::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'I' | 'i' | '_' | '.' => Ok(PauliOp::I),
            'X' | 'x' => Ok(PauliOp::X),
            'Y' | 'y' => Ok(PauliOp::Y),
            'Z' | 'z' => Ok(PauliOp::Z),
            other => Err(Error::Parse(format!("invalid Pauli character {other:?}"))),
        }
    }
}

/// Phase-free product table indexed by σ-codes.
/// Phase-free product.
impl std::ops::Mul for PauliOp {
    type Output = PauliOp;

    #[inline]
    fn mul(self, other: PauliOp) -> PauliOp {
        PAULI_PRODUCT[self as usize][other as usize]
    }
}

pub const PAULI_PRODUCT: [[PauliOp; 4]; 4] = {
    use PauliOp::*;
    [[I, X, Y, Z], [X, I, Z, Y], [Y, Z, I, X], [Z, Y, X, I]]
};

/// Phase-free Pauli string on `n` qubits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        let w = words_for(n);
        Self {
            n,
            x: vec![0; w],
            z: vec![0; w],
        }
    }

    pub fn single(n: usize, qubit: usize, op: PauliOp) -> Self {
        let mut p = Self::identity(n);
        p.set(qubit, op);
        p
    }

    pub fn from_ops(ops: &[PauliOp]) -> Self {
        let mut p = Self::identity(ops.len());
        for (i, &op) in ops.iter().enumerate() {
            p.set(i, op);
        }
        p
    }

    /// Builds a string from base-4 σ-codes `(g_1, ..., g_n)`.
    pub fn from_indices(indices: &[u8]) -> Result<Self> {
        let mut p = Self::identity(indices.len());
        for (i, &g) in indices.iter().enumerate() {
            p.set(i, PauliOp::from_code(g)?);
        }
        Ok(p)
    }

    pub fn to_indices(&self) -> Vec<u8> {
        (0..self.n).map(|i| self.get(i).code()).collect()
    }

    /// Base-4 key `Σ g_i 4^i`. Requires `n <= 64`.
    pub fn key(&self) -> u128 {
        assert!(self.n <= 64, "index key needs n <= 64, got {}", self.n);
        let mut k = 0u128;
        for i in (0..self.n).rev() {
            k = (k << 2) | self.get(i).code() as u128;
        }
        k
    }

    pub fn from_key(n: usize, mut key: u128) -> Self {
        assert!(n <= 64);
        let mut p = Self::identity(n);
        for i in 0..n {
            p.set(i, PauliOp::from_code((key & 3) as u8).unwrap());
            key >>= 2;
        }
        p
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    #[inline]
    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    #[inline]
    pub fn x_bit(&self, i: usize) -> bool {
        (self.x[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn z_bit(&self, i: usize) -> bool {
        (self.z[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn get(&self, i: usize) -> PauliOp {
        debug_assert!(i < self.n);
        PauliOp::from_bits(self.x_bit(i), self.z_bit(i))
    }

    #[inline]
    pub fn set(&mut self, i: usize, op: PauliOp) {
        assert!(i < self.n, "qubit {i} out of range for {} qubits", self.n);
        let (xb, zb) = op.bits();
        let mask = 1u64 << (i % WORD);
        let w = i / WORD;
        if xb {
            self.x[w] |= mask;
        } else {
            self.x[w] &= !mask;
        }
        if zb {
            self.z[w] |= mask;
        } else {
            self.z[w] &= !mask;
        }
    }

    /// Multiplies qubit `i` by `op` in place.
    #[inline]
    pub fn mul_at(&mut self, i: usize, op: PauliOp) {
        let (xb, zb) = op.bits();
        let mask = 1u64 << (i % WORD);
        if xb {
            self.x[i / WORD] ^= mask;
        }
        if zb {
            self.z[i / WORD] ^= mask;
        }
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().all(|&w| w == 0) && self.z.iter().all(|&w| w == 0)
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Phase-free product `self · other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let mut out = self.clone();
        out.mul_assign_unchecked(other);
        Ok(out)
    }

    /// In-place product; panics on length mismatch.
    #[inline]
    pub fn mul_assign(&mut self, other: &Self) {
        assert_eq!(self.n, other.n, "Pauli length mismatch");
        self.mul_assign_unchecked(other);
    }

    #[inline]
    fn mul_assign_unchecked(&mut self, other: &Self) {
        for (a, b) in self.x.iter_mut().zip(&other.x) {
            *a ^= b;
        }
        for (a, b) in self.z.iter_mut().zip(&other.z) {
            *a ^= b;
        }
    }

    /// Symplectic inner product parity; `true` means the two anticommute.
    #[inline]
    pub fn anticommutes_with(&self, other: &Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        let mut acc = 0u64;
        for i in 0..self.x.len() {
            acc ^= (self.x[i] & other.z[i]) ^ (self.z[i] & other.x[i]);
        }
        acc.count_ones() & 1 == 1
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        Ok(!self.anticommutes_with(other))
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// Sub-string over `legs`, in the given order.
    pub fn restrict(&self, legs: &[usize]) -> Result<Self> {
        let mut out = Self::identity(legs.len());
        for (j, &q) in legs.iter().enumerate() {
            if q >= self.n {
                return Err(Error::QubitOutOfRange { qubit: q, n: self.n });
            }
            out.set(j, self.get(q));
        }
        Ok(out)
    }

    /// Tensor product `self ⊗ other`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::identity(self.n + other.n);
        for i in 0..self.n {
            out.set(i, self.get(i));
        }
        for i in 0..other.n {
            out.set(self.n + i, other.get(i));
        }
        out
    }

    /// Output qubit `i` carries input qubit `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: perm.len(),
            });
        }
        self.restrict(perm)
    }

    /// Indices of non-identity qubits.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.get(i) != PauliOp::I).collect()
    }

    /// Packs as `[x words.., z words..]`, the row layout used by GF(2) elimination.
    pub(crate) fn to_row(&self) -> Vec<u64> {
        let mut row = Vec::with_capacity(2 * self.x.len());
        row.extend_from_slice(&self.x);
        row.extend_from_slice(&self.z);
        row
    }

    pub(crate) fn from_row(n: usize, row: &[u64]) -> Self {
        let w = words_for(n);
        Self {
            n,
            x: row[..w].to_vec(),
            z: row[w..2 * w].to_vec(),
        }
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            write!(f, "{}", self.get(i).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let ops = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(PauliOp::from_char)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_ops(&ops))
    }
}

impl Serialize for PauliString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for tests and builtin tables. Panics on bad input.
pub fn pauli(s: &str) -> PauliString {
    s.parse().expect("valid Pauli text")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_qubit_products() {
        assert_eq!(pauli("X").multiply(&pauli("Z")).unwrap(), pauli("Y"));
        let s = pauli("XZYYXI");
        assert!(s.multiply(&s).unwrap().is_identity());
        assert_eq!(s.multiply(&PauliString::identity(6)).unwrap(), s);
        assert!(pauli("XX").multiply(&pauli("X")).is_err());
    }

    #[test]
    fn product_table_matches_bits() {
        for a in PauliOp::ALL {
            for b in PauliOp::ALL {
                let (ax, az) = a.bits();
                let (bx, bz) = b.bits();
                assert_eq!(a * b, PauliOp::from_bits(ax ^ bx, az ^ bz));
            }
        }
    }

    #[test]
    fn commutation_basics() {
        assert!(!pauli("X").commutes(&pauli("Z")).unwrap());
        let a = pauli("XZYYXI");
        assert!(a.commutes(&a).unwrap());
        // S2 and S3 rows of the six-qubit code.
        assert!(pauli("XZYYXI").commutes(&pauli("XXXXZI")).unwrap());
    }

    #[test]
    fn weights() {
        assert_eq!(PauliString::identity(9).weight(), 0);
        assert_eq!(PauliString::from_indices(&[1, 3, 2, 2, 1, 0]).unwrap().weight(), 5);
        assert_eq!(pauli("IZIZII").weight(), 2);
    }

    #[test]
    fn restriction() {
        assert_eq!(pauli("XZYYXI").restrict(&[0]).unwrap(), pauli("X"));
        assert_eq!(pauli("IZZXIX").restrict(&[5]).unwrap(), pauli("X"));
        assert_eq!(pauli("XYZ").restrict(&[]).unwrap().num_qubits(), 0);
        assert!(pauli("XYZ").restrict(&[3]).is_err());
    }

    #[test]
    fn index_strings() {
        let p = PauliString::from_indices(&[1, 3, 2, 2, 1, 0]).unwrap();
        assert_eq!(p.to_string(), "XZYYXI");
        assert_eq!(p.to_indices(), vec![1, 3, 2, 2, 1, 0]);
        assert_eq!(PauliString::from_key(6, p.key()), p);
        assert!(PauliString::from_indices(&[4]).is_err());
    }

    #[test]
    fn wide_strings_cross_word_boundaries() {
        let mut a = PauliString::identity(130);
        a.set(0, PauliOp::X);
        a.set(127, PauliOp::Z);
        let b = PauliString::single(130, 127, PauliOp::X);
        assert!(a.anticommutes_with(&b));
        assert_eq!(a.weight(), 2);
        assert_eq!(a.support(), vec![0, 127]);
    }
}
