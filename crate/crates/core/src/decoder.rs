//! Maximum-likelihood decoding: the coset probabilities `χ(L, s)` by direct
//! summation over a code tensor, or by contracting a tensor network from the
//! boundary inwards.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::holographic::{
    schedule_for, ChildRole, ContractionSchedule, HolographicLayout, NodeKind, TensorNetwork,
};
use crate::pauli::PauliString;
use crate::stabilizer::{ClassIndex, StabilizerCode, Syndrome};
use crate::tensor::CodeTensor;

/// Independent single-qubit Pauli noise, `probs[q][σ]` with σ-codes I, X, Y, Z.
#[derive(Clone, Debug, PartialEq)]
pub struct NoiseModel {
    probs: Vec<[f64; 4]>,
}

impl NoiseModel {
    pub fn depolarizing(n: usize, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidNoise(format!("p = {p} is outside [0, 1]")));
        }
        Ok(Self {
            probs: vec![[1.0 - p, p / 3.0, p / 3.0, p / 3.0]; n],
        })
    }

    pub fn from_probs(probs: Vec<[f64; 4]>) -> Result<Self> {
        for (q, dist) in probs.iter().enumerate() {
            let sum: f64 = dist.iter().sum();
            if dist.iter().any(|x| x.is_nan() || *x < 0.0) || (sum - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidNoise(format!("qubit {q}: {dist:?}")));
            }
        }
        Ok(Self { probs })
    }

    pub fn num_qubits(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self, qubit: usize) -> &[f64; 4] {
        &self.probs[qubit]
    }
}

/// `r ↦ p_q(σ^{e_q} σ^r)` for one qubit.
pub type LeafTensor = [f64; 4];

pub fn leaf_tensors(noise: &NoiseModel, pure_error: &PauliString) -> Result<Vec<LeafTensor>> {
    if noise.num_qubits() != pure_error.num_qubits() {
        return Err(Error::LengthMismatch {
            expected: pure_error.num_qubits(),
            found: noise.num_qubits(),
        });
    }
    Ok(noise
        .probs
        .iter()
        .enumerate()
        .map(|(q, dist)| {
            let e = pure_error.get(q).code() as usize;
            // phase-free products of σ-codes are XORs
            [dist[e], dist[e ^ 1], dist[e ^ 2], dist[e ^ 3]]
        })
        .collect())
}

/// `χ(L, s) = mantissa[L] · exp(log_scale)`, largest mantissa 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChiTable {
    pub mantissas: Vec<f64>,
    pub log_scale: f64,
    pub syndrome: Syndrome,
    pub argmax: ClassIndex,
}

impl ChiTable {
    /// Normalizes raw values; ties (within [`TIE_TOLERANCE`]) go to the lowest
    /// class index, I < X < Z < Y.
    pub fn from_values(values: &[f64], log_scale: f64, syndrome: Syndrome) -> Self {
        let max = values.iter().copied().fold(0.0f64, f64::max);
        let (mantissas, log_scale) = if max > 0.0 {
            (values.iter().map(|v| v / max).collect(), log_scale + max.ln())
        } else {
            (values.to_vec(), f64::NEG_INFINITY)
        };
        let argmax = argmax_first(&mantissas);
        Self {
            mantissas,
            log_scale,
            syndrome,
            argmax,
        }
    }

    pub fn num_classes(&self) -> usize {
        self.mantissas.len()
    }

    pub fn value(&self, class: ClassIndex) -> f64 {
        if self.mantissas[class] == 0.0 {
            0.0
        } else {
            self.mantissas[class] * self.log_scale.exp()
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.num_classes()).map(|c| self.value(c)).collect()
    }

    pub fn ln_value(&self, class: ClassIndex) -> f64 {
        self.mantissas[class].ln() + self.log_scale
    }

    /// `χ(L, s) / Σ_L' χ(L', s)`.
    pub fn normalized(&self) -> Vec<f64> {
        let total: f64 = self.mantissas.iter().sum();
        self.mantissas.iter().map(|m| m / total).collect()
    }

    /// Largest per-class relative difference `|a - b| / max(a, b)`.
    pub fn relative_error(&self, other: &ChiTable) -> f64 {
        assert_eq!(self.num_classes(), other.num_classes());
        let common = self.log_scale.max(other.log_scale);
        let wa = if self.log_scale.is_finite() { (self.log_scale - common).exp() } else { 0.0 };
        let wb = if other.log_scale.is_finite() { (other.log_scale - common).exp() } else { 0.0 };
        self.mantissas
            .iter()
            .zip(&other.mantissas)
            .map(|(a, b)| {
                let (a, b) = (a * wa, b * wb);
                let m = a.abs().max(b.abs());
                if m == 0.0 {
                    0.0
                } else {
                    (a - b).abs() / m
                }
            })
            .fold(0.0, f64::max)
    }
}

/// Relative gap below which two `χ` values count as tied. Exact ties are
/// common (whole syndromes can leave every class equally likely) and the
/// summation order of different contraction paths would otherwise pick the
/// winner by rounding.
pub const TIE_TOLERANCE: f64 = 1e-12;

fn argmax_first(values: &[f64]) -> ClassIndex {
    let max = values.iter().copied().fold(0.0f64, f64::max);
    values
        .iter()
        .position(|&v| v >= max * (1.0 - TIE_TOLERANCE))
        .unwrap_or(0)
}

/// Literal coset sums over an enumerated code tensor.
pub fn chi_direct(tensor: &CodeTensor, noise: &NoiseModel, s: &Syndrome) -> Result<ChiTable> {
    let code = tensor.code();
    let classes = tensor.classes().ok_or(Error::CapExceeded {
        what: "coset enumeration",
        needed: code.num_stabilizers(),
        cap: crate::tensor::DEFAULT_ENUMERATION_CAP,
    })?;
    let e = code.pure_error_for(s)?;
    let leaves = leaf_tensors(noise, &e)?;
    let values: Vec<f64> = classes
        .iter()
        .map(|keys| {
            keys.iter()
                .map(|&key| {
                    leaves
                        .iter()
                        .enumerate()
                        .map(|(q, leaf)| leaf[((key >> (2 * q)) & 3) as usize])
                        .product::<f64>()
                })
                .sum()
        })
        .collect();
    Ok(ChiTable::from_values(&values, 0.0, s.clone()))
}

/// Multiply-accumulate counts of one contraction, by depth.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OpCounts {
    pub per_layer: Vec<u64>,
    /// Largest bond dimension of the blocks produced at each depth.
    pub bond_dims: Vec<usize>,
}

impl OpCounts {
    pub fn total(&self) -> u64 {
        self.per_layer.iter().sum()
    }
}

/// Nonzero entries of a component tensor grouped by the values on its
/// ingoing legs (first ingoing leg most significant).
#[derive(Clone, Debug)]
struct EntryGroups {
    groups: Vec<Vec<Vec<u8>>>,
}

fn group_entries(tensor: &CodeTensor, class: ClassIndex, in_legs: &[usize]) -> EntryGroups {
    let mut groups = vec![Vec::new(); 1 << (2 * in_legs.len())];
    for g in tensor.members(class).expect("component tensors are enumerated") {
        let g = g.to_indices();
        let idx = in_legs.iter().fold(0, |acc, &l| acc * 4 + g[l] as usize);
        groups[idx].push(g);
    }
    EntryGroups { groups }
}

/// Renormalized contraction result of one node: `data[in][row][col]` with
/// `χ` contributions scaled by `exp(-log_scale)`.
#[derive(Clone, Debug)]
struct Block {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
    log_scale: f64,
}

impl Block {
    fn matrix(&self, idx: usize) -> &[f64] {
        let size = self.rows * self.cols;
        &self.data[idx * size..(idx + 1) * size]
    }
}

/// `out = a · b` for row-major `a` (n×m) and `b` (m×p).
fn matmul(a: &[f64], b: &[f64], n: usize, m: usize, p: usize, out: &mut Vec<f64>) {
    out.clear();
    out.resize(n * p, 0.0);
    for i in 0..n {
        let row = &mut out[i * p..(i + 1) * p];
        for k in 0..m {
            let x = a[i * m + k];
            if x != 0.0 {
                for (o, y) in row.iter_mut().zip(&b[k * p..(k + 1) * p]) {
                    *o += x * y;
                }
            }
        }
    }
}

/// Exact contraction of a network of `T¹`/`T⁰` tensors against leaf tensors.
#[derive(Clone, Debug)]
pub struct NetworkDecoder {
    network: TensorNetwork,
    schedule: ContractionSchedule,
    code: StabilizerCode,
    /// Per node: entry groups; the central node has one set per class.
    entries: Vec<Vec<EntryGroups>>,
    parallel: bool,
}

impl NetworkDecoder {
    /// `code` must be the network's code with qubits in boundary order.
    pub fn new(network: TensorNetwork, code: StabilizerCode) -> Result<Self> {
        let schedule = schedule_for(&network)?;
        if code.n() != network.num_qubits() || code.k() != 1 {
            return Err(Error::ScheduleMismatch(format!(
                "code [[{}, {}]] does not fit a network with {} physical legs",
                code.n(),
                code.k(),
                network.num_qubits()
            )));
        }
        let central = CodeTensor::from_code(NodeKind::Central.code())?;
        let seven = CodeTensor::from_code(NodeKind::SingleParent.code())?;
        let mut cache: Vec<(Vec<usize>, EntryGroups)> = Vec::new();
        let entries = network
            .nodes
            .iter()
            .map(|node| {
                if node.kind == NodeKind::Central {
                    return (0..4).map(|c| group_entries(&central, c, &[])).collect();
                }
                let in_legs: Vec<usize> = node.ingoing.iter().map(|i| i.leg).collect();
                if let Some((_, g)) = cache.iter().find(|(l, _)| *l == in_legs) {
                    return vec![g.clone()];
                }
                let g = group_entries(&seven, 0, &in_legs);
                cache.push((in_legs, g.clone()));
                vec![g]
            })
            .collect();
        Ok(Self {
            network,
            schedule,
            code,
            entries,
            parallel: false,
        })
    }

    pub fn from_layout(layout: &HolographicLayout) -> Result<Self> {
        Self::new(layout.network.clone(), layout.code.clone())
    }

    /// Contract the nodes of each layer in parallel.
    pub fn with_parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    pub fn code(&self) -> &StabilizerCode {
        &self.code
    }

    pub fn network(&self) -> &TensorNetwork {
        &self.network
    }

    pub fn schedule(&self) -> &ContractionSchedule {
        &self.schedule
    }

    pub fn chi(&self, noise: &NoiseModel, s: &Syndrome) -> Result<ChiTable> {
        self.chi_counted(noise, s).map(|(chi, _)| chi)
    }

    pub fn chi_counted(&self, noise: &NoiseModel, s: &Syndrome) -> Result<(ChiTable, OpCounts)> {
        let e = self.code.pure_error_for(s)?;
        let leaves = leaf_tensors(noise, &e)?;
        let (values, log_scale, counts) = self.contract_leaves(&leaves)?;
        Ok((ChiTable::from_values(&values, log_scale, s.clone()), counts))
    }

    /// Raw `χ` for arbitrary leaf tensors: `(values, log scale, counts)`.
    pub fn contract_leaves(&self, leaves: &[LeafTensor]) -> Result<(Vec<f64>, f64, OpCounts)> {
        if leaves.len() != self.network.num_qubits() {
            return Err(Error::LengthMismatch {
                expected: self.network.num_qubits(),
                found: leaves.len(),
            });
        }
        let depth = self.network.depth();
        let mut counts = OpCounts {
            per_layer: vec![0; depth],
            bond_dims: vec![0; depth],
        };
        let mut blocks: Vec<Option<Block>> = vec![None; self.network.nodes.len()];
        for layer in (1..depth).rev() {
            let (start, end) = self.schedule.layer_ranges[layer];
            let steps = &self.schedule.steps[start..end];
            let compute = |step: &crate::holographic::ContractionStep| {
                let mut ops = 0u64;
                let block = self.node_block(step, leaves, &blocks, &mut ops);
                (block, ops)
            };
            let results: Vec<(Block, u64)> = if self.parallel {
                steps.par_iter().map(compute).collect()
            } else {
                steps.iter().map(compute).collect()
            };
            for (step, (block, ops)) in steps.iter().zip(results) {
                counts.per_layer[layer] += ops;
                counts.bond_dims[layer] = counts.bond_dims[layer].max(block.rows).max(block.cols);
                blocks[step.node] = Some(block);
            }
        }
        let root = &self.schedule.steps[self.schedule.step_of[0]];
        let mut ops = 0u64;
        let values: Vec<f64> = (0..4)
            .map(|c| self.root_value(root, c, leaves, &blocks, &mut ops))
            .collect();
        counts.per_layer[0] = ops;
        counts.bond_dims[0] = 1;
        let log_scale = blocks.iter().flatten().map(|b| b.log_scale).sum();
        Ok((values, log_scale, counts))
    }

    fn node_block(
        &self,
        step: &crate::holographic::ContractionStep,
        leaves: &[LeafTensor],
        blocks: &[Option<Block>],
        ops: &mut u64,
    ) -> Block {
        let child = |c: usize| blocks[c].as_ref().expect("children are contracted first");
        let singles: Vec<_> = step
            .children
            .iter()
            .filter(|c| c.role == ChildRole::Single)
            .map(|c| (c.leg, child(c.node)))
            .collect();
        let owned = step
            .children
            .iter()
            .find(|c| c.role == ChildRole::CornerOwned)
            .map(|c| (c.leg, child(c.node)));
        let shared_leg = step
            .children
            .iter()
            .find(|c| c.role == ChildRole::CornerShared)
            .map(|c| c.leg);
        let inner_rows = step.left_bond / if shared_leg.is_some() { 4 } else { 1 };
        let inner_cols = step.right_bond / if owned.is_some() { 4 } else { 1 };
        let groups = &self.entries[step.node][0].groups;
        let size = step.left_bond * step.right_bond;
        let mut data = vec![0.0; groups.len() * size];
        let mut prod = Vec::new();
        let mut tmp = Vec::new();
        for (idx, group) in groups.iter().enumerate() {
            let out = &mut data[idx * size..(idx + 1) * size];
            for g in group {
                let scalar = physical_product(&step.physical, g, leaves, ops);
                let have_prod = chain_product(&singles, g, &mut prod, &mut tmp, ops);
                let row0 = shared_leg.map_or(0, |leg| g[leg] as usize * inner_rows);
                match owned {
                    Some((leg, corner)) => {
                        for i in 0..4 {
                            let cm = corner.matrix(g[leg] as usize * 4 + i);
                            let m: &[f64] = if have_prod {
                                let k = singles.last().expect("non-empty chain").1.cols;
                                matmul(&prod, cm, inner_rows, k, corner.cols, &mut tmp);
                                *ops += (inner_rows * k * corner.cols) as u64;
                                &tmp
                            } else {
                                cm
                            };
                            accumulate(out, step.right_bond, row0, i * inner_cols, m, inner_rows, inner_cols, scalar);
                            *ops += (inner_rows * inner_cols) as u64;
                        }
                    }
                    None => {
                        let one = [1.0];
                        let m: &[f64] = if have_prod { &prod } else { &one };
                        accumulate(out, step.right_bond, row0, 0, m, inner_rows, inner_cols, scalar);
                        *ops += (inner_rows * inner_cols) as u64;
                    }
                }
            }
        }
        let max = data.iter().copied().fold(0.0f64, f64::max);
        let log_scale = if max > 0.0 {
            data.iter_mut().for_each(|x| *x /= max);
            max.ln()
        } else {
            0.0
        };
        Block {
            rows: step.left_bond,
            cols: step.right_bond,
            data,
            log_scale,
        }
    }

    fn root_value(
        &self,
        step: &crate::holographic::ContractionStep,
        class: ClassIndex,
        leaves: &[LeafTensor],
        blocks: &[Option<Block>],
        ops: &mut u64,
    ) -> f64 {
        let chain: Vec<_> = step
            .children
            .iter()
            .map(|c| (c.leg, blocks[c.node].as_ref().expect("children are contracted first")))
            .collect();
        let mut total = 0.0;
        let mut prod = Vec::new();
        let mut tmp = Vec::new();
        for g in &self.entries[step.node][class].groups[0] {
            let scalar = physical_product(&step.physical, g, leaves, ops);
            let trace = match chain.split_last() {
                None => 1.0,
                Some(((leg, last), rest)) => {
                    let last_m = last.matrix(g[*leg] as usize);
                    if chain_product(rest, g, &mut prod, &mut tmp, ops) {
                        // prod is r × c, last is c × r
                        let (c, r) = (last.rows, last.cols);
                        *ops += (r * c) as u64;
                        (0..r)
                            .map(|i| (0..c).map(|j| prod[i * c + j] * last_m[j * r + i]).sum::<f64>())
                            .sum()
                    } else {
                        *ops += last.rows as u64;
                        (0..last.rows).map(|i| last_m[i * last.cols + i]).sum()
                    }
                }
            };
            total += scalar * trace;
            *ops += 1;
        }
        total
    }

    pub fn decode(&self, noise: &NoiseModel, s: &Syndrome) -> Result<Decoding> {
        let chi = self.chi(noise, s)?;
        correction_for(&self.code, chi)
    }
}

fn physical_product(physical: &[(usize, usize)], g: &[u8], leaves: &[LeafTensor], ops: &mut u64) -> f64 {
    if physical.is_empty() {
        return 1.0;
    }
    *ops += physical.len() as u64 - 1;
    physical
        .iter()
        .map(|&(leg, q)| leaves[q][g[leg] as usize])
        .product()
}

/// Product of the children's matrices selected by `g`, left to right, into
/// `prod`. Returns false for an empty chain.
fn chain_product(
    chain: &[(usize, &Block)],
    g: &[u8],
    prod: &mut Vec<f64>,
    tmp: &mut Vec<f64>,
    ops: &mut u64,
) -> bool {
    let Some(((leg, first), rest)) = chain.split_first() else {
        return false;
    };
    prod.clear();
    prod.extend_from_slice(first.matrix(g[*leg] as usize));
    let rows = first.rows;
    let mut cols = first.cols;
    for (leg, b) in rest {
        matmul(prod, b.matrix(g[*leg] as usize), rows, cols, b.cols, tmp);
        *ops += (rows * cols * b.cols) as u64;
        cols = b.cols;
        std::mem::swap(prod, tmp);
    }
    true
}

#[allow(clippy::too_many_arguments)]
fn accumulate(
    out: &mut [f64],
    stride: usize,
    row0: usize,
    col0: usize,
    m: &[f64],
    rows: usize,
    cols: usize,
    scalar: f64,
) {
    for i in 0..rows {
        let dst = &mut out[(row0 + i) * stride + col0..(row0 + i) * stride + col0 + cols];
        for (d, x) in dst.iter_mut().zip(&m[i * cols..(i + 1) * cols]) {
            *d += scalar * x;
        }
    }
}

/// Result of decoding one syndrome.
#[derive(Clone, Debug)]
pub struct Decoding {
    pub correction: PauliString,
    pub chi: ChiTable,
}

/// `L̄ · E(s)` for the most likely class `L`.
pub fn correction_for(code: &StabilizerCode, chi: ChiTable) -> Result<Decoding> {
    let e = code.pure_error_for(&chi.syndrome)?;
    let rep = code.class_representative(chi.argmax)?;
    Ok(Decoding {
        correction: rep.multiply(&e)?,
        chi,
    })
}

/// One-shot network contraction for a holographic layout.
pub fn chi_network(layout: &HolographicLayout, noise: &NoiseModel, s: &Syndrome) -> Result<ChiTable> {
    NetworkDecoder::from_layout(layout)?.chi(noise, s)
}

pub fn decode(layout: &HolographicLayout, noise: &NoiseModel, s: &Syndrome) -> Result<Decoding> {
    NetworkDecoder::from_layout(layout)?.decode(noise, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holographic::{build_code, build_layout, chain_network};
    use crate::stabilizer::builtin_six_qubit;

    fn six() -> CodeTensor {
        CodeTensor::from_code(builtin_six_qubit()).unwrap()
    }

    #[test]
    fn leaf_values() {
        let noise = NoiseModel::depolarizing(2, 0.3).unwrap();
        let leaves = leaf_tensors(&noise, &crate::pauli::pauli("IX")).unwrap();
        for (a, b) in leaves[0].iter().zip([0.7, 0.1, 0.1, 0.1]) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(leaves[1][1], 0.7);
        assert!(NoiseModel::depolarizing(2, 1.5).is_err());
        assert!(NoiseModel::from_probs(vec![[0.5, 0.5, 0.5, 0.0]]).is_err());
    }

    #[test]
    fn direct_chi_is_normalized() {
        let t = six();
        let noise = NoiseModel::depolarizing(6, 0.17).unwrap();
        let total: f64 = (0..32)
            .map(|v| {
                let chi = chi_direct(&t, &noise, &Syndrome::from_index(5, v)).unwrap();
                chi.values().iter().sum::<f64>()
            })
            .sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_noise_trivial_syndrome() {
        let chi = chi_direct(&six(), &NoiseModel::depolarizing(6, 0.0).unwrap(), &Syndrome::trivial(5)).unwrap();
        assert_eq!(chi.values(), vec![1.0, 0.0, 0.0, 0.0]);
        assert_eq!(chi.argmax, 0);
    }

    #[test]
    fn uniform_noise_ties_break_to_identity() {
        let chi = chi_direct(&six(), &NoiseModel::depolarizing(6, 0.75).unwrap(), &Syndrome::from_index(5, 9)).unwrap();
        assert_eq!(chi.argmax, 0);
        assert!(chi.mantissas.iter().all(|&m| (m - 1.0).abs() < 1e-12));
    }

    #[test]
    fn network_matches_direct_on_small_codes() {
        for net in [crate::holographic::build_network(1).unwrap(), chain_network(1)] {
            let code = build_code(&net).unwrap();
            let t = CodeTensor::from_code(code.clone()).unwrap();
            let dec = NetworkDecoder::new(net, code.clone()).unwrap();
            let noise = NoiseModel::depolarizing(code.n(), 0.1).unwrap();
            for v in (0..1u64 << code.num_stabilizers()).step_by(13) {
                let s = Syndrome::from_index(code.num_stabilizers(), v);
                let a = chi_direct(&t, &noise, &s).unwrap();
                let b = dec.chi(&noise, &s).unwrap();
                assert!(a.relative_error(&b) < 1e-12, "{a:?} vs {b:?}");
                assert_eq!(a.argmax, b.argmax);
            }
        }
    }

    #[test]
    fn radius_one_op_count() {
        let layout = build_layout(1).unwrap();
        let dec = NetworkDecoder::from_layout(&layout).unwrap();
        let noise = NoiseModel::depolarizing(6, 0.1).unwrap();
        let (_, counts) = dec.chi_counted(&noise, &Syndrome::trivial(5)).unwrap();
        assert_eq!(counts.total(), 4 * 32 * 6);
    }

    #[test]
    fn holographic_decoding_corrects_single_errors() {
        let layout = build_layout(2).unwrap();
        let dec = NetworkDecoder::from_layout(&layout).unwrap().with_parallel(true);
        let noise = NoiseModel::depolarizing(36, 0.01).unwrap();
        let code = dec.code();
        let d = dec.decode(&noise, &Syndrome::trivial(35)).unwrap();
        assert!(d.correction.is_identity());
        for q in [0, 7, 20, 35] {
            for op in [crate::PauliOp::X, crate::PauliOp::Z] {
                let e = PauliString::single(36, q, op);
                let s = code.syndrome_of(&e).unwrap();
                let d = dec.decode(&noise, &s).unwrap();
                let residual = d.correction.multiply(&e).unwrap();
                assert_eq!(code.logical_class_of(&residual).unwrap(), Some(0));
            }
        }
    }

    #[test]
    fn counts_do_not_depend_on_syndrome() {
        let layout = build_layout(3).unwrap();
        let dec = NetworkDecoder::from_layout(&layout).unwrap();
        let noise = NoiseModel::depolarizing(layout.code.n(), 0.2).unwrap();
        let n = layout.code.num_stabilizers();
        let (_, a) = dec.chi_counted(&noise, &Syndrome::trivial(n)).unwrap();
        let mut s = Syndrome::trivial(n);
        s.set(3, true);
        s.set(100, true);
        let (_, b) = dec.chi_counted(&noise, &s).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.bond_dims, vec![1, 4, 1]);
    }
}
