//! Tensor networks of code tensors: the radius-`R` holographic network, small
//! tree networks, the stabilizer code of a network, and the outside-in
//! contraction schedule used by the decoder.
//!
//! Every network has one central six-leg tensor `T¹` (the six-qubit code) and
//! any number of seven-leg tensors `T⁰` (the seven-qubit stabilizer state).
//! In the holographic network a single-parent `T⁰` is attached through leg 6,
//! and a corner `T⁰` shared by two neighbouring parents through legs 5 (left
//! parent) and 6 (right parent).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::PauliString;
use crate::stabilizer::{
    builtin_seven_qubit_state, builtin_six_qubit, LegCanonical, StabilizerCode,
};
use crate::tensor::{contract_codes, LegBinding};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Central,
    SingleParent,
    Corner,
}

impl NodeKind {
    pub fn num_legs(self) -> usize {
        match self {
            NodeKind::Central => 6,
            _ => 7,
        }
    }

    pub fn code(self) -> StabilizerCode {
        match self {
            NodeKind::Central => builtin_six_qubit(),
            _ => builtin_seven_qubit_state(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LegTarget {
    /// Physical qubit, by position in the boundary order.
    Physical(usize),
    Child(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InLeg {
    pub leg: usize,
    pub parent: usize,
    pub parent_leg: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutLeg {
    pub leg: usize,
    pub target: LegTarget,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub id: usize,
    pub layer: usize,
    pub kind: NodeKind,
    pub ingoing: Vec<InLeg>,
    pub outgoing: Vec<OutLeg>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryLeg {
    pub node: usize,
    pub leg: usize,
}

/// Network structure. Node 0 is the central tensor; every other node appears
/// after its parents. `layers[l]` lists the nodes at depth `l` in ring order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorNetwork {
    pub nodes: Vec<Node>,
    pub layers: Vec<Vec<usize>>,
    pub boundary: Vec<BoundaryLeg>,
}

impl TensorNetwork {
    pub fn num_qubits(&self) -> usize {
        self.boundary.len()
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    /// Structural consistency: leg counts, parent/child agreement, every
    /// external leg listed exactly once in the boundary order.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidCode(format!("network: {msg}")));
        if self.nodes.first().map(|n| n.kind) != Some(NodeKind::Central) {
            return bad("node 0 must be the central tensor".into());
        }
        let mut physical_seen = vec![false; self.boundary.len()];
        for (id, node) in self.nodes.iter().enumerate() {
            if node.id != id {
                return bad(format!("node {id} carries id {}", node.id));
            }
            let expected_in = match node.kind {
                NodeKind::Central => 0..=0,
                NodeKind::SingleParent => 1..=1,
                NodeKind::Corner => 2..=2,
            };
            if !expected_in.contains(&node.ingoing.len()) {
                return bad(format!("node {id} has {} ingoing legs", node.ingoing.len()));
            }
            let mut legs: Vec<usize> = node
                .ingoing
                .iter()
                .map(|i| i.leg)
                .chain(node.outgoing.iter().map(|o| o.leg))
                .collect();
            legs.sort_unstable();
            if legs != (0..node.kind.num_legs()).collect::<Vec<_>>() {
                return bad(format!("node {id} does not use each leg exactly once"));
            }
            for i in &node.ingoing {
                let Some(parent) = self.nodes.get(i.parent).filter(|_| i.parent < id) else {
                    return bad(format!("node {id} has an invalid parent {}", i.parent));
                };
                let link = OutLeg {
                    leg: i.parent_leg,
                    target: LegTarget::Child(id),
                };
                if !parent.outgoing.contains(&link) {
                    return bad(format!("parent {} does not link to node {id}", i.parent));
                }
            }
            for o in &node.outgoing {
                match o.target {
                    LegTarget::Physical(q) => {
                        if self.boundary.get(q) != Some(&BoundaryLeg { node: id, leg: o.leg }) {
                            return bad(format!("physical leg {q} disagrees with boundary order"));
                        }
                        physical_seen[q] = true;
                    }
                    LegTarget::Child(c) => {
                        let ok = self.nodes.get(c).is_some_and(|child| {
                            child.ingoing.iter().any(|i| i.parent == id && i.parent_leg == o.leg)
                        });
                        if !ok {
                            return bad(format!("node {id} leg {} has no matching child", o.leg));
                        }
                    }
                }
            }
        }
        if physical_seen.iter().any(|&s| !s) {
            return bad("boundary order lists a leg no node owns".into());
        }
        let mut in_layers = vec![false; self.nodes.len()];
        for (l, layer) in self.layers.iter().enumerate() {
            for &v in layer {
                match self.nodes.get(v) {
                    Some(node) if node.layer == l && !in_layers[v] => in_layers[v] = true,
                    _ => return bad(format!("layer {l} lists node {v} incorrectly")),
                }
            }
        }
        if in_layers.iter().any(|&s| !s) {
            return bad("a node is missing from the layer lists".into());
        }
        Ok(())
    }
}

struct NetworkBuilder {
    nodes: Vec<Node>,
}

impl NetworkBuilder {
    fn new() -> Self {
        Self {
            nodes: vec![Node {
                id: 0,
                layer: 0,
                kind: NodeKind::Central,
                ingoing: Vec::new(),
                outgoing: Vec::new(),
            }],
        }
    }

    /// Adds a node fed by `(in_leg, parent, parent_leg)` links; its remaining
    /// legs stay open until targeted.
    fn attach(&mut self, kind: NodeKind, links: &[(usize, usize, usize)]) -> usize {
        let id = self.nodes.len();
        let layer = links.iter().map(|l| self.nodes[l.1].layer).max().unwrap_or(0) + 1;
        let ingoing: Vec<InLeg> = links
            .iter()
            .map(|&(leg, parent, parent_leg)| InLeg {
                leg,
                parent,
                parent_leg,
            })
            .collect();
        for i in &ingoing {
            self.nodes[i.parent].outgoing.push(OutLeg {
                leg: i.parent_leg,
                target: LegTarget::Child(id),
            });
        }
        self.nodes.push(Node {
            id,
            layer,
            kind,
            ingoing,
            outgoing: Vec::new(),
        });
        id
    }

    fn open_legs(&self, v: usize) -> Vec<usize> {
        let node = &self.nodes[v];
        (0..node.kind.num_legs())
            .filter(|&l| {
                !node.ingoing.iter().any(|i| i.leg == l) && !node.outgoing.iter().any(|o| o.leg == l)
            })
            .collect()
    }

    /// Closes every open leg as a physical qubit, visiting nodes in `order`,
    /// and sorts outgoing lists by leg.
    fn finish(mut self, order: &[usize]) -> TensorNetwork {
        let mut boundary = Vec::new();
        for &v in order {
            for leg in self.open_legs(v) {
                self.nodes[v].outgoing.push(OutLeg {
                    leg,
                    target: LegTarget::Physical(boundary.len()),
                });
                boundary.push(BoundaryLeg { node: v, leg });
            }
        }
        for node in &mut self.nodes {
            node.outgoing.sort_by_key(|o| o.leg);
        }
        let depth = self.nodes.iter().map(|n| n.layer).max().unwrap_or(0) + 1;
        let mut layers = vec![Vec::new(); depth];
        for node in &self.nodes {
            layers[node.layer].push(node.id);
        }
        TensorNetwork {
            nodes: self.nodes,
            layers,
            boundary,
        }
    }
}

/// The radius-`R` holographic network.
///
/// Layer 1 attaches a `T⁰` to each leg of the central tensor. From there,
/// each node of a layer gets a single-parent child on every outgoing leg
/// except its first and last; the last outgoing leg of a node and the first
/// outgoing leg of its clockwise neighbour feed one shared corner child. Ring
/// order of the next layer: for each node, its single-parent children, then
/// the corner it shares with its right neighbour. Physical qubits are the
/// open legs of the outermost layer, in ring order.
pub fn build_network(radius: usize) -> Result<TensorNetwork> {
    if radius == 0 {
        return Err(Error::Config("radius must be at least 1".into()));
    }
    let mut b = NetworkBuilder::new();
    let mut ring = vec![0];
    if radius >= 2 {
        ring = (0..6)
            .map(|t| b.attach(NodeKind::SingleParent, &[(6, 0, t)]))
            .collect();
    }
    for _ in 2..radius {
        let m = ring.len();
        let open: Vec<Vec<usize>> = ring.iter().map(|&v| b.open_legs(v)).collect();
        let mut next = Vec::new();
        for i in 0..m {
            let v = ring[i];
            let legs = &open[i];
            for &leg in &legs[1..legs.len() - 1] {
                next.push(b.attach(NodeKind::SingleParent, &[(6, v, leg)]));
            }
            let right = (i + 1) % m;
            let corner = b.attach(
                NodeKind::Corner,
                &[(5, v, legs[legs.len() - 1]), (6, ring[right], open[right][0])],
            );
            next.push(corner);
        }
        ring = next;
    }
    Ok(b.finish(&ring))
}

/// The central tensor followed by a chain of `links` seven-leg tensors: leg 5
/// of the central tensor feeds leg 0 of the first `T⁰`, and leg 6 of each `T⁰`
/// feeds leg 0 of the next. Qubits are numbered node by node, leg by leg.
/// One link gives the [[11,1,3]] code, two links a 16-qubit code.
pub fn chain_network(links: usize) -> TensorNetwork {
    let mut b = NetworkBuilder::new();
    let mut order = vec![0];
    let mut parent = (0, 5);
    for _ in 0..links {
        let v = b.attach(NodeKind::SingleParent, &[(0, parent.0, parent.1)]);
        order.push(v);
        parent = (v, 6);
    }
    b.finish(&order)
}

/// A holographic network together with its stabilizer code.
#[derive(Clone, Debug)]
pub struct HolographicLayout {
    pub radius: usize,
    pub network: TensorNetwork,
    pub code: StabilizerCode,
}

pub fn build_layout(radius: usize) -> Result<HolographicLayout> {
    let network = build_network(radius)?;
    let code = build_code(&network)?;
    Ok(HolographicLayout {
        radius,
        network,
        code,
    })
}

/// Stabilizer code of a network, qubits in boundary order.
///
/// Contracts one `T⁰` at a time into the growing code. Each step is a
/// two-tensor contraction where the new `T⁰` is the side put in leg-canonical
/// form on its ingoing legs (its precondition is checked at every step);
/// strings of the growing code are kept on a fixed global set of leg slots so
/// no step re-indexes the whole code.
pub fn build_code(network: &TensorNetwork) -> Result<StabilizerCode> {
    network.validate()?;
    let mut slot_of: Vec<Vec<usize>> = network
        .nodes
        .iter()
        .map(|n| vec![usize::MAX; n.kind.num_legs()])
        .collect();
    let mut total = 0;
    for node in &network.nodes {
        for o in &node.outgoing {
            slot_of[node.id][o.leg] = total;
            total += 1;
        }
    }

    let central = NodeKind::Central.code();
    let place = |p: &PauliString, node: usize, slots: &[Vec<usize>]| -> PauliString {
        let mut out = PauliString::identity(total);
        for q in p.support() {
            out.set(slots[node][q], p.get(q));
        }
        out
    };
    let mut stabs: Vec<PauliString> = central.stabilizers().iter().map(|p| place(p, 0, &slot_of)).collect();
    let mut pure: Vec<PauliString> = central.pure_errors().iter().map(|p| place(p, 0, &slot_of)).collect();
    let mut lx: Vec<PauliString> = central.logical_x().iter().map(|p| place(p, 0, &slot_of)).collect();
    let mut lz: Vec<PauliString> = central.logical_z().iter().map(|p| place(p, 0, &slot_of)).collect();

    let seven = builtin_seven_qubit_state();
    let mut canon_cache: HashMap<Vec<usize>, (StabilizerCode, LegCanonical)> = HashMap::new();
    for node in &network.nodes[1..] {
        let in_legs: Vec<usize> = node.ingoing.iter().map(|i| i.leg).collect();
        if !canon_cache.contains_key(&in_legs) {
            if !seven.distinguishes_errors_on(&in_legs)? {
                return Err(Error::PreconditionViolated { legs: in_legs });
            }
            let canon = seven.canonicalize_on_legs(&in_legs)?;
            let lc = LegCanonical::from_code(&canon, &in_legs);
            canon_cache.insert(in_legs.clone(), (canon, lc));
        }
        let (canon, lc) = &canon_cache[&in_legs];
        let bound: Vec<usize> = node
            .ingoing
            .iter()
            .map(|i| slot_of[i.parent][i.parent_leg])
            .collect();
        let out_slots: Vec<(usize, usize)> = node
            .outgoing
            .iter()
            .map(|o| (o.leg, slot_of[node.id][o.leg]))
            .collect();
        for s in stabs.iter_mut().chain(&mut pure).chain(&mut lx).chain(&mut lz) {
            let pattern = PauliString::from_ops(&bound.iter().map(|&q| s.get(q)).collect::<Vec<_>>());
            if pattern.is_identity() {
                continue;
            }
            let partner = lc.matching(&pattern);
            for &q in &bound {
                s.set(q, crate::pauli::PauliOp::I);
            }
            for &(leg, slot) in &out_slots {
                s.set(slot, partner.get(leg));
            }
        }
        let l = in_legs.len();
        stabs.extend(canon.stabilizers()[2 * l..].iter().map(|p| place(p, node.id, &slot_of)));
        pure.extend(canon.pure_errors()[2 * l..].iter().map(|p| place(p, node.id, &slot_of)));
    }

    let physical: Vec<usize> = network
        .boundary
        .iter()
        .map(|b| slot_of[b.node][b.leg])
        .collect();
    let compact = |v: Vec<PauliString>| -> Result<Vec<PauliString>> {
        v.iter().map(|p| p.restrict(&physical)).collect()
    };
    let mut code = StabilizerCode::unchecked(
        physical.len(),
        compact(stabs)?,
        compact(lx)?,
        compact(lz)?,
        compact(pure)?,
    )?;
    code.reduce_pure_errors();
    Ok(code)
}

/// Stabilizer code of a network by repeated generic two-tensor contraction.
/// Slower than [`build_code`]; used as an independent cross-check.
pub fn build_code_by_contraction(network: &TensorNetwork) -> Result<StabilizerCode> {
    network.validate()?;
    let mut code = NodeKind::Central.code();
    let mut labels: Vec<(usize, usize)> = (0..6).map(|l| (0, l)).collect();
    for node in &network.nodes[1..] {
        let left: Vec<usize> = node
            .ingoing
            .iter()
            .map(|i| {
                labels
                    .iter()
                    .position(|&x| x == (i.parent, i.parent_leg))
                    .expect("parent leg is open")
            })
            .collect();
        let right: Vec<usize> = node.ingoing.iter().map(|i| i.leg).collect();
        code = contract_codes(&code, &node.kind.code(), &LegBinding::new(left.clone(), right.clone()))?;
        let mut next: Vec<(usize, usize)> = labels
            .iter()
            .enumerate()
            .filter(|(q, _)| !left.contains(q))
            .map(|(_, &x)| x)
            .collect();
        next.extend((0..7).filter(|l| !right.contains(l)).map(|l| (node.id, l)));
        labels = next;
    }
    let perm: Vec<usize> = network
        .boundary
        .iter()
        .map(|b| labels.iter().position(|&x| x == (b.node, b.leg)).expect("boundary leg is open"))
        .collect();
    code.permute_qubits(&perm)
}

/// How a child enters its parent's contraction step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChildRole {
    /// Child fed only by this node; contributes one matrix per leg value.
    Single,
    /// Corner whose left parent is this node; contributes four matrices per
    /// leg value, one per value of its other ingoing leg.
    CornerOwned,
    /// Corner whose left parent is the neighbouring node; only this node's
    /// leg value enters, as part of the left bond index.
    CornerShared,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepChild {
    pub leg: usize,
    pub node: usize,
    pub role: ChildRole,
}

/// One node's contraction: its block `B[in][left][right]` is the sum over
/// nonzero entries of its tensor of the product of its children's matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionStep {
    pub node: usize,
    pub layer: usize,
    pub children: Vec<StepChild>,
    /// `(leg, qubit)` for physical legs.
    pub physical: Vec<(usize, usize)>,
    pub left_bond: usize,
    pub right_bond: usize,
    /// Bond dimension of the child matrices multiplied in this step.
    pub child_bond: usize,
}

/// Steps ordered outermost layer first; the last step is the central tensor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionSchedule {
    pub steps: Vec<ContractionStep>,
    /// `layer_ranges[l]` is the `(start, end)` range of the depth-`l` steps.
    pub layer_ranges: Vec<(usize, usize)>,
    /// `step_of[node]` indexes `steps`.
    pub step_of: Vec<usize>,
}

impl ContractionSchedule {
    /// Bond dimension of the blocks produced at each depth. The central step
    /// closes a trace and produces plain numbers, so depth 0 reports 1.
    pub fn bond_dims_by_layer(&self) -> Vec<usize> {
        let mut dims = vec![0; self.layer_ranges.len()];
        for step in &self.steps {
            dims[step.layer] = dims[step.layer].max(step.left_bond).max(step.right_bond);
        }
        dims
    }
}

pub fn schedule_for(network: &TensorNetwork) -> Result<ContractionSchedule> {
    network.validate()?;
    let mismatch = |msg: String| Err(Error::ScheduleMismatch(msg));
    let n_nodes = network.nodes.len();
    let mut bonds = vec![(1usize, 1usize); n_nodes];
    let mut steps = Vec::with_capacity(n_nodes);
    let mut layer_ranges = vec![(0, 0); network.depth()];
    let mut step_of = vec![0; n_nodes];
    for (layer, nodes) in network.layers.iter().enumerate().rev() {
        let start = steps.len();
        for &v in nodes {
            let node = &network.nodes[v];
            let mut children = Vec::new();
            let mut physical = Vec::new();
            for o in &node.outgoing {
                match o.target {
                    LegTarget::Physical(q) => physical.push((o.leg, q)),
                    LegTarget::Child(c) => {
                        let child = &network.nodes[c];
                        let role = match child.ingoing.as_slice() {
                            [_] => ChildRole::Single,
                            [left, _] if left.parent == v => ChildRole::CornerOwned,
                            [_, right] if right.parent == v => ChildRole::CornerShared,
                            _ => return mismatch(format!("node {c} has an unsupported parent set")),
                        };
                        children.push(StepChild {
                            leg: o.leg,
                            node: c,
                            role,
                        });
                    }
                }
            }
            let matrices: Vec<&StepChild> = children
                .iter()
                .filter(|c| c.role != ChildRole::CornerShared)
                .collect();
            for (i, c) in children.iter().enumerate() {
                let ok = match c.role {
                    ChildRole::CornerShared => i == 0,
                    ChildRole::CornerOwned => i + 1 == children.len(),
                    ChildRole::Single => true,
                };
                if !ok {
                    return mismatch(format!("node {v}: corner child {} out of place", c.node));
                }
            }
            for w in matrices.windows(2) {
                if bonds[w[0].node].1 != bonds[w[1].node].0 {
                    return mismatch(format!(
                        "node {v}: bond {} of node {} meets bond {} of node {}",
                        bonds[w[0].node].1, w[0].node, bonds[w[1].node].0, w[1].node
                    ));
                }
            }
            let inner_left = matrices.first().map_or(1, |c| bonds[c.node].0);
            let inner_right = matrices.last().map_or(1, |c| bonds[c.node].1);
            let shared = children.iter().any(|c| c.role == ChildRole::CornerShared);
            let owned = children.iter().any(|c| c.role == ChildRole::CornerOwned);
            let mut left_bond = inner_left * if shared { 4 } else { 1 };
            let mut right_bond = inner_right * if owned { 4 } else { 1 };
            if node.kind == NodeKind::Central {
                if left_bond != right_bond || shared || owned {
                    return mismatch("central tensor does not close into a trace".into());
                }
                (left_bond, right_bond) = (1, 1);
            }
            let child_bond = matrices
                .iter()
                .map(|c| bonds[c.node].0.max(bonds[c.node].1))
                .max()
                .unwrap_or(1);
            bonds[v] = (left_bond, right_bond);
            step_of[v] = steps.len();
            steps.push(ContractionStep {
                node: v,
                layer,
                children,
                physical,
                left_bond,
                right_bond,
                child_bond,
            });
        }
        layer_ranges[layer] = (start, steps.len());
    }
    Ok(ContractionSchedule {
        steps,
        layer_ranges,
        step_of,
    })
}

/// Upper bound on multiply-accumulate operations for one decode: each step
/// costs at most `2^(m+2) (m-3) D^n_mat`, with `m` the leg count of its
/// tensor and `D` the bond dimension of the matrices it multiplies.
pub fn predicted_op_count(network: &TensorNetwork, n_mat: f64) -> Result<f64> {
    let schedule = schedule_for(network)?;
    Ok(schedule
        .steps
        .iter()
        .map(|s| {
            let m = network.nodes[s.node].kind.num_legs() as i32;
            2f64.powi(m + 2) * (m - 3) as f64 * (s.child_bond as f64).powf(n_mat)
        })
        .sum())
}
