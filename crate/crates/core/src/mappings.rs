//! Elementary improving mappings on multicut and cut labelings, and the
//! switching transform for max-cut.

use serde::{Deserialize, Serialize};

use crate::dsu::UnionFind;
use crate::error::{Error, Result};
use crate::graph::{EdgeLabeling, NodeSet, ProblemInstance, ProblemKind};

/// Record of a sign flip on `delta(switched_cut)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SwitchRecord {
    /// Members of the switched side, ascending.
    pub switched_cut: Vec<usize>,
    pub constant_delta: f64,
}

fn check_multicut_input(inst: &ProblemInstance, x: &EdgeLabeling, set: &NodeSet) -> Result<()> {
    if x.len() != inst.edge_count() {
        return Err(Error::SizeMismatch {
            expected: inst.edge_count(),
            actual: x.len(),
        });
    }
    if set.universe() != inst.node_count() {
        return Err(Error::SizeMismatch {
            expected: inst.node_count(),
            actual: set.universe(),
        });
    }
    if !inst.is_multicut(x) {
        return Err(Error::contract("labeling is not a multicut"));
    }
    if !inst.is_connected(set) {
        return Err(Error::contract("node set is empty or not connected"));
    }
    Ok(())
}

/// Adds the cut `delta(U)` to a multicut: `x OR 1_delta(U)`.
pub fn cut_mapping(inst: &ProblemInstance, x: &EdgeLabeling, set: &NodeSet) -> Result<EdgeLabeling> {
    check_multicut_input(inst, x, set)?;
    let mut out = x.clone();
    for e in inst.cut_edges(set) {
        out.set(e, true);
    }
    Ok(out)
}

/// Merges every cluster of `x` that meets `U` into one cluster.
pub fn join_mapping(inst: &ProblemInstance, x: &EdgeLabeling, set: &NodeSet) -> Result<EdgeLabeling> {
    check_multicut_input(inst, x, set)?;
    let mut uf = UnionFind::new(inst.node_count());
    for (id, e) in inst.edges().iter().enumerate() {
        if !x.get(id) || (set.contains(e.u) && set.contains(e.v)) {
            uf.union(e.u, e.v);
        }
    }
    Ok(EdgeLabeling::from_vec(
        inst.edges().iter().map(|e| !uf.same(e.u, e.v)).collect(),
    ))
}

/// The join mapping for the two endpoints of edge `f`.
pub fn edge_join_mapping(inst: &ProblemInstance, x: &EdgeLabeling, f: usize) -> Result<EdgeLabeling> {
    let e = inst.edge(f);
    join_mapping(inst, x, &NodeSet::from_nodes(inst.node_count(), [e.u, e.v]))
}

/// Flips a cut labeling on `delta(U)`.
pub fn sym_diff_mapping(inst: &ProblemInstance, x: &EdgeLabeling, set: &NodeSet) -> Result<EdgeLabeling> {
    if set.universe() != inst.node_count() {
        return Err(Error::SizeMismatch {
            expected: inst.node_count(),
            actual: set.universe(),
        });
    }
    if x.len() != inst.edge_count() {
        return Err(Error::SizeMismatch {
            expected: inst.edge_count(),
            actual: x.len(),
        });
    }
    if !inst.is_cut(x) {
        return Err(Error::contract("labeling is not a cut"));
    }
    let mut out = x.clone();
    for e in inst.cut_edges(set) {
        out.set(e, !out.get(e));
    }
    Ok(out)
}

/// Negates the weights on the cut `y` and moves their sum into the objective
/// constant, so that `new.objective(x XOR y) == old.objective(x)` for every
/// cut `x`.
pub fn switch(inst: &ProblemInstance, y: &EdgeLabeling) -> Result<(ProblemInstance, SwitchRecord)> {
    if inst.kind() != ProblemKind::Maxcut {
        return Err(Error::UnsupportedKind(inst.kind().name()));
    }
    if y.len() != inst.edge_count() {
        return Err(Error::SizeMismatch {
            expected: inst.edge_count(),
            actual: y.len(),
        });
    }
    let side = inst.cut_side(y).ok_or_else(|| Error::contract("switching labeling is not a cut"))?;
    Ok(switch_side(inst, &side))
}

/// Switching on `delta(U)` for an explicit side `U`.
pub fn switch_side(inst: &ProblemInstance, side: &NodeSet) -> (ProblemInstance, SwitchRecord) {
    let mut weights = inst.weights();
    let mut delta = 0.0;
    for e in inst.cut_edges(side) {
        delta += weights[e];
        weights[e] = -weights[e];
    }
    let out = inst
        .with_weights(&weights)
        .expect("negated finite weights stay finite")
        .with_objective_constant(inst.objective_constant() + delta);
    (
        out,
        SwitchRecord {
            switched_cut: side.to_vec(),
            constant_delta: delta,
        },
    )
}
