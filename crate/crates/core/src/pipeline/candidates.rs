//! Candidate subgraphs for the subgraph criteria.

use std::collections::BTreeSet;

use crate::graph::{EdgeLabeling, NodeSet, ProblemInstance, ProblemKind, Subgraph};
use crate::packing::{reduced_costs, DualPacking, SLACK_EPS};

fn components(inst: &ProblemInstance, keep: impl Fn(usize) -> bool, out: &mut BTreeSet<Vec<usize>>) {
    for block in inst.connected_components(keep).blocks() {
        if block.len() >= 2 {
            out.insert(block);
        }
    }
}

/// Components of the primal solution: clusters for multicut, and for
/// max-cut the components of the edges that the cut treats favourably
/// (positive and uncut, or negative and cut).
pub fn greedy_candidates(inst: &ProblemInstance, primal: &EdgeLabeling) -> Vec<Subgraph> {
    let mut out = BTreeSet::new();
    match inst.kind() {
        ProblemKind::Multicut => components(inst, |e| !primal.get(e), &mut out),
        ProblemKind::Maxcut => components(
            inst,
            |e| {
                let w = inst.weight(e);
                (w > 0.0 && !primal.get(e)) || (w < 0.0 && primal.get(e))
            },
            &mut out,
        ),
    }
    induce(inst, out)
}

/// Components of the positive residual graph `(V, {e : reduced cost > 0})`.
/// Reduced costs at or below the packing's saturation threshold count as
/// zero, as they do during packing.
pub fn residual_candidates(inst: &ProblemInstance, packing: &DualPacking) -> Vec<Subgraph> {
    let Ok(rc) = reduced_costs(inst, packing) else {
        return Vec::new();
    };
    let mut out = BTreeSet::new();
    components(inst, |e| rc.get(e) > SLACK_EPS, &mut out);
    induce(inst, out)
}

/// Union of the greedy and residual candidates, each connected with at least
/// two nodes, deduplicated and ordered by node list.
pub fn generate_candidates(inst: &ProblemInstance, primal: &EdgeLabeling, packing: &DualPacking) -> Vec<Subgraph> {
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    for h in greedy_candidates(inst, primal).into_iter().chain(residual_candidates(inst, packing)) {
        all.insert(h.nodes.to_vec());
    }
    induce(inst, all)
}

fn induce(inst: &ProblemInstance, sets: BTreeSet<Vec<usize>>) -> Vec<Subgraph> {
    sets.into_iter()
        .map(|nodes| Subgraph::induced(inst, NodeSet::from_nodes(inst.node_count(), nodes)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Partition;
    use crate::packing::icp;

    /// Two positive 5-cliques joined by light negative edges.
    fn two_clusters() -> ProblemInstance {
        let mut e = Vec::new();
        for base in [0, 5] {
            for a in 0..5 {
                for b in a + 1..5 {
                    e.push((base + a, base + b, 2.0));
                }
            }
        }
        for a in 0..5 {
            e.push((a, 5 + a, -1.0));
        }
        ProblemInstance::new(ProblemKind::Multicut, 10, e).unwrap()
    }

    #[test]
    fn clusters_are_recovered() {
        let g = two_clusters();
        let p = icp(&g);
        // no cycle has exactly one negative edge, so reduced costs are the weights
        let res = residual_candidates(&g, &p);
        let nodes: Vec<Vec<usize>> = res.iter().map(|h| h.nodes.to_vec()).collect();
        assert_eq!(nodes, vec![vec![0, 1, 2, 3, 4], vec![5, 6, 7, 8, 9]]);
        let x = EdgeLabeling::from_partition(&g, &Partition::from_labels(vec![0, 0, 0, 0, 0, 1, 1, 1, 1, 1]));
        assert_eq!(generate_candidates(&g, &x, &p), res);
    }

    #[test]
    fn zero_residual_leaves_greedy_components() {
        let g = ProblemInstance::new(ProblemKind::Multicut, 3, vec![(0, 1, -2.0), (0, 2, 1.0), (1, 2, 1.0)]).unwrap();
        let p = icp(&g);
        assert!(residual_candidates(&g, &p).is_empty());
        let x = EdgeLabeling::from_partition(&g, &Partition::from_labels(vec![0, 1, 1]));
        let all = generate_candidates(&g, &x, &p);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].nodes.to_vec(), vec![1, 2]);
    }
}
