//! Single-edge criterion: an edge whose weight dominates a cut through it.

use rayon::prelude::*;

use super::{abs_sum, normalize, pos_sum, Criterion, PersistencyCertificate, Witness};
use crate::flow::{gomory_hu, FlowNetwork, GomoryHuTree};
use crate::graph::{NodeSet, ProblemInstance, ProblemKind};

/// Checks the edge criterion for edge `f` and the cut `delta(U)`. Returns the
/// criterion and the certified value if the inequality holds.
///
/// Multicut needs `U` to be connected; for a positive `f` the inequality is
/// `theta_f >= sum |theta|` over the rest of the cut, for a negative `f` it
/// is `|theta_f| >=` the positive weight of the cut. Max-cut compares `|theta_f|`
/// with the absolute weight of the rest of the cut.
pub fn check_edge_cut(inst: &ProblemInstance, f: usize, side: &NodeSet) -> Option<(Criterion, u8)> {
    if f >= inst.edge_count() || side.universe() != inst.node_count() {
        return None;
    }
    let e = inst.edge(f);
    if side.contains(e.u) == side.contains(e.v) {
        return None;
    }
    let cut = inst.cut_edges(side);
    let rest = || cut.iter().copied().filter(|&g| g != f);
    match inst.kind() {
        ProblemKind::Multicut => {
            if !inst.is_connected(side) {
                return None;
            }
            if e.weight >= 0.0 {
                (e.weight >= abs_sum(inst, rest())).then_some((Criterion::EdgeE1, 0))
            } else {
                (-e.weight >= pos_sum(inst, rest())).then_some((Criterion::EdgeE2, 1))
            }
        }
        ProblemKind::Maxcut => {
            let beta = u8::from(e.weight < 0.0);
            (e.weight.abs() >= abs_sum(inst, rest())).then_some((Criterion::EdgeE3, beta))
        }
    }
}

fn certificate(inst: &ProblemInstance, f: usize, side: NodeSet) -> Option<PersistencyCertificate> {
    let (criterion, beta) = check_edge_cut(inst, f, &side)?;
    Some(PersistencyCertificate::new(
        f,
        beta,
        criterion,
        Witness::Cut { side: side.to_vec() },
    ))
}

/// Per-node sums of `|theta|` and of positive weights.
fn node_sums(inst: &ProblemInstance) -> (Vec<f64>, Vec<f64>) {
    let n = inst.node_count();
    let (mut abs, mut pos) = (vec![0.0; n], vec![0.0; n]);
    for e in inst.edges() {
        for x in [e.u, e.v] {
            abs[x] += e.weight.abs();
            pos[x] += e.weight.max(0.0);
        }
    }
    (abs, pos)
}

/// Slack used to decide which approximate checks deserve an exact re-check.
fn screen_margin(values: &[f64]) -> f64 {
    1e-9 * values.iter().fold(1.0f64, |m, v| m.max(v.abs()))
}

/// The criterion with `U = {u}` or `U = {v}` for every edge `uv`.
pub fn edge_single_node_pass(inst: &ProblemInstance) -> Vec<PersistencyCertificate> {
    let (abs, pos) = node_sums(inst);
    let margin = screen_margin(&abs);
    let kind = inst.kind();
    let certs: Vec<PersistencyCertificate> = (0..inst.edge_count())
        .into_par_iter()
        .filter_map(|f| {
            let e = inst.edge(f);
            let w = e.weight;
            [e.u, e.v].into_iter().find_map(|x| {
                let promising = match kind {
                    ProblemKind::Multicut if w >= 0.0 => w + margin >= abs[x] - w,
                    ProblemKind::Multicut => -w + margin >= pos[x],
                    ProblemKind::Maxcut => w.abs() + margin >= abs[x] - w.abs(),
                };
                if !promising {
                    return None;
                }
                certificate(inst, f, NodeSet::from_nodes(inst.node_count(), [x]))
            })
        })
        .collect();
    normalize(certs)
}

/// The component of `x` in the subgraph induced by `side`. Its cut is a
/// subset of `delta(side)` and still separates the endpoints.
fn connected_part(inst: &ProblemInstance, side: &NodeSet, x: usize) -> NodeSet {
    let mut out = NodeSet::empty(inst.node_count());
    out.insert(x);
    let mut stack = vec![x];
    while let Some(a) = stack.pop() {
        for &(b, _) in inst.neighbors(a) {
            if side.contains(b) && !out.contains(b) {
                out.insert(b);
                stack.push(b);
            }
        }
    }
    out
}

fn tree_pass(
    inst: &ProblemInstance,
    tree: &GomoryHuTree,
    edges: &[usize],
    passes: impl Fn(f64, f64) -> bool + Sync,
) -> Vec<PersistencyCertificate> {
    let n = inst.node_count();
    let mut by_source: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &f in edges {
        by_source[inst.edge(f).u].push(f);
    }
    (0..n)
        .into_par_iter()
        .filter(|&u| !by_source[u].is_empty())
        .flat_map_iter(|u| {
            let minima = tree.path_minima_from(u);
            by_source[u]
                .iter()
                .filter_map(|&f| {
                    let e = inst.edge(f);
                    if !passes(e.weight, minima[e.v]) {
                        return None;
                    }
                    let mut side = tree.cut_side(e.u, e.v);
                    if inst.kind() == ProblemKind::Multicut {
                        side = connected_part(inst, &side, e.u);
                    }
                    certificate(inst, f, side)
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

fn network(inst: &ProblemInstance, cap: impl Fn(f64) -> f64) -> FlowNetwork {
    let mut net = FlowNetwork::new(inst.node_count());
    for e in inst.edges() {
        let c = cap(e.weight);
        if c > 0.0 {
            net.add_edge(e.u, e.v, c).expect("capacities are finite and nonnegative");
        }
    }
    net
}

/// All `u`-`v` cuts at once through Gomory-Hu trees. Since `f = uv` lies in
/// every such cut, the inequalities become `2 theta_f >= mincut_|theta|(u, v)`
/// (positive multicut edges and max-cut) and `|theta_f| >= mincut_{G+}(u, v)`
/// (negative multicut edges). Only edges listed in `edges` are examined.
pub fn edge_gomory_hu_pass(inst: &ProblemInstance, edges: &[usize]) -> Vec<PersistencyCertificate> {
    if inst.node_count() < 2 || edges.is_empty() {
        return Vec::new();
    }
    let mut certs = Vec::new();
    let abs_tree = gomory_hu(&network(inst, f64::abs)).expect("network built from finite weights");
    match inst.kind() {
        ProblemKind::Multicut => {
            let (pos_edges, neg_edges): (Vec<usize>, Vec<usize>) =
                edges.iter().partition(|&&f| inst.weight(f) >= 0.0);
            certs.extend(tree_pass(inst, &abs_tree, &pos_edges, |w, cut| 2.0 * w >= cut));
            if !neg_edges.is_empty() {
                let pos_tree = gomory_hu(&network(inst, |w| w.max(0.0))).expect("finite weights");
                certs.extend(tree_pass(inst, &pos_tree, &neg_edges, |w, cut| -w >= cut));
            }
        }
        ProblemKind::Maxcut => {
            certs.extend(tree_pass(inst, &abs_tree, edges, |w, cut| 2.0 * w.abs() >= cut));
        }
    }
    normalize(certs)
}

/// Both passes: single-node cuts for every edge, then Gomory-Hu cuts for the
/// edges that are still open.
pub fn edge_criterion_all(inst: &ProblemInstance) -> Vec<PersistencyCertificate> {
    let mut certs = edge_single_node_pass(inst);
    let mut done = vec![false; inst.edge_count()];
    for c in &certs {
        done[c.edge] = true;
    }
    let open: Vec<usize> = (0..inst.edge_count()).filter(|&f| !done[f]).collect();
    certs.extend(edge_gomory_hu_pass(inst, &open));
    normalize(certs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3(kind: ProblemKind, w: [f64; 3]) -> ProblemInstance {
        // edges uv, uw, vw with u=0, v=1, w=2
        ProblemInstance::new(kind, 3, vec![(0, 1, w[0]), (0, 2, w[1]), (1, 2, w[2])]).unwrap()
    }

    #[test]
    fn positive_multicut_edge() {
        let g = k3(ProblemKind::Multicut, [5.0, 2.0, -1.0]);
        let u = NodeSet::from_nodes(3, [0]);
        assert_eq!(check_edge_cut(&g, 0, &u), Some((Criterion::EdgeE1, 0)));
        let certs = edge_criterion_all(&g);
        assert!(certs.iter().any(|c| c.edge == 0 && c.beta == 0));
    }

    #[test]
    fn negative_multicut_edge() {
        let g = k3(ProblemKind::Multicut, [-5.0, 2.0, 1.0]);
        let u = NodeSet::from_nodes(3, [0]);
        assert_eq!(check_edge_cut(&g, 0, &u), Some((Criterion::EdgeE2, 1)));
    }

    #[test]
    fn maxcut_edge() {
        let g = k3(ProblemKind::Maxcut, [-5.0, 2.0, 1.0]);
        let u = NodeSet::from_nodes(3, [0]);
        assert_eq!(check_edge_cut(&g, 0, &u), Some((Criterion::EdgeE3, 1)));
    }

    #[test]
    fn rejects_bad_witnesses() {
        let g = k3(ProblemKind::Multicut, [5.0, 2.0, -1.0]);
        assert_eq!(check_edge_cut(&g, 0, &NodeSet::from_nodes(3, [0, 1])), None);
        let path = ProblemInstance::new(ProblemKind::Multicut, 3, vec![(0, 1, 9.0), (1, 2, 1.0)]).unwrap();
        // {0, 2} is not connected
        assert_eq!(check_edge_cut(&path, 0, &NodeSet::from_nodes(3, [0, 2])), None);
        let path = path.with_weights(&[9.0, 1.0]).unwrap();
        assert!(check_edge_cut(&path, 0, &NodeSet::from_nodes(3, [0])).is_some());
    }

    #[test]
    fn gomory_hu_pass_finds_wider_cuts() {
        // the edge 1-2 only wins against the cut around the pair {0, 1}
        let g = ProblemInstance::new(
            ProblemKind::Multicut,
            4,
            vec![(0, 1, 10.0), (1, 2, 4.0), (0, 3, 1.0), (1, 3, 1.0), (2, 3, 10.0)],
        )
        .unwrap();
        let f = g.find_edge(1, 2).unwrap();
        let single = edge_single_node_pass(&g);
        assert!(!single.iter().any(|c| c.edge == f));
        let all = edge_criterion_all(&g);
        let cert = all.iter().find(|c| c.edge == f).unwrap();
        let Witness::Cut { side } = &cert.witness else { panic!() };
        let side = NodeSet::from_nodes(4, side.iter().copied());
        assert!(check_edge_cut(&g, f, &side).is_some());
    }
}
