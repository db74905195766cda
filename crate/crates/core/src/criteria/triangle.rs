//! Triangle criterion: an edge `uw` that, together with either neighbor edge
//! in a triangle `u, v, w`, dominates the surrounding cuts.

use rayon::prelude::*;

use super::{abs_sum, pos_sum, Criterion, PersistencyCertificate, Witness};
use crate::error::{Error, Result};
use crate::flow::{min_cut, FlowNetwork};
use crate::graph::{NodeSet, ProblemInstance, ProblemKind, Triangle};

/// How the cuts around the triangle are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TriangleMode {
    /// The cheaper of `delta({u})`, `delta({v, w})` and of `delta({w})`,
    /// `delta({u, v})`.
    #[default]
    Default,
    /// Minimum cuts with respect to `|theta|`, one max-flow per condition.
    Exact,
}

/// Re-checks the triangle criterion for target edge `uw`, third node `v`,
/// a cut `U` with `uv, uw` in `delta(U)` and a cut `W` with `uw, vw` in
/// `delta(W)`. For multicut both sets must be connected and the triangle as a
/// whole must outweigh its positive boundary.
pub fn check_triangle(inst: &ProblemInstance, u: usize, v: usize, w: usize, u_side: &NodeSet, w_side: &NodeSet) -> bool {
    let n = inst.node_count();
    if u_side.universe() != n || w_side.universe() != n {
        return false;
    }
    let (Some(uw), Some(uv), Some(vw)) = (inst.find_edge(u, w), inst.find_edge(u, v), inst.find_edge(v, w)) else {
        return false;
    };
    let crosses = |s: &NodeSet, a: usize, b: usize| s.contains(a) != s.contains(b);
    if !(crosses(u_side, u, v) && crosses(u_side, u, w) && crosses(w_side, u, w) && crosses(w_side, v, w)) {
        return false;
    }
    let multicut = inst.kind() == ProblemKind::Multicut;
    if multicut && !(inst.is_connected(u_side) && inst.is_connected(w_side)) {
        return false;
    }
    let rest_u = abs_sum(inst, inst.cut_edges(u_side).into_iter().filter(|&e| e != uw && e != uv));
    if inst.weight(uw) + inst.weight(uv) < rest_u {
        return false;
    }
    let rest_w = abs_sum(inst, inst.cut_edges(w_side).into_iter().filter(|&e| e != uw && e != vw));
    if inst.weight(uw) + inst.weight(vw) < rest_w {
        return false;
    }
    if multicut {
        let tri = NodeSet::from_nodes(n, [u, v, w]);
        let outer = pos_sum(inst, inst.cut_edges(&tri));
        if inst.weight(uw) + inst.weight(uv) + inst.weight(vw) < outer {
            return false;
        }
    }
    true
}

fn witness(u: usize, v: usize, w: usize, u_side: &NodeSet, w_side: &NodeSet) -> Witness {
    Witness::Triangle {
        u,
        v,
        w,
        u_side: u_side.to_vec(),
        w_side: w_side.to_vec(),
    }
}

/// Per-node `|theta|` and positive-weight sums, used to screen triangles in
/// constant time before the exact re-check.
struct NodeSums {
    abs: Vec<f64>,
    pos: Vec<f64>,
    margin: f64,
}

impl NodeSums {
    fn new(inst: &ProblemInstance) -> Self {
        let n = inst.node_count();
        let (mut abs, mut pos) = (vec![0.0; n], vec![0.0; n]);
        for e in inst.edges() {
            for x in [e.u, e.v] {
                abs[x] += e.weight.abs();
                pos[x] += e.weight.max(0.0);
            }
        }
        let margin = 1e-9 * abs.iter().fold(1.0f64, |m, v| m.max(*v));
        NodeSums { abs, pos, margin }
    }
}

/// Default-cut evaluation for target `uw` with third node `v`.
fn default_cuts(
    inst: &ProblemInstance,
    sums: &NodeSums,
    (u, v, w): (usize, usize, usize),
    (uw, uv, vw): (usize, usize, usize),
) -> Option<(NodeSet, NodeSet)> {
    let n = inst.node_count();
    let (t_uw, t_uv, t_vw) = (inst.weight(uw), inst.weight(uv), inst.weight(vw));
    let (a_uw, a_uv, a_vw) = (t_uw.abs(), t_uv.abs(), t_vw.abs());
    let m = sums.margin;
    // rest of delta({u}) and delta({v, w}) without uw, uv
    let r_u = sums.abs[u] - a_uw - a_uv;
    let r_vw = sums.abs[v] + sums.abs[w] - 2.0 * a_vw - a_uw - a_uv;
    // rest of delta({w}) and delta({u, v}) without uw, vw
    let r_w = sums.abs[w] - a_uw - a_vw;
    let r_uv = sums.abs[u] + sums.abs[v] - 2.0 * a_uv - a_uw - a_vw;
    if t_uw + t_uv + m < r_u.min(r_vw) || t_uw + t_vw + m < r_w.min(r_uv) {
        return None;
    }
    if inst.kind() == ProblemKind::Multicut {
        let outer = sums.pos[u] + sums.pos[v] + sums.pos[w] - 2.0 * (t_uw.max(0.0) + t_uv.max(0.0) + t_vw.max(0.0));
        if t_uw + t_uv + t_vw + m < outer {
            return None;
        }
    }
    let u_choices = [NodeSet::from_nodes(n, [u]), NodeSet::from_nodes(n, [v, w])];
    let w_choices = [NodeSet::from_nodes(n, [w]), NodeSet::from_nodes(n, [u, v])];
    for us in &u_choices {
        for ws in &w_choices {
            if check_triangle(inst, u, v, w, us, ws) {
                return Some((us.clone(), ws.clone()));
            }
        }
    }
    None
}

/// Minimum `|theta|` cut separating `a` from both `b` and `c`, restricted to
/// the component of `a` for multicut.
fn exact_cut(inst: &ProblemInstance, a: usize, b: usize, c: usize) -> Result<NodeSet> {
    let n = inst.node_count();
    let sink = n;
    let mut net = FlowNetwork::new(n + 1);
    let mut total = 0.0;
    for e in inst.edges() {
        let cap = e.weight.abs();
        total += cap;
        if cap > 0.0 {
            net.add_edge(e.u, e.v, cap)?;
        }
    }
    let big = total + 1.0;
    net.add_edge(b, sink, big)?;
    net.add_edge(c, sink, big)?;
    let cut = min_cut(&net, a, sink)?;
    let mut side = NodeSet::from_nodes(n, cut.side.iter().filter(|&x| x < n));
    if inst.kind() == ProblemKind::Multicut {
        let mut part = NodeSet::empty(n);
        part.insert(a);
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            for &(y, _) in inst.neighbors(x) {
                if side.contains(y) && !part.contains(y) {
                    part.insert(y);
                    stack.push(y);
                }
            }
        }
        side = part;
    }
    Ok(side)
}

fn evaluate(
    inst: &ProblemInstance,
    sums: &NodeSums,
    nodes: (usize, usize, usize),
    edges: (usize, usize, usize),
    mode: TriangleMode,
) -> Result<Option<PersistencyCertificate>> {
    let (u, v, w) = nodes;
    let found = match mode {
        TriangleMode::Default => default_cuts(inst, sums, nodes, edges),
        TriangleMode::Exact => {
            let us = exact_cut(inst, u, v, w)?;
            let ws = exact_cut(inst, w, u, v)?;
            check_triangle(inst, u, v, w, &us, &ws).then_some((us, ws))
        }
    };
    Ok(found.map(|(us, ws)| PersistencyCertificate::new(edges.0, 0, Criterion::Triangle, witness(u, v, w, &us, &ws))))
}

/// Evaluates the criterion for each of the three edges of `tri` as target.
pub fn triangle_criterion(inst: &ProblemInstance, tri: &Triangle, mode: TriangleMode) -> Result<Vec<PersistencyCertificate>> {
    let [a, b, c] = tri.nodes;
    let (Some(ab), Some(ac), Some(bc)) = (inst.find_edge(a, b), inst.find_edge(a, c), inst.find_edge(b, c)) else {
        return Err(Error::contract(format!("nodes {a}, {b}, {c} do not form a triangle")));
    };
    let sums = NodeSums::new(inst);
    let mut out = Vec::new();
    // (target u-w, third v)
    for (nodes, edges) in [
        ((a, c, b), (ab, ac, bc)),
        ((a, b, c), (ac, ab, bc)),
        ((b, a, c), (bc, ab, ac)),
    ] {
        if let Some(cert) = evaluate(inst, &sums, nodes, edges, mode)? {
            out.push(cert);
        }
    }
    out.sort_by_key(|c| c.edge);
    Ok(out)
}

/// The criterion over all triangles: for every edge `uw`, third nodes `v`
/// are tried in ascending order and the first success is reported.
pub fn triangle_criterion_all(inst: &ProblemInstance, mode: TriangleMode, skip: &[bool]) -> Vec<PersistencyCertificate> {
    let sums = NodeSums::new(inst);
    (0..inst.edge_count())
        .into_par_iter()
        .filter(|&f| !skip.get(f).copied().unwrap_or(false))
        .filter_map(|f| {
            let e = inst.edge(f);
            let (nu, nw) = (inst.neighbors(e.u), inst.neighbors(e.v));
            let (mut i, mut j) = (0, 0);
            while i < nu.len() && j < nw.len() {
                match nu[i].0.cmp(&nw[j].0) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        let v = nu[i].0;
                        let edges = (f, nu[i].1, nw[j].1);
                        if let Ok(Some(cert)) = evaluate(inst, &sums, (e.u, v, e.v), edges, mode) {
                            return Some(cert);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
            None
        })
        .collect()
}
