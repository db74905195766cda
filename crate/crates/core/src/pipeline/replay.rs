//! Re-checking certificates on the current graph, both during a run (after
//! earlier certificates of the same round changed the graph) and when
//! verifying a recorded run.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::criteria::{
    boundary_edge_criterion, boundary_refined_criterion, check_edge_cut, check_triangle, gplus_decomposition,
    maxcut_subgraph_all, multicut_subgraph_criterion, reduced_cost_fixing, Criterion, PersistencyCertificate,
    Witness,
};
use crate::error::Result;
use crate::graph::{EdgeLabeling, NodeSet, Partition, ProblemInstance, ProblemKind, Subgraph};
use crate::packing::{zero_optimum_check, icp, icp_subgraph};

use super::work::{View, WorkGraph};
use super::Step;

/// Maps a certificate found on `view` to original edge ids, original
/// variable values and original node ids.
pub(crate) fn to_original(
    work: &WorkGraph,
    view: &View,
    reps: &[usize],
    cert: PersistencyCertificate,
    round: usize,
) -> PersistencyCertificate {
    let edge = reps[cert.edge];
    let (a, b) = work.orig_edge(edge);
    let beta = cert.beta ^ u8::from(work.flip(a) != work.flip(b));
    let expand = |nodes: &[usize]| work.expand(nodes.iter().map(|&i| view.roots[i]));
    let rep = |i: usize| work.min_member(view.roots[i]);
    let witness = match cert.witness {
        Witness::Cut { side } => Witness::Cut { side: expand(&side) },
        Witness::Triangle { u, v, w, u_side, w_side } => Witness::Triangle {
            u: rep(u),
            v: rep(v),
            w: rep(w),
            u_side: expand(&u_side),
            w_side: expand(&w_side),
        },
        Witness::Subgraph { nodes, rhs, achieved, alpha } => Witness::Subgraph {
            nodes: expand(&nodes),
            rhs,
            achieved,
            alpha,
        },
        w @ Witness::DualGap { .. } => w,
    };
    PersistencyCertificate {
        edge,
        beta,
        criterion: cert.criterion,
        witness,
        round,
    }
}

/// The current classes of the certificate's edge and the certified value of
/// the current edge variable, if the edge still exists.
pub(crate) fn current_edge(work: &WorkGraph, cert: &PersistencyCertificate) -> Option<(usize, usize, u8)> {
    let (a, b) = work.orig_edge(cert.edge);
    let (ra, rb) = (work.root(a), work.root(b));
    if ra == rb || work.weight(ra, rb).is_none() {
        return None;
    }
    Some((ra, rb, cert.beta ^ u8::from(work.flip(a) != work.flip(b))))
}

fn local_set(view: &View, roots: &[usize]) -> NodeSet {
    NodeSet::from_nodes(view.inst.node_count(), roots.iter().filter_map(|&r| view.local(r)))
}

/// Re-checks a certificate with a cut, triangle or single-edge witness.
/// Returns the current edge classes and value when it still holds.
pub(crate) fn replay_single(work: &WorkGraph, cert: &PersistencyCertificate) -> Option<(usize, usize, u8)> {
    let (ra, rb, beta) = current_edge(work, cert)?;
    let ok = match (&cert.witness, cert.criterion) {
        (
            Witness::Cut { side },
            Criterion::EdgeE1 | Criterion::EdgeE2 | Criterion::EdgeE3 | Criterion::GplusDecomp,
        ) => {
            let roots = work.translate(side)?;
            let view = work.local_view(&roots);
            let f = view.inst.find_edge(view.local(ra)?, view.local(rb)?)?;
            check_edge_cut(&view.inst, f, &local_set(&view, &roots)).is_some_and(|(_, b)| b == beta)
        }
        (Witness::Triangle { u, v, w, u_side, w_side }, Criterion::Triangle) => {
            let (ru, rv, rw) = (work.root(*u), work.root(*v), work.root(*w));
            let (us, ws) = (work.translate(u_side)?, work.translate(w_side)?);
            let target = (ra.min(rb), ra.max(rb));
            if beta != 0 || (ru.min(rw), ru.max(rw)) != target || rv == ru || rv == rw {
                return None;
            }
            let mut core = vec![ru, rv, rw];
            core.extend(us.iter().chain(&ws).copied());
            core.sort_unstable();
            core.dedup();
            let view = work.local_view(&core);
            let (lu, lv, lw) = (view.local(ru)?, view.local(rv)?, view.local(rw)?);
            let tri = [lu, lv, lw];
            let pairs = [(0, 1), (0, 2), (1, 2)];
            pairs.iter().all(|&(i, j)| view.inst.find_edge(tri[i], tri[j]).is_some())
                && check_triangle(&view.inst, lu, lv, lw, &local_set(&view, &us), &local_set(&view, &ws))
        }
        (Witness::Subgraph { .. }, Criterion::BoundaryEdge) => {
            let view = work.local_view(&[ra, rb]);
            let f = view.inst.find_edge(view.local(ra)?, view.local(rb)?)?;
            beta == 0 && boundary_edge_criterion(&view.inst, f).is_some()
        }
        _ => false,
    };
    ok.then_some((ra, rb, beta))
}

/// Re-runs a subgraph criterion on the classes covering `nodes` and returns
/// every certificate it yields on the current graph.
pub(crate) fn replay_subgraph(
    work: &WorkGraph,
    criterion: Criterion,
    nodes: &[usize],
    round: usize,
) -> Result<Vec<PersistencyCertificate>> {
    let Some(roots) = work.translate(nodes) else {
        return Ok(Vec::new());
    };
    if roots.len() < 2 {
        return Ok(Vec::new());
    }
    let view = work.local_view(&roots);
    let h = Subgraph::induced(&view.inst, local_set(&view, &roots));
    if !h.is_connected(&view.inst) {
        return Ok(Vec::new());
    }
    let packing = icp_subgraph(&view.inst, &h)?;
    if !zero_optimum_check(&view.inst, &h, &packing) {
        return Ok(Vec::new());
    }
    let certs = match criterion {
        Criterion::SubgraphMc => multicut_subgraph_criterion(&view.inst, &h, &packing)?,
        Criterion::BoundarySubgraph => boundary_refined_criterion(&view.inst, &h, &packing)?,
        Criterion::SubgraphMaxcut => maxcut_subgraph_all(&view.inst, &h, &packing)?,
        _ => Vec::new(),
    };
    if certs.is_empty() {
        return Ok(certs);
    }
    let reps = work.representative_edges(&view);
    Ok(certs
        .into_iter()
        .map(|c| to_original(work, &view, &reps, c, round))
        .collect())
}

/// Applies a certified value to the current edge between classes `a` and
/// `b`: contraction for zero; for max-cut a switch around the class with the
/// smaller member followed by contraction; nothing for a multicut one.
/// Returns whether the graph changed.
pub(crate) fn apply_certificate(work: &mut WorkGraph, a: usize, b: usize, beta: u8) -> bool {
    match (beta, work.kind()) {
        (0, _) => {
            work.contract(a, b);
            true
        }
        (_, ProblemKind::Maxcut) => {
            let lower = if work.min_member(a) < work.min_member(b) { a } else { b };
            work.switch(&[lower]);
            work.contract(a, b);
            true
        }
        _ => false,
    }
}

/// Result of replaying a recorded run.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerifyOutcome {
    /// Certificates re-checked.
    pub checked: usize,
    /// One message per certificate or step that did not replay.
    pub failures: Vec<String>,
    pub remaining_nodes: usize,
    pub remaining_edges: usize,
}

impl VerifyOutcome {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn describe(c: &PersistencyCertificate) -> String {
    format!("edge {} = {} ({}, round {})", c.edge, c.beta, c.criterion, c.round)
}

/// Replays a step log on `original`, re-checking every certificate against
/// the graph it was applied to.
pub fn verify_steps(original: &ProblemInstance, steps: &[Step]) -> Result<VerifyOutcome> {
    let mut work = WorkGraph::new(original);
    let mut snapshot: Option<WorkGraph> = None;
    let mut out = VerifyOutcome::default();
    for (i, step) in steps.iter().enumerate() {
        match step {
            Step::Switch { nodes, .. } => match work.translate(nodes) {
                Some(roots) if work.kind() == ProblemKind::Maxcut => work.switch(&roots),
                _ => out.failures.push(format!("step {i}: switch set does not match the current classes")),
            },
            Step::Split { certificates, .. } => {
                for c in certificates {
                    out.checked += 1;
                    let ok = c.criterion == Criterion::GplusDecomp && replay_single(&work, c).is_some_and(|t| t.2 == 1);
                    if !ok {
                        out.failures.push(format!("step {i}: {} does not replay", describe(c)));
                    }
                }
                for c in certificates {
                    if let Some((ra, rb, _)) = current_edge(&work, c) {
                        work.delete(ra, rb);
                    }
                }
                let view = work.snapshot();
                if !gplus_decomposition(&view.inst)?.0.is_empty() {
                    out.failures.push(format!("step {i}: split leaves negative edges between components"));
                }
            }
            Step::Snapshot { .. } => snapshot = Some(work.clone()),
            Step::Single { certificate, .. } => {
                out.checked += 1;
                match replay_single(&work, certificate) {
                    Some((ra, rb, beta)) => {
                        apply_certificate(&mut work, ra, rb, beta);
                    }
                    None => out.failures.push(format!("step {i}: {} does not replay", describe(certificate))),
                }
            }
            Step::Batch {
                round,
                criterion,
                nodes,
                certificates,
            } => {
                let fresh: BTreeSet<(usize, u8)> = replay_subgraph(&work, *criterion, nodes, *round)?
                    .into_iter()
                    .map(|c| (c.edge, c.beta))
                    .collect();
                for c in certificates {
                    out.checked += 1;
                    if !fresh.contains(&(c.edge, c.beta)) {
                        out.failures.push(format!("step {i}: {} does not replay", describe(c)));
                    }
                }
                for c in certificates {
                    if let Some((ra, rb, beta)) = current_edge(&work, c) {
                        apply_certificate(&mut work, ra, rb, beta);
                    }
                }
            }
            Step::Fix {
                round,
                primal_labels,
                certificates,
            } => {
                out.checked += certificates.len();
                let fresh = match &snapshot {
                    Some(s) => recompute_fixing(s, primal_labels, *round)?,
                    None => None,
                };
                match fresh {
                    Some(fresh) => {
                        for c in certificates {
                            if !fresh.contains(&(c.edge, c.beta)) {
                                out.failures.push(format!("step {i}: {} does not replay", describe(c)));
                            }
                        }
                    }
                    None => out.failures.push(format!("step {i}: primal labels do not describe a solution")),
                }
                for c in certificates {
                    if let Some((ra, rb, beta)) = current_edge(&work, c) {
                        apply_certificate(&mut work, ra, rb, beta);
                    }
                }
            }
        }
    }
    out.remaining_nodes = work.node_count();
    out.remaining_edges = work.edge_count();
    Ok(out)
}

/// Reduced cost fixing on the snapshot `s` with the recorded primal.
fn recompute_fixing(s: &WorkGraph, labels: &[usize], round: usize) -> Result<Option<BTreeSet<(usize, u8)>>> {
    let view = s.snapshot();
    let inst = &view.inst;
    if labels.len() != s.flips().len() {
        return Ok(None);
    }
    let mut per_node = Vec::with_capacity(inst.node_count());
    for &root in &view.roots {
        let members = s.expand([root]);
        let l = labels[members[0]];
        if members.iter().any(|&m| labels[m] != l) {
            return Ok(None);
        }
        per_node.push(l);
    }
    let x = match inst.kind() {
        ProblemKind::Multicut => EdgeLabeling::from_partition(inst, &Partition::from_labels(per_node)),
        ProblemKind::Maxcut => {
            let side = (0..inst.node_count()).filter(|&i| per_node[i] == 1);
            EdgeLabeling::from_cut(inst, &NodeSet::from_nodes(inst.node_count(), side))
        }
    };
    let packing = icp(inst);
    let certs = match reduced_cost_fixing(inst, &x, &packing) {
        Ok(c) => c,
        Err(e) if e.is_input_error() => return Ok(None),
        Err(e) => return Err(e),
    };
    let reps = s.representative_edges(&view);
    Ok(Some(
        certs
            .into_iter()
            .map(|c| to_original(s, &view, &reps, c, round))
            .map(|c| (c.edge, c.beta))
            .collect(),
    ))
}
