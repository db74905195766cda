//! Exhaustive ground truth for small instances.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::criteria::PersistencyCertificate;
use crate::error::{Error, Result};
use crate::graph::{EdgeLabeling, Partition, ProblemInstance, ProblemKind};

/// Largest multicut instance accepted (partitions of 10 nodes: 115975).
pub const MAX_MULTICUT_NODES: usize = 10;
/// Largest max-cut instance accepted (`2^19` bipartitions).
pub const MAX_MAXCUT_NODES: usize = 20;
/// Largest edge count for the labeling enumeration path.
pub const MAX_LABELING_EDGES: usize = 22;

/// The optimum objective (including the constant) and every optimal labeling
/// in lexicographic order. Labelings within `1e-9 (1 + |opt|)` of the
/// optimum count as optimal.
#[derive(Clone, Debug, PartialEq)]
pub struct Optima {
    pub value: f64,
    pub labelings: Vec<EdgeLabeling>,
}

fn tolerance(value: f64) -> f64 {
    1e-9 * (1.0 + value.abs())
}

fn check_size(inst: &ProblemInstance) -> Result<()> {
    let (n, cap) = match inst.kind() {
        ProblemKind::Multicut => (inst.node_count(), MAX_MULTICUT_NODES),
        ProblemKind::Maxcut => (inst.node_count(), MAX_MAXCUT_NODES),
    };
    if n > cap {
        return Err(Error::SizeCap(format!(
            "{} oracle supports at most {cap} nodes, got {n}",
            inst.kind()
        )));
    }
    Ok(())
}

/// Calls `visit` with every partition of `0..n` as a restricted growth
/// string: `labels[0] = 0` and `labels[i] <= 1 + max(labels[..i])`.
pub fn for_each_partition(n: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(labels: &mut Vec<usize>, n: usize, blocks: usize, visit: &mut dyn FnMut(&[usize])) {
        if labels.len() == n {
            visit(labels);
            return;
        }
        for l in 0..=blocks {
            labels.push(l);
            rec(labels, n, blocks.max(l + 1), visit);
            labels.pop();
        }
    }
    if n == 0 {
        visit(&[]);
        return;
    }
    let mut labels = Vec::with_capacity(n);
    labels.push(0);
    rec(&mut labels, n, 1, &mut visit);
}

/// Every feasible labeling exactly once, in lexicographic order.
pub fn feasible_labelings(inst: &ProblemInstance) -> Result<Vec<EdgeLabeling>> {
    check_size(inst)?;
    let mut seen = BTreeSet::new();
    match inst.kind() {
        ProblemKind::Multicut => for_each_partition(inst.node_count(), |labels| {
            let p = Partition::from_labels(labels.to_vec());
            seen.insert(EdgeLabeling::from_partition(inst, &p).as_slice().to_vec());
        }),
        ProblemKind::Maxcut => {
            let n = inst.node_count();
            let half = if n == 0 { 1u64 } else { 1u64 << (n - 1) };
            let found: Vec<Vec<bool>> = (0..half)
                .into_par_iter()
                .map(|mask| cut_labeling(inst, mask))
                .collect();
            seen.extend(found);
        }
    }
    Ok(seen.into_iter().map(EdgeLabeling::from_vec).collect())
}

/// The cut labeling of the node set `{i : bit i of mask}`.
fn cut_labeling(inst: &ProblemInstance, mask: u64) -> Vec<bool> {
    inst.edges()
        .iter()
        .map(|e| (mask >> e.u & 1) != (mask >> e.v & 1))
        .collect()
}

fn optima_of(inst: &ProblemInstance, labelings: Vec<EdgeLabeling>) -> Result<Optima> {
    let values: Vec<f64> = labelings
        .par_iter()
        .map(|x| inst.objective(x))
        .collect::<Result<_>>()?;
    let value = values.iter().copied().fold(f64::INFINITY, f64::min);
    let tol = tolerance(value);
    let labelings = labelings
        .into_iter()
        .zip(&values)
        .filter(|(_, &v)| v <= value + tol)
        .map(|(x, _)| x)
        .collect();
    Ok(Optima { value, labelings })
}

/// Optimum by enumerating partitions (multicut, up to 10 nodes) or
/// bipartitions (max-cut, up to 20 nodes).
pub fn enumerate_optima(inst: &ProblemInstance) -> Result<Optima> {
    optima_of(inst, feasible_labelings(inst)?)
}

/// Independent second path: all `2^m` edge labelings filtered by the
/// feasibility test. Limited to 22 edges.
pub fn enumerate_optima_by_labelings(inst: &ProblemInstance) -> Result<Optima> {
    let m = inst.edge_count();
    if m > MAX_LABELING_EDGES {
        return Err(Error::SizeCap(format!(
            "labeling enumeration supports at most {MAX_LABELING_EDGES} edges, got {m}"
        )));
    }
    let feasible: Vec<EdgeLabeling> = (0..1u64 << m)
        .into_par_iter()
        .map(|mask| EdgeLabeling::from_vec((0..m).map(|e| mask >> e & 1 == 1).collect()))
        .filter(|x| inst.is_feasible(x).unwrap_or(false))
        .collect();
    let mut feasible = feasible;
    feasible.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
    optima_of(inst, feasible)
}

/// Whether the certificate holds: some optimum has `x_f = beta`, or every
/// optimum for certificates that claim all optima.
pub fn verify_certificate(inst: &ProblemInstance, cert: &PersistencyCertificate) -> Result<bool> {
    verify_against(inst, &enumerate_optima(inst)?, cert)
}

/// [`verify_certificate`] against precomputed optima.
pub fn verify_against(inst: &ProblemInstance, optima: &Optima, cert: &PersistencyCertificate) -> Result<bool> {
    if cert.edge >= inst.edge_count() || cert.beta > 1 {
        return Ok(false);
    }
    let value = cert.beta == 1;
    let mut hits = optima.labelings.iter().map(|x| x.get(cert.edge) == value);
    Ok(if cert.criterion.holds_for_all_optima() {
        hits.all(|h| h)
    } else {
        hits.any(|h| h)
    })
}

/// Every certificate in the list verifies (true for an empty list).
pub fn verify_certificates(inst: &ProblemInstance, certs: &[PersistencyCertificate]) -> Result<bool> {
    if certs.is_empty() {
        return Ok(true);
    }
    let optima = enumerate_optima(inst)?;
    for c in certs {
        if !verify_against(inst, &optima, c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that `map` is an improving mapping that fixes edge `f` to `beta`:
/// for every feasible `x` with `x_f != beta`, `map(x)` is feasible, has
/// `map(x)_f = beta` and does not increase the objective.
pub fn verify_improving(
    inst: &ProblemInstance,
    map: impl Fn(&EdgeLabeling) -> Result<EdgeLabeling> + Sync,
    f: usize,
    beta: u8,
) -> Result<bool> {
    if f >= inst.edge_count() {
        return Err(Error::contract(format!("edge {f} does not exist")));
    }
    let value = beta == 1;
    let all = feasible_labelings(inst)?;
    let ok = all
        .par_iter()
        .filter(|x| x.get(f) != value)
        .map(|x| -> Result<bool> {
            let y = map(x)?;
            if y.len() != x.len() || !inst.is_feasible(&y)? || y.get(f) != value {
                return Ok(false);
            }
            let (before, after) = (inst.linear_objective(x)?, inst.linear_objective(&y)?);
            Ok(after <= before + tolerance(before))
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(ok.into_iter().all(|b| b))
}

/// A minimum labeling (the lexicographically smallest optimum).
pub fn solve(inst: &ProblemInstance) -> Result<(f64, EdgeLabeling)> {
    let optima = enumerate_optima(inst)?;
    let x = optima
        .labelings
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("no feasible labeling".into()))?;
    Ok((optima.value, x))
}
