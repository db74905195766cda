//! Random small instances shared by the integration tests.

#![allow(dead_code)]

use std::f64::consts::TAU;

use cutpersist::{NodeSet, ProblemInstance, ProblemKind, Subgraph};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weights {
    /// Integers in `-5..=5`.
    Integer,
    /// Integers biased towards attraction, `-2..=6`.
    MostlyPositive,
    /// Integers biased towards repulsion, `-6..=2`.
    MostlyNegative,
    /// Standard normal.
    Gaussian,
    /// Random sign times `10^u`, `u` uniform in `[-1, 2]`.
    HeavyTailed,
}

impl Weights {
    pub const ALL: [Weights; 5] = [
        Weights::Integer,
        Weights::MostlyPositive,
        Weights::MostlyNegative,
        Weights::Gaussian,
        Weights::HeavyTailed,
    ];

    pub fn is_integer(self) -> bool {
        matches!(self, Weights::Integer | Weights::MostlyPositive | Weights::MostlyNegative)
    }

    pub fn sample(self, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            Weights::Integer => f64::from(rng.random_range(-5..=5)),
            Weights::MostlyPositive => f64::from(rng.random_range(-2..=6)),
            Weights::MostlyNegative => f64::from(rng.random_range(-6..=2)),
            Weights::Gaussian => {
                let u1 = 1.0 - rng.random::<f64>();
                let u2 = rng.random::<f64>();
                (-2.0 * u1.ln()).sqrt() * (TAU * u2).cos()
            }
            Weights::HeavyTailed => {
                let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                sign * 10f64.powf(rng.random_range(-1.0..2.0))
            }
        }
    }
}

/// A graph on `nodes` nodes where each pair is an edge with probability
/// `density` (at least one edge).
pub fn random_instance(rng: &mut ChaCha8Rng, kind: ProblemKind, nodes: usize, density: f64, weights: Weights) -> ProblemInstance {
    loop {
        let mut edges = Vec::new();
        for u in 0..nodes {
            for v in u + 1..nodes {
                if rng.random::<f64>() < density {
                    edges.push((u, v, weights.sample(rng)));
                }
            }
        }
        if !edges.is_empty() {
            return ProblemInstance::new(kind, nodes, edges).expect("valid random instance");
        }
    }
}

/// Random kind, size in `3..=max_nodes`, density and weight distribution.
pub fn any_instance(rng: &mut ChaCha8Rng, max_nodes: usize) -> (ProblemInstance, Weights) {
    let kind = if rng.random::<bool>() { ProblemKind::Multicut } else { ProblemKind::Maxcut };
    let weights = *Weights::ALL.choose(rng).expect("non-empty");
    let nodes = rng.random_range(3..=max_nodes);
    let density = *[0.3, 0.5, 0.8, 1.0].choose(rng).expect("non-empty");
    (random_instance(rng, kind, nodes, density, weights), weights)
}

pub fn kind_instance(rng: &mut ChaCha8Rng, kind: ProblemKind, max_nodes: usize) -> ProblemInstance {
    let weights = *Weights::ALL.choose(rng).expect("non-empty");
    let nodes = rng.random_range(3..=max_nodes);
    let density = *[0.3, 0.5, 0.8, 1.0].choose(rng).expect("non-empty");
    random_instance(rng, kind, nodes, density, weights)
}

/// A connected node set grown from a random node, with at least two nodes
/// when the start node has a neighbour.
pub fn random_connected_set(rng: &mut ChaCha8Rng, inst: &ProblemInstance) -> NodeSet {
    let n = inst.node_count();
    let target = rng.random_range(2..=n.max(2));
    let start = rng.random_range(0..n);
    let mut set = NodeSet::from_nodes(n, [start]);
    let mut frontier: Vec<usize> = inst.neighbors(start).iter().map(|&(y, _)| y).collect();
    while set.len() < target && !frontier.is_empty() {
        let y = frontier.swap_remove(rng.random_range(0..frontier.len()));
        if set.contains(y) {
            continue;
        }
        set.insert(y);
        frontier.extend(inst.neighbors(y).iter().map(|&(z, _)| z).filter(|&z| !set.contains(z)));
    }
    set
}

/// Whole graph (when connected), every component of the positive edges and
/// a few random connected sets, as induced subgraphs with at least one edge.
pub fn subgraphs(rng: &mut ChaCha8Rng, inst: &ProblemInstance, random: usize) -> Vec<Subgraph> {
    let n = inst.node_count();
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let full = NodeSet::full(n);
    if inst.is_connected(&full) {
        sets.push(full.to_vec());
    }
    for block in inst.connected_components(|e| inst.weight(e) > 0.0).blocks() {
        sets.push(block);
    }
    for _ in 0..random {
        sets.push(random_connected_set(rng, inst).to_vec());
    }
    sets.sort();
    sets.dedup();
    sets.into_iter()
        .filter(|s| s.len() >= 2)
        .map(|s| Subgraph::induced(inst, NodeSet::from_nodes(n, s)))
        .filter(|h| !h.edges.is_empty() && h.is_connected(inst))
        .collect()
}
