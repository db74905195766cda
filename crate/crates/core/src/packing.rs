//! Cycle packing lower bounds for multicut and the reduced costs they induce.
//!
//! A conflicted cycle contains exactly one negative edge. Any multicut must
//! cut each conflicted cycle somewhere, which gives the covering program
//! whose dual assigns multipliers to conflicted cycles subject to the edge
//! capacities `|theta_e|`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{NodeSet, ProblemInstance, Subgraph};

/// Slack at or below this value counts as saturated.
pub const SLACK_EPS: f64 = 1e-12;

/// Tolerance for `dual_bound == 0` and for load feasibility.
pub const DUAL_EPS: f64 = 1e-9;

/// A feasible solution of the packing dual.
#[derive(Clone, Debug, PartialEq)]
pub struct DualPacking {
    /// Edge ids of each packed cycle (the negative edge first) and its multiplier.
    pub cycles: Vec<(Vec<usize>, f64)>,
    /// `sum of lambda_C over cycles C containing e`, for every edge of the instance.
    pub load: Vec<f64>,
    /// `sum lambda + sum of theta_e over negative edges in scope`.
    pub dual_bound: f64,
}

impl DualPacking {
    /// The packing with no cycles over the given edges.
    pub fn empty(inst: &ProblemInstance, scope: impl IntoIterator<Item = usize>) -> Self {
        DualPacking {
            cycles: Vec::new(),
            load: vec![0.0; inst.edge_count()],
            dual_bound: scope.into_iter().map(|e| inst.weight(e).min(0.0)).sum(),
        }
    }

    pub fn multiplier_sum(&self) -> f64 {
        self.cycles.iter().map(|(_, l)| l).sum()
    }
}

/// Reduced costs `(|theta_e| - load_e) * sign(theta_e)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedCosts {
    pub values: Vec<f64>,
}

impl ReducedCosts {
    pub fn get(&self, e: usize) -> f64 {
        self.values[e]
    }
}

struct Packer<'a> {
    inst: &'a ProblemInstance,
    slack: Vec<f64>,
    load: Vec<f64>,
    cycles: Vec<(Vec<usize>, f64)>,
    pos_adj: Vec<Vec<(usize, usize)>>,
    stamp: Vec<u32>,
    generation: u32,
    pred: Vec<(usize, usize)>,
}

impl<'a> Packer<'a> {
    fn new(inst: &'a ProblemInstance, in_scope: &[bool]) -> Self {
        let n = inst.node_count();
        let mut pos_adj = vec![Vec::new(); n];
        for (id, e) in inst.edges().iter().enumerate() {
            if in_scope[id] && e.weight > 0.0 {
                pos_adj[e.u].push((e.v, id));
                pos_adj[e.v].push((e.u, id));
            }
        }
        for list in &mut pos_adj {
            list.sort_unstable();
        }
        Packer {
            inst,
            slack: inst
                .edges()
                .iter()
                .enumerate()
                .map(|(id, e)| if in_scope[id] { e.weight.abs() } else { 0.0 })
                .collect(),
            load: vec![0.0; inst.edge_count()],
            cycles: Vec::new(),
            pos_adj,
            stamp: vec![0; n],
            generation: 0,
            pred: vec![(usize::MAX, usize::MAX); n],
        }
    }

    fn pack(&mut self, cycle: Vec<usize>) {
        let lambda = cycle.iter().map(|&e| self.slack[e]).fold(f64::INFINITY, f64::min);
        if lambda <= SLACK_EPS {
            return;
        }
        for &e in &cycle {
            let cap = self.inst.weight(e).abs();
            self.load[e] += lambda;
            self.slack[e] -= lambda;
            if self.slack[e] <= SLACK_EPS {
                self.slack[e] = 0.0;
                self.load[e] = cap;
            }
        }
        self.cycles.push((cycle, lambda));
    }

    fn pack_triangles(&mut self, f: usize) {
        let e = *self.inst.edge(f);
        let (la, lb) = (&self.pos_adj[e.u], &self.pos_adj[e.v]);
        let mut common = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < la.len() && j < lb.len() {
            match la[i].0.cmp(&lb[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    common.push((la[i].1, lb[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        for (ea, eb) in common {
            if self.slack[f] <= SLACK_EPS {
                break;
            }
            self.pack(vec![f, ea, eb]);
        }
    }

    /// Shortest path (in hops) from `u` to `v` over positive edges with slack.
    fn residual_path(&mut self, a: usize, b: usize) -> Option<Vec<usize>> {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.generation = 1;
        }
        let gen = self.generation;
        self.stamp[a] = gen;
        let mut queue = VecDeque::from([a]);
        'bfs: while let Some(x) = queue.pop_front() {
            for &(y, e) in &self.pos_adj[x] {
                if self.stamp[y] != gen && self.slack[e] > SLACK_EPS {
                    self.stamp[y] = gen;
                    self.pred[y] = (x, e);
                    if y == b {
                        break 'bfs;
                    }
                    queue.push_back(y);
                }
            }
        }
        if self.stamp[b] != gen {
            return None;
        }
        let mut path = Vec::new();
        let mut y = b;
        while y != a {
            let (x, e) = self.pred[y];
            path.push(e);
            y = x;
        }
        path.reverse();
        Some(path)
    }

    fn run(mut self, negatives: &[usize]) -> (Vec<(Vec<usize>, f64)>, Vec<f64>) {
        for &f in negatives {
            self.pack_triangles(f);
        }
        // longer cycles, globally shortest first; distances only grow as
        // slack is consumed, so stale heap keys are lower bounds
        let mut heap = BinaryHeap::new();
        for &f in negatives {
            if self.slack[f] > SLACK_EPS {
                heap.push(Reverse((3usize, f)));
            }
        }
        while let Some(Reverse((len, f))) = heap.pop() {
            if self.slack[f] <= SLACK_EPS {
                continue;
            }
            let e = *self.inst.edge(f);
            let Some(path) = self.residual_path(e.u, e.v) else {
                continue;
            };
            let found = path.len() + 1;
            if found > len {
                heap.push(Reverse((found, f)));
                continue;
            }
            let mut cycle = Vec::with_capacity(found);
            cycle.push(f);
            cycle.extend(path);
            self.pack(cycle);
            heap.push(Reverse((found, f)));
        }
        (self.cycles, self.load)
    }
}

fn packing_over(inst: &ProblemInstance, in_scope: &[bool]) -> DualPacking {
    let negatives: Vec<usize> = (0..inst.edge_count())
        .filter(|&e| in_scope[e] && inst.weight(e) < 0.0)
        .collect();
    let (cycles, load) = Packer::new(inst, in_scope).run(&negatives);
    let lambda_sum: f64 = cycles.iter().map(|(_, l)| l).sum();
    let negative_sum: f64 = negatives.iter().map(|&e| inst.weight(e)).sum();
    DualPacking {
        cycles,
        load,
        dual_bound: lambda_sum + negative_sum,
    }
}

/// Iterative cycle packing on the whole instance: triangles through each
/// negative edge first (in edge id order), then repeatedly the shortest
/// remaining conflicted cycle in the residual graph, until no conflicted
/// cycle with positive slack remains.
pub fn icp(inst: &ProblemInstance) -> DualPacking {
    packing_over(inst, &vec![true; inst.edge_count()])
}

/// Iterative cycle packing using only the edges of `h`. Loads are indexed by
/// the edge ids of `inst` and vanish outside `h`.
pub fn icp_subgraph(inst: &ProblemInstance, h: &Subgraph) -> Result<DualPacking> {
    h.validate(inst)?;
    let mut scope = vec![false; inst.edge_count()];
    for &e in &h.edges {
        scope[e] = true;
    }
    Ok(packing_over(inst, &scope))
}

fn check_load(inst: &ProblemInstance, packing: &DualPacking) -> Result<()> {
    if packing.load.len() != inst.edge_count() {
        return Err(Error::SizeMismatch {
            expected: inst.edge_count(),
            actual: packing.load.len(),
        });
    }
    for (e, &l) in packing.load.iter().enumerate() {
        if l < -DUAL_EPS || l > inst.weight(e).abs() + DUAL_EPS {
            return Err(Error::contract(format!(
                "load {l} on edge {e} exceeds capacity {}",
                inst.weight(e).abs()
            )));
        }
    }
    Ok(())
}

/// Reduced costs of a dual feasible packing.
pub fn reduced_costs(inst: &ProblemInstance, packing: &DualPacking) -> Result<ReducedCosts> {
    check_load(inst, packing)?;
    Ok(ReducedCosts {
        values: inst
            .edges()
            .iter()
            .zip(&packing.load)
            .map(|(e, &l)| {
                let rest = (e.weight.abs() - l).max(0.0);
                if e.weight > 0.0 {
                    rest
                } else if e.weight < 0.0 {
                    -rest
                } else {
                    0.0
                }
            })
            .collect(),
    })
}

/// Whether a packing computed on `h` proves that the multicut optimum on `h`
/// is zero, i.e. its multipliers exactly cover the negative weight of `h`.
pub fn zero_optimum_check(inst: &ProblemInstance, h: &Subgraph, packing: &DualPacking) -> bool {
    if h.validate(inst).is_err() || check_load(inst, packing).is_err() {
        return false;
    }
    let mut in_h = vec![false; inst.edge_count()];
    for &e in &h.edges {
        in_h[e] = true;
    }
    if packing.cycles.iter().any(|(c, _)| c.iter().any(|&e| !in_h[e])) {
        return false;
    }
    let bound = packing.multiplier_sum() + h.edges.iter().map(|&e| inst.weight(e).min(0.0)).sum::<f64>();
    bound.abs() <= DUAL_EPS
}

/// The sandwich `0 <= sum of reduced costs over delta_H(U) <= sum of weights
/// over delta_H(U)` for a subgraph whose packing passes
/// [`zero_optimum_check`]. Returns both sums.
pub fn cut_sandwich(inst: &ProblemInstance, h: &Subgraph, packing: &DualPacking, set: &NodeSet) -> Result<(f64, f64)> {
    if !zero_optimum_check(inst, h, packing) {
        return Err(Error::contract("packing does not certify a zero multicut optimum on the subgraph"));
    }
    if set.universe() != inst.node_count() || set.iter().any(|n| !h.nodes.contains(n)) {
        return Err(Error::contract("node set is not a subset of the subgraph"));
    }
    let rc = reduced_costs(inst, packing)?;
    let (mut lb, mut ub) = (0.0, 0.0);
    for &e in &h.edges {
        let edge = inst.edge(e);
        if set.contains(edge.u) != set.contains(edge.v) {
            lb += rc.get(e);
            ub += edge.weight;
        }
    }
    Ok((lb, ub))
}
