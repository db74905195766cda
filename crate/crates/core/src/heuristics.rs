//! Fast primal heuristics used to seed candidate subgraphs and reduced cost
//! fixing.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BinaryHeap};

use crate::dsu::UnionFind;
use crate::graph::{EdgeLabeling, NodeSet, Partition, ProblemInstance, ProblemKind};

#[derive(PartialEq)]
struct Candidate {
    weight: f64,
    pair: Reverse<(usize, usize)>,
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight.total_cmp(&other.weight).then(self.pair.cmp(&other.pair))
    }
}

/// Greedy additive edge contraction: repeatedly merges the endpoints of the
/// heaviest positive edge, summing parallel edges, until no positive edge
/// is left. Ties go to the pair with smaller ids.
pub fn gaec(inst: &ProblemInstance) -> Partition {
    let n = inst.node_count();
    let mut adj: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); n];
    let mut heap = BinaryHeap::new();
    for e in inst.edges() {
        adj[e.u].insert(e.v, e.weight);
        adj[e.v].insert(e.u, e.weight);
        if e.weight > 0.0 {
            heap.push(Candidate {
                weight: e.weight,
                pair: Reverse((e.u, e.v)),
            });
        }
    }
    let mut uf = UnionFind::new(n);
    while let Some(Candidate { weight, pair: Reverse((a, b)) }) = heap.pop() {
        if uf.find(a) != a || uf.find(b) != b || adj[a].get(&b) != Some(&weight) {
            continue;
        }
        uf.union(a, b);
        let (keep, gone) = if uf.find(a) == a { (a, b) } else { (b, a) };
        let moved = std::mem::take(&mut adj[gone]);
        adj[keep].remove(&gone);
        for (c, w) in moved {
            if c == keep {
                continue;
            }
            adj[c].remove(&gone);
            let total = *adj[keep].entry(c).and_modify(|x| *x += w).or_insert(w);
            adj[c].insert(keep, total);
            if total > 0.0 {
                heap.push(Candidate {
                    weight: total,
                    pair: Reverse((keep.min(c), keep.max(c))),
                });
            }
        }
    }
    Partition::from_labels(uf.labels())
}

/// Greedy local search for max-cut in min form: starting from the empty
/// cut, flips the node with the largest objective decrease until no flip
/// improves. Returns one side of the cut.
pub fn maxcut_local_search(inst: &ProblemInstance) -> NodeSet {
    improve_cut(inst, NodeSet::empty(inst.node_count()))
}

/// The same single-node flip search, started from `side`.
pub fn improve_cut(inst: &ProblemInstance, mut side: NodeSet) -> NodeSet {
    let n = inst.node_count();
    // gain[i]: objective change when flipping i
    let mut gain = vec![0.0; n];
    for e in inst.edges() {
        let sign = if side.contains(e.u) != side.contains(e.v) { -1.0 } else { 1.0 };
        gain[e.u] += sign * e.weight;
        gain[e.v] += sign * e.weight;
    }
    let scale = inst.edges().iter().fold(1.0f64, |m, e| m.max(e.weight.abs()));
    let limit = 1000 * n + 1000;
    for _ in 0..limit {
        let Some((best, delta)) = gain
            .iter()
            .copied()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
        else {
            break;
        };
        if delta >= -1e-12 * scale {
            break;
        }
        let was_in = side.contains(best);
        for &(j, e) in inst.neighbors(best) {
            let w = inst.weight(e);
            let cut_before = was_in != side.contains(j);
            // flipping `best` toggles this edge, negating its term in gain[j]
            gain[j] -= 2.0 * if cut_before { -w } else { w };
        }
        gain[best] = -gain[best];
        if was_in {
            side.remove(best);
        } else {
            side.insert(best);
        }
    }
    side
}

/// Greedy contraction for max-cut: repeatedly takes the pair of clusters
/// with the largest `|W|`, where `W` sums the connecting weights signed by
/// the relative sides already fixed inside each cluster, and puts the two
/// clusters on the same side if `W > 0` and on opposite sides otherwise.
/// Returns one side of the resulting cut.
pub fn maxcut_greedy_contraction(inst: &ProblemInstance) -> NodeSet {
    let n = inst.node_count();
    let mut adj: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); n];
    let mut heap = BinaryHeap::new();
    for e in inst.edges() {
        adj[e.u].insert(e.v, e.weight);
        adj[e.v].insert(e.u, e.weight);
        heap.push(Candidate {
            weight: e.weight.abs(),
            pair: Reverse((e.u, e.v)),
        });
    }
    let mut members: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    // flipped[i]: node i sits opposite to its cluster's representative
    let mut flipped = vec![false; n];
    let mut alive = vec![true; n];
    while let Some(Candidate { weight, pair: Reverse((a, b)) }) = heap.pop() {
        let Some(&w) = adj[a].get(&b) else { continue };
        if !alive[a] || !alive[b] || w.abs() != weight || weight == 0.0 {
            continue;
        }
        let (keep, gone) = if members[a].len() >= members[b].len() { (a, b) } else { (b, a) };
        let opposite = w < 0.0;
        let moved_nodes = std::mem::take(&mut members[gone]);
        for &i in &moved_nodes {
            flipped[i] ^= opposite;
        }
        members[keep].extend(moved_nodes);
        alive[gone] = false;
        let moved = std::mem::take(&mut adj[gone]);
        adj[keep].remove(&gone);
        for (c, w) in moved {
            if c == keep {
                continue;
            }
            adj[c].remove(&gone);
            let w = if opposite { -w } else { w };
            let total = *adj[keep].entry(c).and_modify(|x| *x += w).or_insert(w);
            adj[c].insert(keep, total);
            heap.push(Candidate {
                weight: total.abs(),
                pair: Reverse((keep.min(c), keep.max(c))),
            });
        }
    }
    NodeSet::from_mask(flipped)
}

/// Greedy contraction followed by local search. Returns one side of the cut.
pub fn maxcut_primal_side(inst: &ProblemInstance) -> NodeSet {
    improve_cut(inst, maxcut_greedy_contraction(inst))
}

/// A feasible primal labeling: the greedy contraction clustering for
/// multicut, [`maxcut_primal_side`] for max-cut.
pub fn gaec_primal(inst: &ProblemInstance) -> EdgeLabeling {
    match inst.kind() {
        ProblemKind::Multicut => EdgeLabeling::from_partition(inst, &gaec(inst)),
        ProblemKind::Maxcut => EdgeLabeling::from_cut(inst, &maxcut_primal_side(inst)),
    }
}
