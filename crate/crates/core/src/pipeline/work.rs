//! Mutable graph under contraction, deletion and switching, with the
//! bookkeeping needed to map back to the original instance.

use std::collections::BTreeMap;

use crate::dsu::UnionFind;
use crate::graph::{ProblemInstance, ProblemKind};

/// Current graph whose nodes are classes of original nodes, identified by
/// their union-find root.
#[derive(Clone, Debug)]
pub(crate) struct WorkGraph {
    kind: ProblemKind,
    uf: UnionFind,
    adj: Vec<BTreeMap<usize, f64>>,
    members: Vec<Vec<usize>>,
    min_member: Vec<usize>,
    /// Per original node: parity of the switches that moved it.
    flip: Vec<bool>,
    /// Objective of the original minus objective of the current graph.
    shift: f64,
    orig_edges: Vec<(usize, usize)>,
    nodes: usize,
    edges: usize,
}

/// A [`ProblemInstance`] built from some classes of a [`WorkGraph`], with
/// local node ids ordered like the classes' smallest members.
#[derive(Clone, Debug)]
pub(crate) struct View {
    pub inst: ProblemInstance,
    /// Local id to root.
    pub roots: Vec<usize>,
    local: Vec<usize>,
}

impl View {
    pub fn local(&self, root: usize) -> Option<usize> {
        self.local.get(root).copied().filter(|&l| l != usize::MAX)
    }
}

impl WorkGraph {
    pub fn new(inst: &ProblemInstance) -> Self {
        let n = inst.node_count();
        let mut adj = vec![BTreeMap::new(); n];
        for e in inst.edges() {
            adj[e.u].insert(e.v, e.weight);
            adj[e.v].insert(e.u, e.weight);
        }
        WorkGraph {
            kind: inst.kind(),
            uf: UnionFind::new(n),
            adj,
            members: (0..n).map(|i| vec![i]).collect(),
            min_member: (0..n).collect(),
            flip: vec![false; n],
            shift: 0.0,
            orig_edges: inst.edges().iter().map(|e| (e.u, e.v)).collect(),
            nodes: n,
            edges: inst.edge_count(),
        }
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn flip(&self, x: usize) -> bool {
        self.flip[x]
    }

    pub fn flips(&self) -> &[bool] {
        &self.flip
    }

    pub fn root(&self, x: usize) -> usize {
        self.uf.find_const(x)
    }

    pub fn orig_edge(&self, e: usize) -> (usize, usize) {
        self.orig_edges[e]
    }

    pub fn min_member(&self, root: usize) -> usize {
        self.min_member[root]
    }

    pub fn weight(&self, a: usize, b: usize) -> Option<f64> {
        self.adj[a].get(&b).copied()
    }

    /// Current classes ordered by smallest member.
    pub fn roots(&self) -> Vec<usize> {
        let mut roots: Vec<usize> = (0..self.adj.len()).filter(|&x| self.root(x) == x).collect();
        roots.sort_unstable_by_key(|&r| self.min_member[r]);
        roots
    }

    /// Sorted original members of the given classes.
    pub fn expand(&self, roots: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut out: Vec<usize> = roots.into_iter().flat_map(|r| self.members[r].iter().copied()).collect();
        out.sort_unstable();
        out
    }

    /// Classes covering exactly the given original nodes, or `None` if some
    /// class is only partly included.
    pub fn translate(&self, nodes: &[usize]) -> Option<Vec<usize>> {
        let mut count: BTreeMap<usize, usize> = BTreeMap::new();
        for &x in nodes {
            if x >= self.adj.len() {
                return None;
            }
            *count.entry(self.root(x)).or_default() += 1;
        }
        count
            .into_iter()
            .map(|(r, c)| (c == self.members[r].len()).then_some(r))
            .collect()
    }

    /// Merges two classes; an edge between them disappears (its variable is
    /// zero) and parallel edges are summed.
    pub fn contract(&mut self, a: usize, b: usize) {
        debug_assert!(a != b && self.root(a) == a && self.root(b) == b);
        if self.adj[a].remove(&b).is_some() {
            self.adj[b].remove(&a);
            self.edges -= 1;
        }
        self.uf.union(a, b);
        let keep = self.uf.find(a);
        let gone = if keep == a { b } else { a };
        let moved = std::mem::take(&mut self.adj[gone]);
        for (c, w) in moved {
            self.adj[c].remove(&gone);
            let total = match self.adj[keep].get_mut(&c) {
                Some(x) => {
                    *x += w;
                    self.edges -= 1;
                    *x
                }
                None => {
                    self.adj[keep].insert(c, w);
                    w
                }
            };
            self.adj[c].insert(keep, total);
        }
        let gone_members = std::mem::take(&mut self.members[gone]);
        self.members[keep].extend(gone_members);
        self.min_member[keep] = self.min_member[keep].min(self.min_member[gone]);
        self.nodes -= 1;
    }

    /// Removes the edge between two classes with its variable fixed to one.
    pub fn delete(&mut self, a: usize, b: usize) -> Option<f64> {
        let w = self.adj[a].remove(&b)?;
        self.adj[b].remove(&a);
        self.shift += w;
        self.edges -= 1;
        Some(w)
    }

    /// Switches the max-cut instance on the cut around the given classes.
    pub fn switch(&mut self, roots: &[usize]) {
        let mut inside = vec![false; self.adj.len()];
        for &r in roots {
            inside[r] = true;
        }
        for &r in roots {
            let outside: Vec<usize> = self.adj[r].keys().copied().filter(|&c| !inside[c]).collect();
            for c in outside {
                let w = self.adj[r][&c];
                self.shift += w;
                self.adj[r].insert(c, -w);
                self.adj[c].insert(r, -w);
            }
            for &m in &self.members[r] {
                self.flip[m] = !self.flip[m];
            }
        }
    }

    fn build_view(&self, mut roots: Vec<usize>, core: Option<&[bool]>) -> View {
        roots.sort_unstable_by_key(|&r| self.min_member[r]);
        let mut local = vec![usize::MAX; self.adj.len()];
        for (i, &r) in roots.iter().enumerate() {
            local[r] = i;
        }
        let mut triples = Vec::new();
        for (i, &r) in roots.iter().enumerate() {
            if core.is_some_and(|c| !c[r]) {
                continue;
            }
            for (&c, &w) in &self.adj[r] {
                let j = local[c];
                if j == usize::MAX {
                    continue;
                }
                let other_core = core.is_none_or(|k| k[c]);
                if other_core && j < i {
                    continue;
                }
                triples.push((i.min(j), i.max(j), w));
            }
        }
        View {
            inst: ProblemInstance::from_canonical_pairs(self.kind, roots.len(), triples),
            roots,
            local,
        }
    }

    /// The whole current graph.
    pub fn snapshot(&self) -> View {
        self.build_view(self.roots(), None)
    }

    /// The given classes with their neighbours and every edge incident to a
    /// given class. Cut sums around subsets of `core` are exact on this view.
    pub fn local_view(&self, core: &[usize]) -> View {
        let mut is_core = vec![false; self.adj.len()];
        for &r in core {
            is_core[r] = true;
        }
        let mut roots: Vec<usize> = core.to_vec();
        for &r in core {
            roots.extend(self.adj[r].keys().copied().filter(|&c| !is_core[c]));
        }
        roots.sort_unstable();
        roots.dedup();
        self.build_view(roots, Some(&is_core))
    }

    /// For each edge of `view`, the smallest original edge id it carries.
    pub fn representative_edges(&self, view: &View) -> Vec<usize> {
        let mut rep = vec![usize::MAX; view.inst.edge_count()];
        for (id, &(a, b)) in self.orig_edges.iter().enumerate() {
            let (ra, rb) = (self.root(a), self.root(b));
            if ra == rb {
                continue;
            }
            if let (Some(i), Some(j)) = (view.local(ra), view.local(rb)) {
                if let Some(e) = view.inst.find_edge(i, j) {
                    if rep[e] == usize::MAX {
                        rep[e] = id;
                    }
                }
            }
        }
        rep
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeLabeling;

    fn square() -> ProblemInstance {
        ProblemInstance::new(
            ProblemKind::Maxcut,
            4,
            vec![(0, 1, 1.0), (1, 2, -2.0), (2, 3, 3.0), (0, 3, 4.0), (0, 2, 0.5)],
        )
        .unwrap()
    }

    #[test]
    fn snapshot_of_fresh_graph_is_the_instance() {
        let g = square();
        let w = WorkGraph::new(&g);
        let v = w.snapshot();
        assert_eq!(v.inst.edges(), g.edges());
        assert_eq!(w.representative_edges(&v), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn contraction_sums_parallel_edges() {
        let g = square();
        let mut w = WorkGraph::new(&g);
        w.contract(0, 2);
        let v = w.snapshot();
        // classes {0, 2}, {1}, {3}
        assert_eq!((w.node_count(), w.edge_count()), (3, 2));
        assert_eq!(v.inst.weight(v.inst.find_edge(0, 1).unwrap()), -1.0);
        assert_eq!(v.inst.weight(v.inst.find_edge(0, 2).unwrap()), 7.0);
        assert_eq!(w.translate(&[0, 2]), Some(vec![w.root(0)]));
        assert_eq!(w.translate(&[0]), None);
    }

    #[test]
    fn switching_preserves_objectives() {
        let g = square();
        let mut w = WorkGraph::new(&g);
        w.switch(&[1]);
        let v = w.snapshot();
        for mask in 0u32..16 {
            let side: Vec<usize> = (0..4).filter(|&i| mask >> i & 1 == 1).collect();
            let set = crate::graph::NodeSet::from_nodes(4, side.iter().copied());
            let y = EdgeLabeling::from_cut(&v.inst, &set);
            let flipped: Vec<usize> = (0..4).filter(|&i| set.contains(i) != w.flip(i)).collect();
            let x = EdgeLabeling::from_cut(&g, &crate::graph::NodeSet::from_nodes(4, flipped));
            let lhs = g.objective(&x).unwrap();
            let rhs = v.inst.objective(&y).unwrap() + w.shift();
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn local_view_keeps_incident_edges_only() {
        let g = square();
        let w = WorkGraph::new(&g);
        let v = w.local_view(&[1]);
        // node 1 with neighbours 0 and 2; the edge 0-2 is not incident to 1
        assert_eq!(v.roots, vec![0, 1, 2]);
        assert_eq!(v.inst.edge_count(), 2);
    }
}
