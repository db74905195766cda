use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dsu::UnionFind;
use crate::error::{Error, Result};

/// Which optimization problem the weights describe.
///
/// Both problems are stated in minimization form: a labeling `x` costs
/// `<theta, x>`, so cutting a negative edge lowers the objective.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Multicut,
    Maxcut,
}

impl ProblemKind {
    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Multicut => "multicut",
            ProblemKind::Maxcut => "maxcut",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "multicut" => Ok(ProblemKind::Multicut),
            "maxcut" => Ok(ProblemKind::Maxcut),
            other => Err(Error::InvalidParams(format!("unknown problem kind '{other}'"))),
        }
    }
}

/// An undirected edge with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// A weighted simple graph together with the problem it encodes.
///
/// Edges are kept sorted by `(u, v)` and their position in that list is the
/// edge id used everywhere else.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "InstanceData", into = "InstanceData")]
pub struct ProblemInstance {
    kind: ProblemKind,
    node_count: usize,
    edges: Vec<Edge>,
    objective_constant: f64,
    adj: Vec<Vec<(usize, usize)>>,
}

/// Serialized form of an instance: `edges` holds `[u, v, weight]` triples.
#[derive(Serialize, Deserialize)]
struct InstanceData {
    kind: ProblemKind,
    node_count: usize,
    #[serde(default)]
    objective_constant: f64,
    edges: Vec<(usize, usize, f64)>,
}

impl From<ProblemInstance> for InstanceData {
    fn from(inst: ProblemInstance) -> Self {
        InstanceData {
            kind: inst.kind,
            node_count: inst.node_count,
            objective_constant: inst.objective_constant,
            edges: inst.edges.iter().map(|e| (e.u, e.v, e.weight)).collect(),
        }
    }
}

impl TryFrom<InstanceData> for ProblemInstance {
    type Error = Error;

    fn try_from(d: InstanceData) -> Result<Self> {
        if !d.objective_constant.is_finite() {
            return Err(Error::InvalidParams("non-finite objective constant".into()));
        }
        Ok(ProblemInstance::new(d.kind, d.node_count, d.edges)?.with_objective_constant(d.objective_constant))
    }
}

impl PartialEq for ProblemInstance {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.node_count == other.node_count
            && self.edges == other.edges
            && self.objective_constant == other.objective_constant
    }
}

impl ProblemInstance {
    /// Builds a canonical instance. Endpoints are reordered so that `u < v`
    /// and parallel edges are merged by summing their weights in input order.
    pub fn new(kind: ProblemKind, node_count: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        let mut canon = Vec::with_capacity(edges.len());
        for (i, (a, b, w)) in edges.into_iter().enumerate() {
            if a >= node_count || b >= node_count {
                return Err(Error::InvalidParams(format!(
                    "edge {i} ({a}, {b}) references a node outside 0..{node_count}"
                )));
            }
            if a == b {
                return Err(Error::InvalidParams(format!("edge {i} is a self-loop on node {a}")));
            }
            if !w.is_finite() {
                return Err(Error::InvalidParams(format!("edge {i} ({a}, {b}) has non-finite weight {w}")));
            }
            canon.push((a.min(b), a.max(b), w));
        }
        Ok(Self::from_canonical_pairs(kind, node_count, canon))
    }

    /// Sorts and merges already validated `u < v` triples.
    pub(crate) fn from_canonical_pairs(kind: ProblemKind, node_count: usize, mut triples: Vec<(usize, usize, f64)>) -> Self {
        triples.sort_by_key(|&(u, v, _)| (u, v));
        let mut edges: Vec<Edge> = Vec::with_capacity(triples.len());
        for (u, v, weight) in triples {
            match edges.last_mut() {
                Some(last) if last.u == u && last.v == v => last.weight += weight,
                _ => edges.push(Edge { u, v, weight }),
            }
        }
        Self::from_edges(kind, node_count, edges, 0.0)
    }

    fn from_edges(kind: ProblemKind, node_count: usize, edges: Vec<Edge>, objective_constant: f64) -> Self {
        let mut adj = vec![Vec::new(); node_count];
        for (id, e) in edges.iter().enumerate() {
            adj[e.u].push((e.v, id));
            adj[e.v].push((e.u, id));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        ProblemInstance {
            kind,
            node_count,
            edges,
            objective_constant,
            adj,
        }
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    pub fn weight(&self, id: usize) -> f64 {
        self.edges[id].weight
    }

    pub fn weights(&self) -> Vec<f64> {
        self.edges.iter().map(|e| e.weight).collect()
    }

    pub fn objective_constant(&self) -> f64 {
        self.objective_constant
    }

    pub fn with_objective_constant(mut self, c: f64) -> Self {
        self.objective_constant = c;
        self
    }

    /// Same graph with replaced weights.
    pub fn with_weights(&self, weights: &[f64]) -> Result<Self> {
        self.check_len(weights.len())?;
        if let Some(w) = weights.iter().find(|w| !w.is_finite()) {
            return Err(Error::InvalidParams(format!("non-finite weight {w}")));
        }
        let mut out = self.clone();
        for (e, &w) in out.edges.iter_mut().zip(weights) {
            e.weight = w;
        }
        Ok(out)
    }

    /// Sorted `(neighbor, edge id)` pairs of `u`.
    pub fn neighbors(&self, u: usize) -> &[(usize, usize)] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn find_edge(&self, a: usize, b: usize) -> Option<usize> {
        let list = self.adj.get(a)?;
        list.binary_search_by_key(&b, |&(n, _)| n).ok().map(|i| list[i].1)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.edges.len() {
            return Err(Error::SizeMismatch {
                expected: self.edges.len(),
                actual: len,
            });
        }
        Ok(())
    }

    fn check_universe(&self, set: &NodeSet) -> Result<()> {
        if set.universe() != self.node_count {
            return Err(Error::SizeMismatch {
                expected: self.node_count,
                actual: set.universe(),
            });
        }
        Ok(())
    }

    /// `<theta, x>` without the constant.
    pub fn linear_objective(&self, x: &EdgeLabeling) -> Result<f64> {
        self.check_len(x.len())?;
        Ok(self.edges.iter().zip(x.iter()).filter(|(_, b)| *b).map(|(e, _)| e.weight).sum())
    }

    /// `<theta, x>` plus the accumulated objective constant.
    pub fn objective(&self, x: &EdgeLabeling) -> Result<f64> {
        Ok(self.linear_objective(x)? + self.objective_constant)
    }

    /// Edges with one endpoint in `a` and the other in `b` (or outside `a`
    /// when `b` is `None`), in ascending id order.
    pub fn delta(&self, a: &NodeSet, b: Option<&NodeSet>) -> Result<Vec<usize>> {
        self.check_universe(a)?;
        if let Some(b) = b {
            self.check_universe(b)?;
            if let Some(n) = a.iter().find(|&n| b.contains(n)) {
                return Err(Error::contract(format!("node sets overlap at node {n}")));
            }
        }
        let in_b = |n: usize| match b {
            Some(b) => b.contains(n),
            None => !a.contains(n),
        };
        Ok(self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| (a.contains(e.u) && in_b(e.v)) || (a.contains(e.v) && in_b(e.u)))
            .map(|(id, _)| id)
            .collect())
    }

    /// `delta(U)` as an id list, computed from adjacency of the members only.
    pub fn cut_edges(&self, set: &NodeSet) -> Vec<usize> {
        let mut out: Vec<usize> = set
            .iter()
            .flat_map(|u| self.adj[u].iter().filter(|&&(n, _)| !set.contains(n)).map(|&(_, e)| e))
            .collect();
        out.sort_unstable();
        out
    }

    /// Whether `x` is the incidence vector of a multicut (resp. a cut).
    pub fn is_feasible(&self, x: &EdgeLabeling) -> Result<bool> {
        self.check_len(x.len())?;
        Ok(match self.kind {
            ProblemKind::Multicut => self.is_multicut(x),
            ProblemKind::Maxcut => self.is_cut(x),
        })
    }

    pub(crate) fn is_multicut(&self, x: &EdgeLabeling) -> bool {
        let mut uf = UnionFind::new(self.node_count);
        for (e, lab) in self.edges.iter().zip(x.iter()) {
            if !lab {
                uf.union(e.u, e.v);
            }
        }
        self.edges.iter().zip(x.iter()).all(|(e, lab)| !lab || !uf.same(e.u, e.v))
    }

    pub(crate) fn is_cut(&self, x: &EdgeLabeling) -> bool {
        self.cut_side(x).is_some()
    }

    /// A node set `U` with `x = 1_delta(U)`, if one exists. Each connected
    /// component has its smallest node outside `U`.
    pub fn cut_side(&self, x: &EdgeLabeling) -> Option<NodeSet> {
        if x.len() != self.edges.len() {
            return None;
        }
        let mut color: Vec<Option<bool>> = vec![None; self.node_count];
        let mut queue = VecDeque::new();
        for s in 0..self.node_count {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            queue.push_back(s);
            while let Some(a) = queue.pop_front() {
                let ca = color[a].unwrap_or(false);
                for &(b, e) in &self.adj[a] {
                    let want = ca ^ x.get(e);
                    match color[b] {
                        None => {
                            color[b] = Some(want);
                            queue.push_back(b);
                        }
                        Some(cb) if cb != want => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(NodeSet::from_mask(color.into_iter().map(|c| c.unwrap_or(false)).collect()))
    }

    /// Merges the endpoints of edge `e`.
    pub fn contract_edge(&self, e: usize) -> Result<(ProblemInstance, MergeRecord)> {
        if e >= self.edges.len() {
            return Err(Error::contract(format!("edge {e} does not exist")));
        }
        self.contract_edges(&[e])
    }

    /// Merges the endpoints of every listed edge at once. New node ids are
    /// assigned in order of the smallest original member of each class.
    pub fn contract_edges(&self, ids: &[usize]) -> Result<(ProblemInstance, MergeRecord)> {
        let mut uf = UnionFind::new(self.node_count);
        for &e in ids {
            let edge = self
                .edges
                .get(e)
                .ok_or_else(|| Error::contract(format!("edge {e} does not exist")))?;
            uf.union(edge.u, edge.v);
        }
        let node_map = uf.labels();
        let new_n = node_map.iter().map(|&l| l + 1).max().unwrap_or(0);

        let mut dropped = 0.0;
        let mut triples = Vec::with_capacity(self.edges.len());
        let mut origin = Vec::with_capacity(self.edges.len());
        for (id, e) in self.edges.iter().enumerate() {
            let (a, b) = (node_map[e.u], node_map[e.v]);
            if a == b {
                dropped += e.weight;
            } else {
                triples.push((a.min(b), a.max(b), e.weight));
                origin.push(id);
            }
        }
        let mut order: Vec<usize> = (0..triples.len()).collect();
        order.sort_by_key(|&i| (triples[i].0, triples[i].1));
        let mut edges: Vec<Edge> = Vec::with_capacity(triples.len());
        let mut edge_map = vec![None; self.edges.len()];
        for i in order {
            let (u, v, w) = triples[i];
            match edges.last_mut() {
                Some(last) if last.u == u && last.v == v => last.weight += w,
                _ => edges.push(Edge { u, v, weight: w }),
            }
            edge_map[origin[i]] = Some(edges.len() - 1);
        }
        let out = ProblemInstance::from_edges(self.kind, new_n, edges, self.objective_constant);
        Ok((
            out,
            MergeRecord {
                node_map,
                edge_map,
                dropped_self_loop_weight: dropped,
            },
        ))
    }

    /// All triangles, each once, ordered by their sorted node triple.
    pub fn enumerate_triangles(&self) -> Vec<Triangle> {
        let n = self.node_count;
        let rank_key = |x: usize| (self.adj[x].len(), x);
        // orient every edge from lower to higher (degree, id) rank
        let mut out_adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (id, e) in self.edges.iter().enumerate() {
            if rank_key(e.u) < rank_key(e.v) {
                out_adj[e.u].push((e.v, id));
            } else {
                out_adj[e.v].push((e.u, id));
            }
        }
        let mut mark = vec![usize::MAX; n];
        let mut found = Vec::new();
        for a in 0..n {
            for &(b, e) in &out_adj[a] {
                mark[b] = e;
            }
            for &(b, e_ab) in &out_adj[a] {
                for &(c, e_bc) in &out_adj[b] {
                    if mark[c] != usize::MAX {
                        found.push(Triangle::from_parts([a, b, c], [(a, b, e_ab), (b, c, e_bc), (a, c, mark[c])]));
                    }
                }
            }
            for &(b, _) in &out_adj[a] {
                mark[b] = usize::MAX;
            }
        }
        found.sort_unstable_by_key(|t| t.nodes);
        found
    }

    /// Connected components of the graph restricted to edges accepted by
    /// `keep`. Labels are numbered in order of each component's smallest node.
    pub fn connected_components(&self, keep: impl Fn(usize) -> bool) -> Partition {
        let mut uf = UnionFind::new(self.node_count);
        for (id, e) in self.edges.iter().enumerate() {
            if keep(id) {
                uf.union(e.u, e.v);
            }
        }
        Partition::from_labels(uf.labels())
    }

    /// Whether the subgraph induced by `set` is connected. Empty sets count as
    /// not connected.
    pub fn is_connected(&self, set: &NodeSet) -> bool {
        let Some(start) = set.iter().next() else {
            return false;
        };
        let mut seen = vec![false; self.node_count];
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(a) = stack.pop() {
            for &(b, _) in &self.adj[a] {
                if set.contains(b) && !seen[b] {
                    seen[b] = true;
                    count += 1;
                    stack.push(b);
                }
            }
        }
        count == set.len()
    }

    /// Edges with both endpoints in `set`, ascending.
    pub fn inner_edges(&self, set: &NodeSet) -> Vec<usize> {
        let mut out: Vec<usize> = set
            .iter()
            .flat_map(|u| {
                self.adj[u]
                    .iter()
                    .filter(move |&&(n, _)| n > u && set.contains(n))
                    .map(|&(_, e)| e)
            })
            .collect();
        out.sort_unstable();
        out
    }
}

/// One bit per edge, indexed like [`ProblemInstance::edges`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeLabeling {
    values: Vec<bool>,
}

impl EdgeLabeling {
    pub fn zeros(m: usize) -> Self {
        EdgeLabeling { values: vec![false; m] }
    }

    pub fn ones(m: usize) -> Self {
        EdgeLabeling { values: vec![true; m] }
    }

    pub fn from_vec(values: Vec<bool>) -> Self {
        EdgeLabeling { values }
    }

    /// Incidence vector of `delta(U)`.
    pub fn from_cut(inst: &ProblemInstance, set: &NodeSet) -> Self {
        let mut x = Self::zeros(inst.edge_count());
        for e in inst.cut_edges(set) {
            x.set(e, true);
        }
        x
    }

    /// Incidence vector of the multicut separating the blocks of `p`.
    pub fn from_partition(inst: &ProblemInstance, p: &Partition) -> Self {
        EdgeLabeling {
            values: inst.edges().iter().map(|e| p.label(e.u) != p.label(e.v)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, e: usize) -> bool {
        self.values[e]
    }

    pub fn set(&mut self, e: usize, value: bool) {
        self.values[e] = value;
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.values.iter().copied()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.values
    }

    pub fn count_ones(&self) -> usize {
        self.values.iter().filter(|&&b| b).count()
    }

    pub fn xor(&self, other: &EdgeLabeling) -> EdgeLabeling {
        EdgeLabeling {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a ^ b).collect(),
        }
    }
}

/// A subset of `0..universe`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NodeSet {
    mask: Vec<bool>,
    len: usize,
}

impl NodeSet {
    pub fn empty(universe: usize) -> Self {
        NodeSet {
            mask: vec![false; universe],
            len: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        NodeSet {
            mask: vec![true; universe],
            len: universe,
        }
    }

    pub fn from_mask(mask: Vec<bool>) -> Self {
        let len = mask.iter().filter(|&&b| b).count();
        NodeSet { mask, len }
    }

    /// Panics if a member is outside `0..universe`.
    pub fn from_nodes(universe: usize, nodes: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(universe);
        for n in nodes {
            s.insert(n);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, n: usize) -> bool {
        self.mask.get(n).copied().unwrap_or(false)
    }

    pub fn insert(&mut self, n: usize) {
        if !self.mask[n] {
            self.mask[n] = true;
            self.len += 1;
        }
    }

    pub fn remove(&mut self, n: usize) {
        if self.mask[n] {
            self.mask[n] = false;
            self.len -= 1;
        }
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn complement(&self) -> NodeSet {
        NodeSet {
            mask: self.mask.iter().map(|b| !b).collect(),
            len: self.mask.len() - self.len,
        }
    }

    pub fn symmetric_difference(&self, other: &NodeSet) -> NodeSet {
        NodeSet::from_mask(self.mask.iter().zip(&other.mask).map(|(a, b)| a ^ b).collect())
    }

    pub fn as_mask(&self) -> &[bool] {
        &self.mask
    }
}

/// A node set with a chosen list of edges inside it.
#[derive(Clone, Debug, PartialEq)]
pub struct Subgraph {
    pub nodes: NodeSet,
    pub edges: Vec<usize>,
}

impl Subgraph {
    /// The subgraph induced by `nodes`.
    pub fn induced(inst: &ProblemInstance, nodes: NodeSet) -> Self {
        let edges = inst.inner_edges(&nodes);
        Subgraph { nodes, edges }
    }

    /// Checks that every listed edge lies inside the node set.
    pub fn validate(&self, inst: &ProblemInstance) -> Result<()> {
        inst.check_universe(&self.nodes)?;
        for &e in &self.edges {
            let edge = inst
                .edges
                .get(e)
                .ok_or_else(|| Error::contract(format!("subgraph edge {e} does not exist")))?;
            if !self.nodes.contains(edge.u) || !self.nodes.contains(edge.v) {
                return Err(Error::contract(format!("subgraph edge {e} leaves the node set")));
            }
        }
        Ok(())
    }

    /// Connectivity of `(nodes, edges)` using only the listed edges.
    pub fn is_connected(&self, inst: &ProblemInstance) -> bool {
        if self.nodes.is_empty() {
            return false;
        }
        let mut uf = UnionFind::new(inst.node_count());
        for &e in &self.edges {
            let edge = inst.edge(e);
            uf.union(edge.u, edge.v);
        }
        let mut members = self.nodes.iter();
        let first = members.next().map(|n| uf.find(n));
        members.all(|n| Some(uf.find(n)) == first)
    }
}

/// A partition of the nodes given by dense block labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    labels: Vec<usize>,
    count: usize,
}

impl Partition {
    /// Relabels arbitrary block ids so that blocks are numbered by their
    /// smallest node.
    pub fn from_labels(labels: Vec<usize>) -> Self {
        let mut map = std::collections::HashMap::new();
        let labels: Vec<usize> = labels
            .into_iter()
            .map(|l| {
                let next = map.len();
                *map.entry(l).or_insert(next)
            })
            .collect();
        Partition { count: map.len(), labels }
    }

    pub fn label(&self, n: usize) -> usize {
        self.labels[n]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn block_count(&self) -> usize {
        self.count
    }

    /// Blocks with members ascending, in label order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.count];
        for (n, &l) in self.labels.iter().enumerate() {
            blocks[l].push(n);
        }
        blocks
    }

    /// The smallest node of each block.
    pub fn representatives(&self) -> Vec<usize> {
        self.blocks().iter().map(|b| b[0]).collect()
    }
}

/// Three mutually adjacent nodes `a < b < c` and the edges `ab`, `ac`, `bc`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Triangle {
    pub nodes: [usize; 3],
    pub edges: [usize; 3],
}

impl Triangle {
    fn from_parts(mut nodes: [usize; 3], parts: [(usize, usize, usize); 3]) -> Self {
        nodes.sort_unstable();
        let find = |x: usize, y: usize| {
            parts
                .iter()
                .find(|&&(p, q, _)| (p == x && q == y) || (p == y && q == x))
                .map(|&(_, _, e)| e)
                .unwrap_or(usize::MAX)
        };
        let [a, b, c] = nodes;
        Triangle {
            nodes,
            edges: [find(a, b), find(a, c), find(b, c)],
        }
    }
}

/// How node and edge ids changed under a contraction.
#[derive(Clone, Debug, PartialEq)]
pub struct MergeRecord {
    /// Old node id to new node id.
    pub node_map: Vec<usize>,
    /// Old edge id to new edge id, or `None` when the edge became a self-loop.
    pub edge_map: Vec<Option<usize>>,
    /// Total weight of the dropped self-loops.
    pub dropped_self_loop_weight: f64,
}

impl MergeRecord {
    /// Original nodes grouped by the new node they were merged into.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let n = self.node_map.iter().map(|&l| l + 1).max().unwrap_or(0);
        let mut out = vec![Vec::new(); n];
        for (old, &new) in self.node_map.iter().enumerate() {
            out[new].push(old);
        }
        out
    }

    /// Labeling of the pre-contraction graph: contracted edges 0, all others
    /// copied from `y`.
    pub fn expand(&self, y: &EdgeLabeling) -> EdgeLabeling {
        EdgeLabeling::from_vec(self.edge_map.iter().map(|m| m.is_some_and(|e| y.get(e))).collect())
    }
}
