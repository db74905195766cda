//! Maximum flow, minimum cuts and Gomory-Hu trees on networks with real
//! capacities.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::NodeSet;

/// Residual capacities at or below this value count as saturated.
pub const RESIDUAL_EPS: f64 = 1e-12;

/// Relative tolerance for the flow value versus the capacity of the cut it induces.
const VERIFY_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
struct ArcPair {
    a: usize,
    b: usize,
    cap_ab: f64,
    cap_ba: f64,
}

/// A network of arc pairs. An undirected edge is a pair with equal capacity in
/// both directions; a directed arc has zero reverse capacity.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FlowNetwork {
    node_count: usize,
    pairs: Vec<ArcPair>,
}

fn check_capacity(c: f64) -> Result<()> {
    if !(c >= 0.0 && c.is_finite()) {
        return Err(Error::contract(format!("capacity {c} is negative or not finite")));
    }
    Ok(())
}

impl FlowNetwork {
    pub fn new(node_count: usize) -> Self {
        FlowNetwork {
            node_count,
            pairs: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    fn check_nodes(&self, a: usize, b: usize) -> Result<()> {
        if a >= self.node_count || b >= self.node_count || a == b {
            return Err(Error::contract(format!(
                "arc ({a}, {b}) is a loop or leaves 0..{}",
                self.node_count
            )));
        }
        Ok(())
    }

    /// Adds an undirected edge and returns its pair index.
    pub fn add_edge(&mut self, a: usize, b: usize, cap: f64) -> Result<usize> {
        self.add_pair(a, b, cap, cap)
    }

    /// Adds a directed arc `a -> b` and returns its pair index.
    pub fn add_arc(&mut self, a: usize, b: usize, cap: f64) -> Result<usize> {
        self.add_pair(a, b, cap, 0.0)
    }

    fn add_pair(&mut self, a: usize, b: usize, cap_ab: f64, cap_ba: f64) -> Result<usize> {
        self.check_nodes(a, b)?;
        check_capacity(cap_ab)?;
        check_capacity(cap_ba)?;
        self.pairs.push(ArcPair { a, b, cap_ab, cap_ba });
        Ok(self.pairs.len() - 1)
    }

    /// Total capacity of arcs leaving `side`.
    pub fn cut_capacity(&self, side: &NodeSet) -> f64 {
        self.pairs
            .iter()
            .map(|p| match (side.contains(p.a), side.contains(p.b)) {
                (true, false) => p.cap_ab,
                (false, true) => p.cap_ba,
                _ => 0.0,
            })
            .sum()
    }
}

/// A minimum s-t cut: its capacity and the source side.
#[derive(Clone, Debug, PartialEq)]
pub struct MinCut {
    pub value: f64,
    pub side: NodeSet,
}

/// Exact minimum s-t cut. The returned side is the set of nodes reachable
/// from `s` in the final residual network, i.e. the inclusion-minimal
/// minimum cut.
pub fn min_cut(net: &FlowNetwork, s: usize, t: usize) -> Result<MinCut> {
    MaxFlowSolver::new(net.clone()).solve(s, t)
}

/// Applies capacity updates `(pair index, new capacity)` to undirected pairs
/// and re-solves, reusing the flow already present in `solver`.
pub fn min_cut_incremental(solver: &mut MaxFlowSolver, s: usize, t: usize, updates: &[(usize, f64)]) -> Result<MinCut> {
    for &(pair, cap) in updates {
        solver.set_capacity(pair, cap, cap)?;
    }
    solver.solve(s, t)
}

/// Dinic's algorithm with state that survives capacity changes, so that a
/// sequence of nearby problems can warm-start from the previous flow.
#[derive(Clone, Debug)]
pub struct MaxFlowSolver {
    net: FlowNetwork,
    /// Net flow on each pair, positive in the `a -> b` direction.
    flow: Vec<f64>,
    /// Per node: (pair index, true if the node is the pair's tail `a`).
    adj: Vec<Vec<(usize, bool)>>,
    terminals: Option<(usize, usize)>,
    level: Vec<i32>,
    cursor: Vec<usize>,
}

impl MaxFlowSolver {
    pub fn new(net: FlowNetwork) -> Self {
        let n = net.node_count;
        let mut adj = vec![Vec::new(); n];
        for (i, p) in net.pairs.iter().enumerate() {
            adj[p.a].push((i, true));
            adj[p.b].push((i, false));
        }
        MaxFlowSolver {
            flow: vec![0.0; net.pairs.len()],
            net,
            adj,
            terminals: None,
            level: vec![0; n],
            cursor: vec![0; n],
        }
    }

    pub fn network(&self) -> &FlowNetwork {
        &self.net
    }

    fn residual(&self, pair: usize, forward: bool) -> f64 {
        let p = &self.net.pairs[pair];
        if forward {
            p.cap_ab - self.flow[pair]
        } else {
            p.cap_ba + self.flow[pair]
        }
    }

    fn push(&mut self, pair: usize, forward: bool, amount: f64) {
        if forward {
            self.flow[pair] += amount;
        } else {
            self.flow[pair] -= amount;
        }
    }

    fn head(&self, pair: usize, forward: bool) -> usize {
        let p = &self.net.pairs[pair];
        if forward {
            p.b
        } else {
            p.a
        }
    }

    /// Changes the capacities of a pair. Flow exceeding the new capacity is
    /// removed and the resulting imbalance is rerouted; if that fails the
    /// solver restarts from zero flow.
    pub fn set_capacity(&mut self, pair: usize, cap_ab: f64, cap_ba: f64) -> Result<()> {
        if pair >= self.net.pairs.len() {
            return Err(Error::contract(format!("arc pair {pair} does not exist")));
        }
        check_capacity(cap_ab)?;
        check_capacity(cap_ba)?;
        let p = &mut self.net.pairs[pair];
        p.cap_ab = cap_ab;
        p.cap_ba = cap_ba;
        let (a, b) = (p.a, p.b);
        let f = self.flow[pair];
        let (over, from, to) = if f > cap_ab {
            self.flow[pair] = cap_ab;
            (f - cap_ab, a, b)
        } else if -f > cap_ba {
            self.flow[pair] = -cap_ba;
            (-f - cap_ba, b, a)
        } else {
            return Ok(());
        };
        // `from` now holds `over` units of excess and `to` the same deficit
        if !self.repair(from, to, over) {
            self.flow.iter_mut().for_each(|f| *f = 0.0);
        }
        Ok(())
    }

    fn repair(&mut self, excess_node: usize, deficit_node: usize, amount: f64) -> bool {
        let Some((s, t)) = self.terminals else {
            // no committed terminals yet: any flow is discarded on the next solve anyway
            return false;
        };
        let exempt = |x: usize| x == s || x == t;
        let mut excess = if exempt(excess_node) { 0.0 } else { amount };
        let mut deficit = if exempt(deficit_node) { 0.0 } else { amount };
        if excess > 0.0 && deficit > 0.0 {
            let moved = self.route(excess_node, &[deficit_node], excess);
            excess -= moved;
            deficit -= moved;
        }
        if excess > RESIDUAL_EPS {
            excess -= self.route(excess_node, &[t, s], excess);
        }
        if deficit > RESIDUAL_EPS {
            deficit -= self.route_into(deficit_node, &[s, t], deficit);
        }
        excess <= RESIDUAL_EPS && deficit <= RESIDUAL_EPS
    }

    /// Pushes up to `amount` from `from` to the first reachable target along
    /// residual shortest paths. Returns the amount moved.
    fn route(&mut self, from: usize, targets: &[usize], amount: f64) -> f64 {
        let mut moved = 0.0;
        while amount - moved > RESIDUAL_EPS {
            let Some(path) = self.residual_path(from, targets) else {
                break;
            };
            let bottleneck = path
                .iter()
                .map(|&(p, fw)| self.residual(p, fw))
                .fold(amount - moved, f64::min);
            for &(p, fw) in &path {
                self.push(p, fw, bottleneck);
            }
            moved += bottleneck;
        }
        moved
    }

    /// Pushes up to `amount` into `to` from the first source that can reach it.
    fn route_into(&mut self, to: usize, sources: &[usize], amount: f64) -> f64 {
        let mut moved = 0.0;
        for &src in sources {
            moved += self.route(src, &[to], amount - moved);
            if amount - moved <= RESIDUAL_EPS {
                break;
            }
        }
        moved
    }

    fn residual_path(&self, from: usize, targets: &[usize]) -> Option<Vec<(usize, bool)>> {
        let n = self.net.node_count;
        let mut pred: Vec<Option<(usize, bool)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        let mut hit = None;
        'bfs: while let Some(x) = queue.pop_front() {
            for &(p, fw) in &self.adj[x] {
                let y = self.head(p, fw);
                if !seen[y] && self.residual(p, fw) > RESIDUAL_EPS {
                    seen[y] = true;
                    pred[y] = Some((p, fw));
                    if targets.contains(&y) {
                        hit = Some(y);
                        break 'bfs;
                    }
                    queue.push_back(y);
                }
            }
        }
        let mut y = hit?;
        let mut path = Vec::new();
        while y != from {
            let (p, fw) = pred[y]?;
            path.push((p, fw));
            y = self.head(p, !fw);
        }
        path.reverse();
        Some(path)
    }

    fn bfs_levels(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &(p, fw) in &self.adj[x] {
                let y = self.head(p, fw);
                if self.level[y] < 0 && self.residual(p, fw) > RESIDUAL_EPS {
                    self.level[y] = self.level[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        self.level[t] >= 0
    }

    /// One blocking flow phase, written iteratively.
    fn blocking_flow(&mut self, s: usize, t: usize) {
        self.cursor.iter_mut().for_each(|c| *c = 0);
        let mut stack: Vec<(usize, bool)> = Vec::new();
        let mut x = s;
        loop {
            if x == t {
                let bottleneck = stack.iter().map(|&(p, fw)| self.residual(p, fw)).fold(f64::INFINITY, f64::min);
                let mut cut_at = stack.len();
                for (i, &(p, fw)) in stack.iter().enumerate() {
                    self.push(p, fw, bottleneck);
                    if cut_at == stack.len() && self.residual(p, fw) <= RESIDUAL_EPS {
                        cut_at = i;
                    }
                }
                stack.truncate(cut_at);
                x = match stack.last() {
                    Some(&(p, fw)) => self.head(p, fw),
                    None => s,
                };
                continue;
            }
            let mut advanced = false;
            while self.cursor[x] < self.adj[x].len() {
                let (p, fw) = self.adj[x][self.cursor[x]];
                let y = self.head(p, fw);
                if self.level[y] == self.level[x] + 1 && self.residual(p, fw) > RESIDUAL_EPS {
                    stack.push((p, fw));
                    x = y;
                    advanced = true;
                    break;
                }
                self.cursor[x] += 1;
            }
            if advanced {
                continue;
            }
            // dead end
            self.level[x] = -1;
            match stack.pop() {
                Some((p, fw)) => {
                    x = self.head(p, !fw);
                    self.cursor[x] += 1;
                }
                None => break,
            }
        }
    }

    fn outflow(&self, s: usize) -> f64 {
        self.adj[s]
            .iter()
            .map(|&(p, tail)| if tail { self.flow[p] } else { -self.flow[p] })
            .sum()
    }

    /// Maximum flow from `s` to `t` starting from the current flow. Switching
    /// terminals discards the previous flow.
    pub fn solve(&mut self, s: usize, t: usize) -> Result<MinCut> {
        let n = self.net.node_count;
        if s >= n || t >= n || s == t {
            return Err(Error::contract(format!("invalid terminals ({s}, {t}) for {n} nodes")));
        }
        if self.terminals != Some((s, t)) {
            self.flow.iter_mut().for_each(|f| *f = 0.0);
            self.terminals = Some((s, t));
        }
        while self.bfs_levels(s, t) {
            self.blocking_flow(s, t);
        }
        self.bfs_levels(s, t);
        let side = NodeSet::from_mask(self.level.iter().map(|&l| l >= 0).collect());
        let value = self.net.cut_capacity(&side);
        let flow_value = self.outflow(s);
        if (value - flow_value).abs() > VERIFY_TOL * value.abs().max(1.0) {
            return Err(Error::Internal(format!(
                "flow value {flow_value} does not match cut capacity {value}"
            )));
        }
        Ok(MinCut { value, side })
    }
}

/// Tree whose path minima give all pairwise minimum cuts of a network.
#[derive(Clone, Debug, PartialEq)]
pub struct GomoryHuTree {
    /// Parent of every node; node 0 is the root and its own parent.
    pub parent: Vec<usize>,
    /// Minimum cut between a node and its parent (unused for the root).
    pub flow_value: Vec<f64>,
    children: Vec<Vec<usize>>,
}

/// Gusfield's algorithm: `n - 1` maximum flow computations on the original
/// network without contraction.
pub fn gomory_hu(net: &FlowNetwork) -> Result<GomoryHuTree> {
    let n = net.node_count;
    let mut parent = vec![0usize; n];
    let mut value = vec![f64::INFINITY; n];
    let mut solver = MaxFlowSolver::new(net.clone());
    for s in 1..n {
        let t = parent[s];
        let cut = solver.solve(s, t)?;
        value[s] = cut.value;
        for i in 0..n {
            if i != s && cut.side.contains(i) && parent[i] == t {
                parent[i] = s;
            }
        }
        if cut.side.contains(parent[t]) {
            parent[s] = parent[t];
            parent[t] = s;
            value[s] = value[t];
            value[t] = cut.value;
        }
    }
    Ok(GomoryHuTree::from_parents(parent, value))
}

impl GomoryHuTree {
    fn from_parents(parent: Vec<usize>, flow_value: Vec<f64>) -> Self {
        let n = parent.len();
        let mut children = vec![Vec::new(); n];
        for x in 0..n {
            if parent[x] != x {
                children[parent[x]].push(x);
            }
        }
        GomoryHuTree {
            parent,
            flow_value,
            children,
        }
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    fn is_root(&self, x: usize) -> bool {
        self.parent[x] == x
    }

    fn neighbors(&self, x: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let up = (!self.is_root(x)).then(|| (self.parent[x], self.flow_value[x]));
        up.into_iter()
            .chain(self.children[x].iter().map(|&c| (c, self.flow_value[c])))
    }

    /// Minimum of the tree-path values from `u` to every node (`+inf` at `u`).
    pub fn path_minima_from(&self, u: usize) -> Vec<f64> {
        let n = self.node_count();
        let mut best = vec![f64::NAN; n];
        best[u] = f64::INFINITY;
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            for (y, w) in self.neighbors(x) {
                if best[y].is_nan() {
                    best[y] = best[x].min(w);
                    stack.push(y);
                }
            }
        }
        best
    }

    /// Minimum cut value between `u` and `v`.
    pub fn query(&self, u: usize, v: usize) -> f64 {
        self.path_minima_from(u)[v]
    }

    /// The `u` side of a minimum `u`-`v` cut: the component of `u` after
    /// removing a lightest edge on the tree path.
    pub fn cut_side(&self, u: usize, v: usize) -> NodeSet {
        let n = self.node_count();
        // locate the lightest path edge, identified by its child endpoint
        let mut pred: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[u] = true;
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            for (y, _) in self.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    pred[y] = Some(x);
                    stack.push(y);
                }
            }
        }
        let mut removed: Option<(usize, usize, f64)> = None;
        let mut y = v;
        while let Some(x) = pred[y] {
            let child = if self.parent[y] == x && !self.is_root(y) { y } else { x };
            let w = self.flow_value[child];
            if removed.is_none_or(|(_, _, best)| w < best) {
                removed = Some((x, y, w));
            }
            y = x;
        }
        let mut side = NodeSet::empty(n);
        side.insert(u);
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            for (y, _) in self.neighbors(x) {
                let blocked = removed.is_some_and(|(a, b, _)| (x == a && y == b) || (x == b && y == a));
                if !blocked && !side.contains(y) {
                    side.insert(y);
                    stack.push(y);
                }
            }
        }
        side
    }
}
