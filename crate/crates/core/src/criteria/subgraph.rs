//! Subgraph criteria. A subgraph `H` whose cycle packing proves a zero
//! multicut optimum on `H` certifies its inner edges through minimum cuts of
//! the reduced costs, compared against the weight leaving `H`.

use rayon::prelude::*;

use super::{pos_sum, Criterion, PersistencyCertificate, Witness};
use crate::error::{Error, Result};
use crate::flow::{gomory_hu, FlowNetwork, GomoryHuTree, MaxFlowSolver};
use crate::graph::{NodeSet, ProblemInstance, ProblemKind, Subgraph};
use crate::packing::{zero_optimum_check, reduced_costs, DualPacking, ReducedCosts};

/// Bisection stops once the bracket is shorter than this.
const ALPHA_TOL: f64 = 1e-6;
const MAX_ITERATIONS: usize = 60;

/// `H` with local node ids `0..nodes.len()` in increasing global order.
struct LocalView {
    nodes: Vec<usize>,
    local: Vec<usize>,
}

impl LocalView {
    fn new(inst: &ProblemInstance, set: &NodeSet) -> Self {
        let nodes = set.to_vec();
        let mut local = vec![usize::MAX; inst.node_count()];
        for (i, &x) in nodes.iter().enumerate() {
            local[x] = i;
        }
        LocalView { nodes, local }
    }

    fn contains(&self, x: usize) -> bool {
        self.local[x] != usize::MAX
    }
}

/// Validates `h` and the packing, returning the reduced costs.
fn prepare(inst: &ProblemInstance, h: &Subgraph, packing: &DualPacking, kind: ProblemKind) -> Result<ReducedCosts> {
    if inst.kind() != kind {
        return Err(Error::UnsupportedKind(inst.kind().name()));
    }
    h.validate(inst)?;
    let mut edges = h.edges.clone();
    edges.sort_unstable();
    edges.dedup();
    if edges != inst.inner_edges(&h.nodes) {
        return Err(Error::contract("subgraph must be induced by its node set"));
    }
    if !h.is_connected(inst) {
        return Err(Error::contract("subgraph must be connected"));
    }
    if !zero_optimum_check(inst, h, packing) {
        return Err(Error::contract(
            "packing does not certify a zero multicut optimum on the subgraph",
        ));
    }
    reduced_costs(inst, packing)
}

/// Network on the local ids of `view` with reduced cost capacities.
fn reduced_network(inst: &ProblemInstance, h: &Subgraph, view: &LocalView, rc: &ReducedCosts, extra: usize) -> FlowNetwork {
    let mut net = FlowNetwork::new(view.nodes.len() + extra);
    for &e in &h.edges {
        let edge = inst.edge(e);
        let cap = rc.get(e).max(0.0);
        if cap > 0.0 {
            net.add_edge(view.local[edge.u], view.local[edge.v], cap)
                .expect("reduced costs are finite");
        }
    }
    net
}

fn subgraph_witness(view: &LocalView, rhs: f64, achieved: f64, alpha: Option<f64>) -> Witness {
    Witness::Subgraph {
        nodes: view.nodes.clone(),
        rhs,
        achieved,
        alpha,
    }
}

/// Certifies `x_uv = 0` for inner edges `uv` of `H` whose minimum `u`-`v` cut
/// under reduced costs is at least the positive weight leaving `H`. All
/// certificates from one call are jointly valid.
pub fn multicut_subgraph_criterion(
    inst: &ProblemInstance,
    h: &Subgraph,
    packing: &DualPacking,
) -> Result<Vec<PersistencyCertificate>> {
    let rc = prepare(inst, h, packing, ProblemKind::Multicut)?;
    let view = LocalView::new(inst, &h.nodes);
    let rhs = pos_sum(inst, inst.cut_edges(&h.nodes));
    let net = reduced_network(inst, h, &view, &rc, 0);
    gomory_hu_certificates(inst, h, &view, &net, rhs, Criterion::SubgraphMc)
}

fn gomory_hu_certificates(
    inst: &ProblemInstance,
    h: &Subgraph,
    view: &LocalView,
    net: &FlowNetwork,
    rhs: f64,
    criterion: Criterion,
) -> Result<Vec<PersistencyCertificate>> {
    let tree = (rhs > 0.0).then(|| gomory_hu(net)).transpose()?;
    let mut certs = Vec::new();
    for &e in &h.edges {
        let edge = inst.edge(e);
        let achieved = match &tree {
            Some(t) => t.query(view.local[edge.u], view.local[edge.v]),
            None => 0.0,
        };
        if achieved >= rhs {
            certs.push(PersistencyCertificate::new(e, 0, criterion, subgraph_witness(view, rhs, achieved, None)));
        }
    }
    certs.sort_by_key(|c| c.edge);
    Ok(certs)
}

/// Like [`multicut_subgraph_criterion`] but the cut may also run through the
/// outer endpoints of positive edges leaving `H`: the network is extended by
/// these nodes and edges at their full weight.
pub fn boundary_refined_criterion(
    inst: &ProblemInstance,
    h: &Subgraph,
    packing: &DualPacking,
) -> Result<Vec<PersistencyCertificate>> {
    let rc = prepare(inst, h, packing, ProblemKind::Multicut)?;
    let view = LocalView::new(inst, &h.nodes);
    let leaving: Vec<usize> = inst
        .cut_edges(&h.nodes)
        .into_iter()
        .filter(|&e| inst.weight(e) > 0.0)
        .collect();
    let rhs = pos_sum(inst, leaving.iter().copied());
    let mut outer = Vec::new();
    for &e in &leaving {
        let edge = inst.edge(e);
        outer.push(if view.contains(edge.u) { edge.v } else { edge.u });
    }
    outer.sort_unstable();
    outer.dedup();
    let mut net = reduced_network(inst, h, &view, &rc, outer.len());
    for &e in &leaving {
        let edge = inst.edge(e);
        let (inner, out) = if view.contains(edge.u) { (edge.u, edge.v) } else { (edge.v, edge.u) };
        let o = view.nodes.len() + outer.binary_search(&out).expect("collected above");
        net.add_edge(view.local[inner], o, edge.weight).expect("finite weight");
    }
    gomory_hu_certificates(inst, h, &view, &net, rhs, Criterion::BoundarySubgraph)
}

/// The boundary refinement for the single edge `f = uv` with `theta_f >= 0`:
/// `theta_uv + sum over common positive neighbours w of min(theta_uw, theta_vw)`
/// must reach the positive weight leaving `{u, v}`.
pub fn boundary_edge_criterion(inst: &ProblemInstance, f: usize) -> Option<PersistencyCertificate> {
    if inst.kind() != ProblemKind::Multicut || f >= inst.edge_count() {
        return None;
    }
    let e = *inst.edge(f);
    if e.weight < 0.0 {
        return None;
    }
    let positive = |x: usize| -> Vec<(usize, f64)> {
        inst.neighbors(x)
            .iter()
            .filter(|&&(_, id)| id != f && inst.weight(id) > 0.0)
            .map(|&(y, id)| (y, inst.weight(id)))
            .collect()
    };
    let (nu, nv) = (positive(e.u), positive(e.v));
    let rhs: f64 = nu.iter().chain(&nv).map(|&(_, w)| w).sum();
    let (mut i, mut j, mut shared) = (0, 0, 0.0);
    while i < nu.len() && j < nv.len() {
        match nu[i].0.cmp(&nv[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                shared += nu[i].1.min(nv[j].1);
                i += 1;
                j += 1;
            }
        }
    }
    let achieved = e.weight + shared;
    (achieved >= rhs).then(|| {
        PersistencyCertificate::new(
            f,
            0,
            Criterion::BoundaryEdge,
            Witness::Subgraph {
                nodes: vec![e.u, e.v],
                rhs,
                achieved,
                alpha: None,
            },
        )
    })
}

/// [`boundary_edge_criterion`] for every edge.
pub fn boundary_edge_all(inst: &ProblemInstance) -> Vec<PersistencyCertificate> {
    (0..inst.edge_count())
        .into_par_iter()
        .filter_map(|f| boundary_edge_criterion(inst, f))
        .collect()
}

/// Outcome of maximizing the concave function `g` over `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BisectionOutcome {
    /// Best weight found and its value.
    pub alpha: f64,
    pub value: f64,
    /// Upper bound on `max g` from the supporting lines at the bracket ends.
    pub upper_bound: f64,
    pub evaluations: usize,
}

/// The max-cut subgraph bound for one inner edge `uv` of `H`, as a function
/// of a weight `alpha` in `[0, 1]`:
///
/// `g(alpha) = min cut of u and v` in `H` under reduced costs, extended by
/// edges `w-v` of capacity `alpha b_w` and `u-w` of capacity `(1 - alpha) b_w`
/// for `w` other than `u, v`, plus `alpha b_u + (1 - alpha) b_v`, where `b_w` is the absolute weight
/// between `w` and the rest of the graph. Each `g(alpha)` is a lower bound on
/// the cut condition for every `u`-`v` separation of `H`, and `g` is concave.
pub struct MaxcutBisection {
    solver: MaxFlowSolver,
    s: usize,
    t: usize,
    b: Vec<f64>,
    /// `(pair, b_w)` of the `w-v` and `u-w` edges.
    to_t: Vec<(usize, f64)>,
    from_s: Vec<(usize, f64)>,
    evaluations: usize,
}

impl MaxcutBisection {
    /// Sets up `g` for edge `f` of `h`. Fails unless `h` is induced,
    /// connected, contains `f` and its packing proves a zero multicut
    /// optimum on `h`.
    pub fn new(inst: &ProblemInstance, h: &Subgraph, packing: &DualPacking, f: usize) -> Result<Self> {
        let rc = prepare(inst, h, packing, ProblemKind::Maxcut)?;
        if !h.edges.contains(&f) {
            return Err(Error::contract(format!("edge {f} is not in the subgraph")));
        }
        let view = LocalView::new(inst, &h.nodes);
        let net = reduced_network(inst, h, &view, &rc, 0);
        let b = boundary_weights(inst, &view);
        let e = inst.edge(f);
        Ok(Self::from_parts(net, b, view.local[e.u], view.local[e.v]))
    }

    fn from_parts(mut net: FlowNetwork, b: Vec<f64>, s: usize, t: usize) -> Self {
        let (mut to_t, mut from_s) = (Vec::new(), Vec::new());
        for (w, &bw) in b.iter().enumerate() {
            if bw <= 0.0 {
                continue;
            }
            if w != s && w != t {
                to_t.push((net.add_edge(w, t, 0.0).expect("valid nodes"), bw));
                from_s.push((net.add_edge(s, w, 0.0).expect("valid nodes"), bw));
            }
        }
        MaxcutBisection {
            solver: MaxFlowSolver::new(net),
            s,
            t,
            b,
            to_t,
            from_s,
            evaluations: 0,
        }
    }

    /// `B`, the total absolute weight leaving `H`.
    pub fn boundary_total(&self) -> f64 {
        self.b.iter().sum()
    }

    /// `g(alpha)` and a supergradient, `b(U) - b(H \ U)` for the `u` side `U`
    /// of the minimum cut.
    pub fn eval(&mut self, alpha: f64) -> Result<(f64, f64)> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidParams(format!("alpha {alpha} outside [0, 1]")));
        }
        for i in 0..self.to_t.len() {
            let (pair, bw) = self.to_t[i];
            let c = alpha * bw;
            self.solver.set_capacity(pair, c, c)?;
        }
        for i in 0..self.from_s.len() {
            let (pair, bw) = self.from_s[i];
            let c = (1.0 - alpha) * bw;
            self.solver.set_capacity(pair, c, c)?;
        }
        let cut = self.solver.solve(self.s, self.t)?;
        self.evaluations += 1;
        let value = cut.value + alpha * self.b[self.s] + (1.0 - alpha) * self.b[self.t];
        let slope: f64 = self
            .b
            .iter()
            .enumerate()
            .map(|(w, &bw)| if cut.side.contains(w) { bw } else { -bw })
            .sum();
        Ok((value, slope))
    }

    /// Maximizes `g` by bisection on the sign of the supergradient, taking a
    /// cutting-plane step at the intersection of the supporting lines at the
    /// bracket ends before each midpoint. With a `target`, stops as soon as
    /// it is reached or proven unreachable.
    pub fn maximize(&mut self, target: Option<f64>) -> Result<BisectionOutcome> {
        let start = self.evaluations;
        let (g0, s0) = self.eval(0.0)?;
        let mut best = (0.0, g0);
        let done = |best: (f64, f64), upper: f64, evals: usize| BisectionOutcome {
            alpha: best.0,
            value: best.1,
            upper_bound: upper,
            evaluations: evals - start,
        };
        if s0 <= 0.0 {
            return Ok(done(best, g0, self.evaluations));
        }
        let (g1, s1) = self.eval(1.0)?;
        if g1 > best.1 {
            best = (1.0, g1);
        }
        if s1 >= 0.0 {
            return Ok(done(best, g1, self.evaluations));
        }
        let (mut lo, mut hi) = ((0.0, g0, s0), (1.0, g1, s1));
        let mut upper;
        let mut iterations = 0;
        loop {
            let cross = ((hi.1 - lo.1 + lo.2 * lo.0 - hi.2 * hi.0) / (lo.2 - hi.2)).clamp(lo.0, hi.0);
            upper = (lo.1 + lo.2 * (cross - lo.0)).max(best.1);
            if let Some(t) = target {
                if best.1 >= t || upper < t {
                    break;
                }
            }
            if upper - best.1 <= 1e-12 * (1.0 + upper.abs()) || hi.0 - lo.0 < ALPHA_TOL || iterations >= MAX_ITERATIONS {
                break;
            }
            iterations += 1;
            let mut probes = vec![cross];
            probes.push(f64::NAN);
            for probe in probes {
                let alpha = if probe.is_nan() { 0.5 * (lo.0 + hi.0) } else { probe };
                if alpha <= lo.0 || alpha >= hi.0 {
                    continue;
                }
                let (g, s) = self.eval(alpha)?;
                if g > best.1 {
                    best = (alpha, g);
                }
                if s > 0.0 {
                    lo = (alpha, g, s);
                } else if s < 0.0 {
                    hi = (alpha, g, s);
                } else {
                    return Ok(done(best, best.1, self.evaluations));
                }
            }
        }
        Ok(done(best, upper, self.evaluations))
    }
}

fn boundary_weights(inst: &ProblemInstance, view: &LocalView) -> Vec<f64> {
    let mut b = vec![0.0; view.nodes.len()];
    for (i, &x) in view.nodes.iter().enumerate() {
        b[i] = inst
            .neighbors(x)
            .iter()
            .filter(|&&(y, _)| !view.contains(y))
            .map(|&(_, e)| inst.weight(e).abs())
            .sum();
    }
    b
}

struct MaxcutShared {
    view: LocalView,
    net: FlowNetwork,
    b: Vec<f64>,
    total: f64,
    tree: GomoryHuTree,
}

impl MaxcutShared {
    fn new(inst: &ProblemInstance, h: &Subgraph, packing: &DualPacking) -> Result<Self> {
        let rc = prepare(inst, h, packing, ProblemKind::Maxcut)?;
        let view = LocalView::new(inst, &h.nodes);
        let net = reduced_network(inst, h, &view, &rc, 0);
        let b = boundary_weights(inst, &view);
        let total = b.iter().sum();
        let tree = gomory_hu(&net)?;
        Ok(MaxcutShared { view, net, b, total, tree })
    }

    fn check(&self, inst: &ProblemInstance, f: usize) -> Result<Option<PersistencyCertificate>> {
        let e = inst.edge(f);
        let (s, t) = (self.view.local[e.u], self.view.local[e.v]);
        let lambda = self.tree.query(s, t);
        let rhs = self.total;
        let certify = |achieved: f64, alpha: f64| {
            Some(PersistencyCertificate::new(
                f,
                0,
                Criterion::SubgraphMaxcut,
                subgraph_witness(&self.view, rhs, achieved, Some(alpha)),
            ))
        };
        // g(1/2) >= lambda + B/2 because every node pays half its boundary weight
        if lambda + 0.5 * rhs >= rhs {
            return Ok(certify(lambda + 0.5 * rhs, 0.5));
        }
        // the Gomory-Hu cut bounds g from above for every alpha
        let side = self.tree.cut_side(s, t);
        let b_side: f64 = self.b.iter().enumerate().filter(|&(w, _)| side.contains(w)).map(|(_, &bw)| bw).sum();
        if lambda + b_side.max(rhs - b_side) < rhs {
            return Ok(None);
        }
        let mut g = MaxcutBisection::from_parts(self.net.clone(), self.b.clone(), s, t);
        let out = g.maximize(Some(rhs))?;
        Ok(if out.value >= rhs { certify(out.value, out.alpha) } else { None })
    }
}

/// Checks the max-cut subgraph criterion for one inner edge `f` of `h`:
/// certifies `x_f = 0` if `max g >= B`, see [`MaxcutBisection`].
pub fn maxcut_subgraph_criterion(
    inst: &ProblemInstance,
    h: &Subgraph,
    packing: &DualPacking,
    f: usize,
) -> Result<Option<PersistencyCertificate>> {
    let shared = MaxcutShared::new(inst, h, packing)?;
    if !h.edges.contains(&f) {
        return Err(Error::contract(format!("edge {f} is not in the subgraph")));
    }
    shared.check(inst, f)
}

/// [`maxcut_subgraph_criterion`] for every inner edge of `h`. Certificates
/// from one call are jointly valid.
pub fn maxcut_subgraph_all(
    inst: &ProblemInstance,
    h: &Subgraph,
    packing: &DualPacking,
) -> Result<Vec<PersistencyCertificate>> {
    let shared = MaxcutShared::new(inst, h, packing)?;
    let mut edges = h.edges.clone();
    edges.sort_unstable();
    let found: Result<Vec<Option<PersistencyCertificate>>> =
        edges.par_iter().map(|&f| shared.check(inst, f)).collect();
    Ok(found?.into_iter().flatten().collect())
}
