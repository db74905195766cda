//! Shrinking driver: rounds of persistency criteria on the current graph,
//! certificates applied by contraction, and lifting of solutions back to
//! the original instance.

mod candidates;
mod replay;
mod work;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use candidates::{generate_candidates, greedy_candidates, residual_candidates};
pub use replay::{verify_steps, VerifyOutcome};

use crate::criteria::{
    boundary_edge_all, boundary_refined_criterion, edge_criterion_all, gplus_decomposition, maxcut_subgraph_all,
    multicut_subgraph_criterion, reduced_cost_fixing, triangle_criterion_all, Criterion, PersistencyCertificate,
    TriangleMode,
};
use crate::error::{Error, Result};
use crate::graph::{EdgeLabeling, NodeSet, Partition, ProblemInstance, ProblemKind, Subgraph};
use crate::heuristics::{gaec_primal, maxcut_primal_side};
use crate::packing::{zero_optimum_check, icp, icp_subgraph};
use replay::{apply_certificate, current_edge, replay_single, replay_subgraph, to_original};
use work::{View, WorkGraph};

/// Groups of criteria, in the order of the ablation ladder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    /// Components of the positive subgraph (multicut only).
    Gplus,
    Edge,
    Triangle,
    /// Subgraph criteria on the components of a greedy primal solution, and
    /// the single-edge boundary refinement.
    GreedySubgraph,
    /// Subgraph criteria on the components of the positive residual graph of
    /// a cycle packing, and reduced cost fixing.
    Icp,
}

impl Stage {
    pub const LADDER: [Stage; 5] = [
        Stage::Gplus,
        Stage::Edge,
        Stage::Triangle,
        Stage::GreedySubgraph,
        Stage::Icp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Gplus => "gplus",
            Stage::Edge => "edge",
            Stage::Triangle => "triangle",
            Stage::GreedySubgraph => "subgraph",
            Stage::Icp => "icp",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Stage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Stage::LADDER
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown criterion group '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub stages: BTreeSet<Stage>,
    pub max_rounds: usize,
    /// Recorded in reports; the heuristics themselves are deterministic.
    pub seed: u64,
    /// Exact minimum cuts instead of the four fixed cuts in the triangle
    /// criterion.
    pub exact_triangles: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            stages: Stage::LADDER.into_iter().collect(),
            max_rounds: 10,
            seed: 0,
            exact_triangles: false,
        }
    }
}

impl PipelineConfig {
    pub fn with_stages(mut self, stages: impl IntoIterator<Item = Stage>) -> Self {
        self.stages = stages.into_iter().collect();
        self
    }

    pub fn has(&self, stage: Stage) -> bool {
        self.stages.contains(&stage)
    }
}

/// One entry of the application log. Certificates use original edge ids,
/// original variable values and original node ids; replaying the log on
/// the original instance reproduces the shrunk instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Step {
    /// Max-cut switching on the cut around `nodes`.
    Switch { round: usize, nodes: Vec<usize> },
    /// Negative edges between components of the positive subgraph, deleted
    /// together.
    Split {
        round: usize,
        certificates: Vec<PersistencyCertificate>,
    },
    /// The graph on which the round's criteria were evaluated.
    Snapshot { round: usize },
    /// One certificate, re-checked on the current graph and applied.
    Single {
        round: usize,
        certificate: PersistencyCertificate,
    },
    /// A subgraph criterion evaluated on `nodes`; its certificates are
    /// jointly valid and applied together.
    Batch {
        round: usize,
        criterion: Criterion,
        nodes: Vec<usize>,
        certificates: Vec<PersistencyCertificate>,
    },
    /// Reduced cost fixing on the round's snapshot with the given primal
    /// (cluster label or cut side per original node).
    Fix {
        round: usize,
        primal_labels: Vec<usize>,
        certificates: Vec<PersistencyCertificate>,
    },
}

/// What happened to an original edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeFate {
    /// Part of this current edge.
    Current(usize),
    /// Endpoints contracted together.
    Merged,
    /// Removed with this value.
    Fixed(u8),
}

/// Shrunk instance with everything needed to lift its solutions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShrinkState {
    pub original: ProblemInstance,
    pub current: ProblemInstance,
    /// Original node to current node.
    pub node_map: Vec<usize>,
    pub edge_map: Vec<EdgeFate>,
    /// Per original node: whether an odd number of switches moved it.
    pub flips: Vec<bool>,
    pub steps: Vec<Step>,
    /// Applied or recorded certificates, first occurrence per edge and value.
    pub certificates: Vec<PersistencyCertificate>,
    /// `objective(original, lift(y)) = objective(current, y) + constant`.
    pub constant: f64,
}

impl ShrinkState {
    /// Maps a feasible labeling of the current instance to the original.
    pub fn lift(&self, y: &EdgeLabeling) -> Result<EdgeLabeling> {
        lift(self, y)
    }

    /// Node sets of the recorded switches, in application order (switches
    /// implied by certificates with value one on max-cut are not listed).
    pub fn switch_log(&self) -> Vec<&[usize]> {
        self.steps
            .iter()
            .filter_map(|s| match s {
                Step::Switch { nodes, .. } => Some(nodes.as_slice()),
                _ => None,
            })
            .collect()
    }
}

/// Maps a feasible labeling `y` of `state.current` to a feasible labeling of
/// `state.original` with objective `objective(current, y) + constant`.
pub fn lift(state: &ShrinkState, y: &EdgeLabeling) -> Result<EdgeLabeling> {
    let cur = &state.current;
    if !cur.is_feasible(y)? {
        return Err(Error::contract("labeling is infeasible for the shrunk instance"));
    }
    let orig = &state.original;
    match orig.kind() {
        ProblemKind::Multicut => {
            let part = cur.connected_components(|e| !y.get(e));
            let labels = state.node_map.iter().map(|&c| part.label(c)).collect();
            Ok(EdgeLabeling::from_partition(orig, &Partition::from_labels(labels)))
        }
        ProblemKind::Maxcut => {
            let side = cur.cut_side(y).ok_or_else(|| Error::Internal("feasible cut without a side".into()))?;
            let nodes = (0..orig.node_count()).filter(|&m| side.contains(state.node_map[m]) != state.flips[m]);
            Ok(EdgeLabeling::from_cut(orig, &NodeSet::from_nodes(orig.node_count(), nodes)))
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RoundReport {
    pub round: usize,
    /// Certificates produced on the round's snapshot.
    pub found: BTreeMap<Criterion, usize>,
    /// Certificates that survived re-checking and were applied or recorded.
    pub applied: BTreeMap<Criterion, usize>,
    pub candidates: usize,
    pub nodes: usize,
    pub edges: usize,
    /// Wall time per stage in seconds.
    pub seconds: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub original_nodes: usize,
    pub original_edges: usize,
    pub remaining_nodes: usize,
    pub remaining_edges: usize,
    pub node_fraction: f64,
    pub edge_fraction: f64,
    pub rounds: Vec<RoundReport>,
    pub seconds: f64,
}

fn fraction(part: usize, whole: usize) -> f64 {
    if whole == 0 {
        1.0
    } else {
        part as f64 / whole as f64
    }
}

fn bump(map: &mut BTreeMap<Criterion, usize>, c: Criterion, by: usize) {
    if by > 0 {
        *map.entry(c).or_default() += by;
    }
}

fn timed<T>(rep: &mut RoundReport, stage: &str, f: impl FnOnce() -> T) -> T {
    let t = Instant::now();
    let out = f();
    *rep.seconds.entry(stage.to_string()).or_default() += t.elapsed().as_secs_f64();
    out
}

/// Certificates of one candidate subgraph, in snapshot ids.
struct CandidateResult {
    criterion: Criterion,
    nodes: Vec<usize>,
    certs: Vec<PersistencyCertificate>,
}

fn evaluate_candidate(inst: &ProblemInstance, h: &Subgraph) -> Result<Vec<CandidateResult>> {
    if !h.is_connected(inst) {
        return Ok(Vec::new());
    }
    let packing = icp_subgraph(inst, h)?;
    if !zero_optimum_check(inst, h, &packing) {
        return Ok(Vec::new());
    }
    let nodes = h.nodes.to_vec();
    let mut out = Vec::new();
    match inst.kind() {
        ProblemKind::Multicut => {
            let plain = multicut_subgraph_criterion(inst, h, &packing)?;
            let refined = boundary_refined_criterion(inst, h, &packing)?;
            let extra = refined.len() > plain.len();
            if !plain.is_empty() {
                out.push(CandidateResult {
                    criterion: Criterion::SubgraphMc,
                    nodes: nodes.clone(),
                    certs: plain,
                });
            }
            if extra {
                out.push(CandidateResult {
                    criterion: Criterion::BoundarySubgraph,
                    nodes,
                    certs: refined,
                });
            }
        }
        ProblemKind::Maxcut => {
            let certs = maxcut_subgraph_all(inst, h, &packing)?;
            if !certs.is_empty() {
                out.push(CandidateResult {
                    criterion: Criterion::SubgraphMaxcut,
                    nodes,
                    certs,
                });
            }
        }
    }
    Ok(out)
}

/// Incremental shrinking of one instance. Successive calls to
/// [`Shrinker::run`] continue from the current graph, possibly with
/// different criteria.
#[derive(Clone, Debug)]
pub struct Shrinker {
    original: ProblemInstance,
    work: WorkGraph,
    steps: Vec<Step>,
    certificates: Vec<PersistencyCertificate>,
    recorded: BTreeSet<(usize, u8)>,
    /// Multicut certificates with value one on the graph left by the last
    /// run; replaced whenever the graph may have changed.
    hints: Vec<PersistencyCertificate>,
    rounds: Vec<RoundReport>,
    seconds: f64,
}

impl Shrinker {
    pub fn new(inst: &ProblemInstance) -> Self {
        Shrinker {
            original: inst.clone(),
            work: WorkGraph::new(inst),
            steps: Vec::new(),
            certificates: Vec::new(),
            recorded: BTreeSet::new(),
            hints: Vec::new(),
            rounds: Vec::new(),
            seconds: 0.0,
        }
    }

    pub fn node_count(&self) -> usize {
        self.work.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.work.edge_count()
    }

    /// Runs rounds until one changes nothing or `max_rounds` is reached.
    /// Returns the number of rounds executed.
    pub fn run(&mut self, config: &PipelineConfig) -> Result<usize> {
        let start = Instant::now();
        let mut count = 0;
        while count < config.max_rounds && !config.stages.is_empty() && self.work.edge_count() > 0 {
            count += 1;
            if !self.round(config)? {
                break;
            }
        }
        self.hints = if self.work.kind() == ProblemKind::Multicut && config.has(Stage::Edge) {
            self.must_cut_hints()
        } else {
            Vec::new()
        };
        self.seconds += start.elapsed().as_secs_f64();
        Ok(count)
    }

    /// Cut edges certified on the current graph. They cannot be applied, and
    /// a later contraction may select an optimum that joins their endpoints,
    /// so they are only collected once no further change follows. Their
    /// improving mappings only add cut edges, hence they hold jointly.
    fn must_cut_hints(&self) -> Vec<PersistencyCertificate> {
        let view = self.work.snapshot();
        let certs: Vec<PersistencyCertificate> = edge_criterion_all(&view.inst)
            .into_iter()
            .filter(|c| c.beta == 1)
            .collect();
        if certs.is_empty() {
            return certs;
        }
        let reps = self.work.representative_edges(&view);
        let round = self.rounds.len();
        certs
            .into_iter()
            .map(|c| to_original(&self.work, &view, &reps, c, round))
            .collect()
    }

    fn record(&mut self, cert: PersistencyCertificate, rep: &mut RoundReport) {
        bump(&mut rep.applied, cert.criterion, 1);
        if self.recorded.insert((cert.edge, cert.beta)) {
            self.certificates.push(cert);
        }
    }

    fn primal_labels(&self, view: &View, primal: &EdgeLabeling) -> Vec<usize> {
        let inst = &view.inst;
        let labels: Vec<usize> = match inst.kind() {
            ProblemKind::Multicut => inst.connected_components(|e| !primal.get(e)).labels().to_vec(),
            ProblemKind::Maxcut => {
                let side = inst.cut_side(primal).unwrap_or_else(|| NodeSet::empty(inst.node_count()));
                (0..inst.node_count()).map(|i| usize::from(side.contains(i))).collect()
            }
        };
        (0..self.original.node_count())
            .map(|m| labels[view.local(self.work.root(m)).expect("every class is in the snapshot")])
            .collect()
    }

    /// One round; returns whether the graph changed.
    fn round(&mut self, cfg: &PipelineConfig) -> Result<bool> {
        let r = self.rounds.len() + 1;
        let mut rep = RoundReport {
            round: r,
            ..RoundReport::default()
        };
        let kind = self.work.kind();
        let wants_primal = cfg.has(Stage::GreedySubgraph) || cfg.has(Stage::Icp);
        let mut changed = false;

        if kind == ProblemKind::Maxcut && wants_primal {
            timed(&mut rep, "switch", || {
                let view = self.work.snapshot();
                let side = maxcut_primal_side(&view.inst);
                if !side.is_empty() {
                    let roots: Vec<usize> = side.iter().map(|i| view.roots[i]).collect();
                    let nodes = self.work.expand(roots.iter().copied());
                    self.work.switch(&roots);
                    self.steps.push(Step::Switch { round: r, nodes });
                }
            });
        }

        let mut view = self.work.snapshot();
        if kind == ProblemKind::Multicut && cfg.has(Stage::Gplus) {
            let (certs, _) = timed(&mut rep, "gplus", || gplus_decomposition(&view.inst))?;
            bump(&mut rep.found, Criterion::GplusDecomp, certs.len());
            if !certs.is_empty() {
                let reps = self.work.representative_edges(&view);
                let certs: Vec<PersistencyCertificate> = certs
                    .into_iter()
                    .map(|c| to_original(&self.work, &view, &reps, c, r))
                    .collect();
                for c in &certs {
                    if let Some((ra, rb, _)) = current_edge(&self.work, c) {
                        self.work.delete(ra, rb);
                    }
                }
                for c in &certs {
                    self.record(c.clone(), &mut rep);
                }
                self.steps.push(Step::Split {
                    round: r,
                    certificates: certs,
                });
                changed = true;
                view = self.work.snapshot();
            }
        }
        self.steps.push(Step::Snapshot { round: r });

        let inst = &view.inst;
        let primal = if wants_primal {
            Some(timed(&mut rep, "primal", || gaec_primal(inst)))
        } else {
            None
        };
        let packing = if cfg.has(Stage::Icp) {
            Some(timed(&mut rep, "icp", || icp(inst)))
        } else {
            None
        };
        let edge_certs = if cfg.has(Stage::Edge) {
            timed(&mut rep, "edge", || edge_criterion_all(inst))
        } else {
            Vec::new()
        };
        let boundary_certs = if cfg.has(Stage::GreedySubgraph) && kind == ProblemKind::Multicut {
            timed(&mut rep, "boundary_edge", || boundary_edge_all(inst))
        } else {
            Vec::new()
        };
        let triangle_certs = if cfg.has(Stage::Triangle) {
            let mut skip = vec![false; inst.edge_count()];
            for c in &edge_certs {
                skip[c.edge] = true;
            }
            let mode = if cfg.exact_triangles { TriangleMode::Exact } else { TriangleMode::Default };
            timed(&mut rep, "triangle", || triangle_criterion_all(inst, mode, &skip))
        } else {
            Vec::new()
        };
        let rcf_certs = match (&primal, &packing) {
            (Some(x), Some(p)) => timed(&mut rep, "rcf", || reduced_cost_fixing(inst, x, p))?,
            _ => Vec::new(),
        };
        let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        if let (true, Some(x)) = (cfg.has(Stage::GreedySubgraph), &primal) {
            sets.extend(greedy_candidates(inst, x).into_iter().map(|h| h.nodes.to_vec()));
        }
        if let Some(p) = &packing {
            sets.extend(residual_candidates(inst, p).into_iter().map(|h| h.nodes.to_vec()));
        }
        rep.candidates = sets.len();
        let results: Vec<CandidateResult> = timed(&mut rep, "subgraph", || {
            sets.par_iter()
                .map(|nodes| {
                    let h = Subgraph::induced(inst, NodeSet::from_nodes(inst.node_count(), nodes.iter().copied()));
                    evaluate_candidate(inst, &h)
                })
                .collect::<Result<Vec<_>>>()
                .map(|v| v.into_iter().flatten().collect())
        })?;

        for list in [&edge_certs, &boundary_certs, &triangle_certs, &rcf_certs] {
            for c in list.iter() {
                bump(&mut rep.found, c.criterion, 1);
            }
        }
        for res in &results {
            bump(&mut rep.found, res.criterion, res.certs.len());
        }

        // everything below mutates the graph, so translate first
        let reps = self.work.representative_edges(&view);
        let orig = |c: &PersistencyCertificate| to_original(&self.work, &view, &reps, c.clone(), r);
        let rcf_edges: BTreeSet<usize> = rcf_certs.iter().map(|c| c.edge).collect();
        let mut seen = rcf_edges.clone();
        let singles: Vec<PersistencyCertificate> = edge_certs
            .iter()
            .chain(&boundary_certs)
            .chain(&triangle_certs)
            .filter(|c| !(kind == ProblemKind::Multicut && c.beta == 1))
            .filter(|c| seen.insert(c.edge))
            .map(orig)
            .collect();
        let batches: Vec<(Criterion, Vec<usize>, Vec<PersistencyCertificate>)> = results
            .iter()
            .map(|res| {
                let nodes = self.work.expand(res.nodes.iter().map(|&i| view.roots[i]));
                (res.criterion, nodes, res.certs.iter().map(orig).collect())
            })
            .collect();
        let rcf_orig: Vec<PersistencyCertificate> = rcf_certs.iter().map(orig).collect();
        let primal_labels = primal.as_ref().map(|x| self.primal_labels(&view, x));

        let mut dirty = false;
        let apply_start = Instant::now();
        for cert in singles {
            if let Some((ra, rb, beta)) = replay_single(&self.work, &cert) {
                dirty |= apply_certificate(&mut self.work, ra, rb, beta);
                self.record(cert.clone(), &mut rep);
                self.steps.push(Step::Single {
                    round: r,
                    certificate: cert,
                });
            }
        }
        for (criterion, nodes, certs) in batches {
            let certs = if dirty {
                replay_subgraph(&self.work, criterion, &nodes, r)?
            } else {
                certs
            };
            if certs.is_empty() {
                continue;
            }
            for c in &certs {
                if let Some((ra, rb, beta)) = current_edge(&self.work, c) {
                    dirty |= apply_certificate(&mut self.work, ra, rb, beta);
                }
                self.record(c.clone(), &mut rep);
            }
            self.steps.push(Step::Batch {
                round: r,
                criterion,
                nodes,
                certificates: certs,
            });
        }
        // holds for every optimum, so earlier contractions keep it valid
        if !rcf_orig.is_empty() {
            for c in &rcf_orig {
                if let Some((ra, rb, beta)) = current_edge(&self.work, c) {
                    dirty |= apply_certificate(&mut self.work, ra, rb, beta);
                }
                self.record(c.clone(), &mut rep);
            }
            self.steps.push(Step::Fix {
                round: r,
                primal_labels: primal_labels.clone().unwrap_or_default(),
                certificates: rcf_orig.clone(),
            });
        }
        rep.seconds.insert("apply".into(), apply_start.elapsed().as_secs_f64());
        changed |= dirty;
        rep.nodes = self.work.node_count();
        rep.edges = self.work.edge_count();
        log::debug!(
            "round {r}: {} nodes, {} edges, {} candidates",
            rep.nodes,
            rep.edges,
            rep.candidates
        );
        self.rounds.push(rep);
        Ok(changed)
    }

    pub fn state(&self) -> ShrinkState {
        let mut steps = self.steps.clone();
        let mut certificates = self.certificates.clone();
        for h in &self.hints {
            steps.push(Step::Single {
                round: h.round,
                certificate: h.clone(),
            });
            if !self.recorded.contains(&(h.edge, h.beta)) {
                certificates.push(h.clone());
            }
        }
        let view = self.work.snapshot();
        let n = self.original.node_count();
        let node_map: Vec<usize> = (0..n)
            .map(|m| view.local(self.work.root(m)).expect("every class is in the snapshot"))
            .collect();
        let edge_map = self
            .original
            .edges()
            .iter()
            .map(|e| {
                let (a, b) = (node_map[e.u], node_map[e.v]);
                if a == b {
                    EdgeFate::Merged
                } else {
                    match view.inst.find_edge(a, b) {
                        Some(id) => EdgeFate::Current(id),
                        None => EdgeFate::Fixed(1),
                    }
                }
            })
            .collect();
        ShrinkState {
            original: self.original.clone(),
            current: view.inst,
            node_map,
            edge_map,
            flips: self.work.flips().to_vec(),
            steps,
            certificates,
            constant: self.original.objective_constant() + self.work.shift(),
        }
    }

    pub fn report(&self) -> RunReport {
        let (n0, m0) = (self.original.node_count(), self.original.edge_count());
        let (n, m) = (self.work.node_count(), self.work.edge_count());
        RunReport {
            original_nodes: n0,
            original_edges: m0,
            remaining_nodes: n,
            remaining_edges: m,
            node_fraction: fraction(n, n0),
            edge_fraction: fraction(m, m0),
            rounds: self.rounds.clone(),
            seconds: self.seconds,
        }
    }
}

/// Shrinks `inst` with the configured criteria.
pub fn run(inst: &ProblemInstance, config: &PipelineConfig) -> Result<(ShrinkState, RunReport)> {
    let mut s = Shrinker::new(inst);
    s.run(config)?;
    Ok((s.state(), s.report()))
}

/// Graph size after one stage of the ablation ladder.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AblationPoint {
    pub stage: String,
    pub nodes: usize,
    pub edges: usize,
    pub node_fraction: f64,
    pub edge_fraction: f64,
}

/// Runs the ladder `none, gplus, edge, triangle, subgraph, icp`, each stage
/// adding its criteria and continuing from the previous stage's graph, so
/// the remaining sizes never increase.
pub fn ablate(inst: &ProblemInstance, config: &PipelineConfig) -> Result<Vec<AblationPoint>> {
    let mut s = Shrinker::new(inst);
    let point = |s: &Shrinker, stage: &str| AblationPoint {
        stage: stage.to_string(),
        nodes: s.node_count(),
        edges: s.edge_count(),
        node_fraction: fraction(s.node_count(), inst.node_count()),
        edge_fraction: fraction(s.edge_count(), inst.edge_count()),
    };
    let mut points = vec![point(&s, "none")];
    let mut stages = BTreeSet::new();
    for stage in Stage::LADDER {
        stages.insert(stage);
        let cfg = config.clone().with_stages(stages.iter().copied());
        s.run(&cfg)?;
        points.push(point(&s, stage.name()));
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{enumerate_optima, feasible_labelings};

    fn two_cliques() -> ProblemInstance {
        let mut edges = Vec::new();
        for base in [0, 4] {
            for i in 0..4 {
                for j in i + 1..4 {
                    edges.push((base + i, base + j, 3.0));
                }
            }
        }
        edges.extend([(0, 4, -1.0), (1, 5, -2.0), (3, 7, -1.5)]);
        ProblemInstance::new(ProblemKind::Multicut, 8, edges).unwrap()
    }

    fn mixed_multicut() -> ProblemInstance {
        ProblemInstance::new(
            ProblemKind::Multicut,
            6,
            vec![
                (0, 1, 4.0),
                (0, 2, -1.0),
                (1, 2, 2.0),
                (1, 3, -3.0),
                (2, 4, 1.0),
                (3, 4, 2.0),
                (3, 5, -2.0),
                (4, 5, 3.0),
                (0, 5, -1.0),
            ],
        )
        .unwrap()
    }

    fn mixed_maxcut() -> ProblemInstance {
        let edges = mixed_multicut().edges().iter().map(|e| (e.u, e.v, -e.weight)).collect();
        ProblemInstance::new(ProblemKind::Maxcut, 6, edges).unwrap()
    }

    /// Every feasible labeling of the shrunk instance lifts to a feasible
    /// labeling with the same objective up to the constant, and the optima
    /// agree.
    fn check_state(state: &ShrinkState) {
        for y in feasible_labelings(&state.current).unwrap() {
            let x = state.lift(&y).unwrap();
            assert!(state.original.is_feasible(&x).unwrap());
            let lhs = state.original.objective(&x).unwrap();
            let rhs = state.current.linear_objective(&y).unwrap() + state.constant;
            assert!((lhs - rhs).abs() < 1e-9, "{lhs} vs {rhs}");
        }
        let before = enumerate_optima(&state.original).unwrap().value;
        let after = enumerate_optima(&state.current).unwrap().value - state.current.objective_constant();
        assert!((before - (after + state.constant)).abs() < 1e-9);
    }

    #[test]
    fn empty_criteria_are_the_identity() {
        let g = mixed_multicut();
        let (state, report) = run(&g, &PipelineConfig::default().with_stages([])).unwrap();
        assert_eq!(state.current, g);
        assert_eq!(state.constant, 0.0);
        assert!(state.steps.is_empty());
        assert_eq!((report.node_fraction, report.edge_fraction), (1.0, 1.0));
        let y = EdgeLabeling::from_vec(vec![true; g.edge_count()]);
        assert_eq!(state.lift(&y).unwrap(), y);
    }

    #[test]
    fn positive_blocks_are_split_and_contracted() {
        let g = two_cliques();
        let (state, report) = run(&g, &PipelineConfig::default()).unwrap();
        assert_eq!((state.current.node_count(), state.current.edge_count()), (2, 0));
        assert_eq!(report.edge_fraction, 0.0);
        check_state(&state);
        assert!(state.edge_map.iter().filter(|f| **f == EdgeFate::Fixed(1)).count() == 3);
    }

    #[test]
    fn shrinking_preserves_objectives() {
        for g in [mixed_multicut(), mixed_maxcut(), two_cliques()] {
            let (state, _) = run(&g, &PipelineConfig::default()).unwrap();
            check_state(&state);
            let outcome = verify_steps(&g, &state.steps).unwrap();
            assert!(outcome.is_ok(), "{:?}", outcome.failures);
            assert_eq!(outcome.remaining_edges, state.current.edge_count());
            assert_eq!(outcome.remaining_nodes, state.current.node_count());
        }
    }

    #[test]
    fn maxcut_triangle_is_solved() {
        // min form: the heavy negative edge must be cut
        let g = ProblemInstance::new(ProblemKind::Maxcut, 3, vec![(0, 1, -5.0), (0, 2, 2.0), (1, 2, 1.0)]).unwrap();
        let (state, _) = run(&g, &PipelineConfig::default()).unwrap();
        assert_eq!(state.current.node_count(), 1);
        check_state(&state);
        let x = state.lift(&EdgeLabeling::zeros(0)).unwrap();
        assert_eq!(g.objective(&x).unwrap(), -4.0);
    }

    #[test]
    fn later_rounds_extend_earlier_ones() {
        let g = mixed_multicut();
        let one = PipelineConfig {
            max_rounds: 1,
            ..PipelineConfig::default()
        };
        let (a, _) = run(&g, &one).unwrap();
        let (b, _) = run(&g, &PipelineConfig::default()).unwrap();
        assert!(b.current.edge_count() <= a.current.edge_count());
        for c in &a.certificates {
            assert!(b.certificates.iter().any(|d| d.edge == c.edge && d.beta == c.beta));
        }
    }

    #[test]
    fn ablation_is_monotone() {
        for g in [mixed_multicut(), mixed_maxcut(), two_cliques()] {
            let points = ablate(&g, &PipelineConfig::default()).unwrap();
            assert_eq!(points.len(), Stage::LADDER.len() + 1);
            assert_eq!(points[0].edges, g.edge_count());
            assert!(points.windows(2).all(|w| w[1].edges <= w[0].edges));
        }
    }

    #[test]
    fn stage_names_round_trip() {
        for s in Stage::LADDER {
            assert_eq!(s.name().parse::<Stage>().unwrap(), s);
        }
        assert!("qpbo".parse::<Stage>().is_err());
    }
}
