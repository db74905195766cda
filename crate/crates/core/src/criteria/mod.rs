//! Persistency criteria. Each criterion proves that some edge takes a fixed
//! value in an optimal solution and reports the data needed to re-check it.

use std::fmt;

use serde::{Deserialize, Serialize};

pub mod edge;
pub mod gplus;
pub mod rcf;
pub mod subgraph;
pub mod triangle;

pub use edge::{check_edge_cut, edge_criterion_all, edge_gomory_hu_pass, edge_single_node_pass};
pub use gplus::gplus_decomposition;
pub use rcf::reduced_cost_fixing;
pub use subgraph::{
    boundary_edge_all, boundary_edge_criterion, boundary_refined_criterion, BisectionOutcome, maxcut_subgraph_all, maxcut_subgraph_criterion,
    multicut_subgraph_criterion, MaxcutBisection,
};
pub use triangle::{check_triangle, triangle_criterion, triangle_criterion_all, TriangleMode};

/// Which rule produced a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// Positive edge outweighing the rest of a cut through it (multicut).
    EdgeE1,
    /// Negative edge outweighing the positive part of a cut through it (multicut).
    EdgeE2,
    /// Edge outweighing the rest of a cut through it (max-cut).
    EdgeE3,
    Triangle,
    SubgraphMc,
    SubgraphMaxcut,
    BoundaryEdge,
    BoundarySubgraph,
    GplusDecomp,
    Rcf,
}

impl Criterion {
    pub const ALL: [Criterion; 10] = [
        Criterion::EdgeE1,
        Criterion::EdgeE2,
        Criterion::EdgeE3,
        Criterion::Triangle,
        Criterion::SubgraphMc,
        Criterion::SubgraphMaxcut,
        Criterion::BoundaryEdge,
        Criterion::BoundarySubgraph,
        Criterion::GplusDecomp,
        Criterion::Rcf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::EdgeE1 => "edge_e1",
            Criterion::EdgeE2 => "edge_e2",
            Criterion::EdgeE3 => "edge_e3",
            Criterion::Triangle => "triangle",
            Criterion::SubgraphMc => "subgraph_mc",
            Criterion::SubgraphMaxcut => "subgraph_maxcut",
            Criterion::BoundaryEdge => "boundary_edge",
            Criterion::BoundarySubgraph => "boundary_subgraph",
            Criterion::GplusDecomp => "gplus_decomp",
            Criterion::Rcf => "rcf",
        }
    }

    /// Reduced cost fixing excludes the opposite value from every optimum;
    /// all other criteria only guarantee some optimum.
    pub fn holds_for_all_optima(self) -> bool {
        self == Criterion::Rcf
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Data that lets a certificate be re-checked without re-running the search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// A node set `U` with the certified edge in `delta(U)`.
    Cut { side: Vec<usize> },
    /// Target edge `uw`, third node `v`, and the two cuts used for the
    /// `uv, uw` and `uw, vw` conditions.
    Triangle {
        u: usize,
        v: usize,
        w: usize,
        u_side: Vec<usize>,
        w_side: Vec<usize>,
    },
    /// Subgraph node set, the right-hand side it had to reach and the lower
    /// bound that was achieved (with the maximizing weight for max-cut).
    Subgraph {
        nodes: Vec<usize>,
        rhs: f64,
        achieved: f64,
        alpha: Option<f64>,
    },
    /// Duality gap and reduced cost of the fixed edge.
    DualGap { gamma: f64, reduced_cost: f64 },
}

/// A proof that edge `edge` takes value `beta` in some optimal solution (in
/// every optimal solution for [`Criterion::Rcf`]).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PersistencyCertificate {
    pub edge: usize,
    pub beta: u8,
    pub criterion: Criterion,
    pub witness: Witness,
    pub round: usize,
}

impl PersistencyCertificate {
    pub fn new(edge: usize, beta: u8, criterion: Criterion, witness: Witness) -> Self {
        PersistencyCertificate {
            edge,
            beta,
            criterion,
            witness,
            round: 0,
        }
    }
}

/// Sorts by `(edge, criterion)` and keeps the first certificate per pair.
pub fn normalize(mut certs: Vec<PersistencyCertificate>) -> Vec<PersistencyCertificate> {
    certs.sort_by_key(|c| (c.edge, c.criterion));
    certs.dedup_by_key(|c| (c.edge, c.criterion));
    certs
}

/// `|x|` summed over the listed edges.
pub(crate) fn abs_sum(inst: &crate::graph::ProblemInstance, edges: impl IntoIterator<Item = usize>) -> f64 {
    edges.into_iter().map(|e| inst.weight(e).abs()).sum()
}

/// Positive weights summed over the listed edges.
pub(crate) fn pos_sum(inst: &crate::graph::ProblemInstance, edges: impl IntoIterator<Item = usize>) -> f64 {
    edges.into_iter().map(|e| inst.weight(e).max(0.0)).sum()
}
