//! Run reports as versioned JSON (with replayable certificates) or CSV.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::criteria::{Criterion, PersistencyCertificate};
use crate::error::{Error, Result};
use crate::graph::ProblemKind;
use crate::pipeline::{AblationPoint, PipelineConfig, RunReport, ShrinkState, Step};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub kind: ProblemKind,
    pub config: PipelineConfig,
    pub run: RunReport,
    /// Certificates per criterion over the whole run.
    pub totals: BTreeMap<Criterion, usize>,
    /// Remaining sizes along the criterion ladder, when an ablation was run.
    #[serde(default)]
    pub ablation: Vec<AblationPoint>,
    /// Added to the shrunk objective to obtain the original objective.
    pub constant: f64,
    /// Original node to node of the shrunk instance.
    pub node_map: Vec<usize>,
    pub certificates: Vec<PersistencyCertificate>,
    /// Application log; replaying it on the original instance re-checks
    /// every certificate.
    pub steps: Vec<Step>,
}

impl Report {
    pub fn new(state: &ShrinkState, run: RunReport, config: &PipelineConfig) -> Self {
        let mut totals = BTreeMap::new();
        for c in &state.certificates {
            *totals.entry(c.criterion).or_default() += 1;
        }
        Report {
            schema: SCHEMA_VERSION,
            kind: state.original.kind(),
            config: config.clone(),
            run,
            totals,
            ablation: Vec::new(),
            constant: state.constant,
            node_map: state.node_map.clone(),
            certificates: state.certificates.clone(),
            steps: state.steps.clone(),
        }
    }

    pub fn with_ablation(mut self, points: Vec<AblationPoint>) -> Self {
        self.ablation = points;
        self
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Parses a JSON report and checks its schema version.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        match value.get("schema").and_then(serde_json::Value::as_u64) {
            Some(v) if v == u64::from(SCHEMA_VERSION) => Ok(serde_json::from_value(value)?),
            Some(v) => Err(Error::InvalidParams(format!("unsupported report schema {v}"))),
            None => Err(Error::InvalidParams("report has no schema version".into())),
        }
    }

    /// Long-format table `section,round,key,value`. Round is empty for
    /// whole-run rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("section,round,key,value\n");
        let mut row = |section: &str, round: Option<usize>, key: &str, value: String| {
            let round = round.map(|r| r.to_string()).unwrap_or_default();
            writeln!(out, "{section},{round},{key},{value}").expect("writing to a string");
        };
        let run = &self.run;
        row("summary", None, "kind", self.kind.to_string());
        row("summary", None, "original_nodes", run.original_nodes.to_string());
        row("summary", None, "original_edges", run.original_edges.to_string());
        row("summary", None, "remaining_nodes", run.remaining_nodes.to_string());
        row("summary", None, "remaining_edges", run.remaining_edges.to_string());
        row("summary", None, "node_fraction", run.node_fraction.to_string());
        row("summary", None, "edge_fraction", run.edge_fraction.to_string());
        row("summary", None, "constant", self.constant.to_string());
        row("summary", None, "seconds", run.seconds.to_string());
        for (c, n) in &self.totals {
            row("certificates", None, c.name(), n.to_string());
        }
        for r in &run.rounds {
            let k = Some(r.round);
            row("round", k, "nodes", r.nodes.to_string());
            row("round", k, "edges", r.edges.to_string());
            row("round", k, "candidates", r.candidates.to_string());
            for (c, n) in &r.found {
                row("found", k, c.name(), n.to_string());
            }
            for (c, n) in &r.applied {
                row("applied", k, c.name(), n.to_string());
            }
            for (stage, s) in &r.seconds {
                row("seconds", k, stage, s.to_string());
            }
        }
        for p in &self.ablation {
            row("ablation", None, &format!("{}.nodes", p.stage), p.nodes.to_string());
            row("ablation", None, &format!("{}.edges", p.stage), p.edges.to_string());
            row("ablation", None, &format!("{}.node_fraction", p.stage), p.node_fraction.to_string());
            row("ablation", None, &format!("{}.edge_fraction", p.stage), p.edge_fraction.to_string());
        }
        out
    }
}
