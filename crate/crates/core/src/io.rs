//! Plain-text instance format.
//!
//! ```text
//! c optional comments
//! p maxcut 3 3
//! 0 1 -5
//! 0 2 2
//! 1 2 1
//! ```
//!
//! The header gives the problem kind, node count and edge line count. Node
//! ids are 0-based, weights are decimal and in minimization form. Repeated
//! edges are merged by adding their weights. A comment of the form
//! `c objective_constant <value>` carries the constant of a shrunk instance.

use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{ProblemInstance, ProblemKind};

const CONSTANT_TAG: &str = "objective_constant";

/// Options for [`parse_instance`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// The file stores max-form weights; negate them on input.
    pub negate: bool,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn number<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} '{tok}'")))
}

fn weight(tok: Option<&str>, line: usize) -> Result<f64> {
    let w: f64 = number(tok, line, "weight")?;
    if !w.is_finite() {
        return Err(parse_err(line, format!("non-finite weight {w}")));
    }
    Ok(w)
}

/// Reads an instance from a text stream.
pub fn parse_instance(reader: impl Read, opts: ParseOptions) -> Result<ProblemInstance> {
    let mut header: Option<(ProblemKind, usize, usize)> = None;
    let mut edges = Vec::new();
    let mut constant = 0.0;
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let no = idx + 1;
        let mut toks = line.split_whitespace();
        let Some(first) = toks.next() else { continue };
        match first {
            "c" => {
                if toks.next() == Some(CONSTANT_TAG) {
                    constant = weight(toks.next(), no)?;
                }
                continue;
            }
            "p" => {
                if header.is_some() {
                    return Err(parse_err(no, "second header line"));
                }
                let kind: ProblemKind = toks
                    .next()
                    .ok_or_else(|| parse_err(no, "missing problem kind"))?
                    .parse()
                    .map_err(|e: Error| parse_err(no, e.to_string()))?;
                let n = number(toks.next(), no, "node count")?;
                let m = number(toks.next(), no, "edge count")?;
                header = Some((kind, n, m));
            }
            _ => {
                let Some((_, n, _)) = header else {
                    return Err(parse_err(no, "edge line before the 'p' header"));
                };
                let u: usize = number(Some(first), no, "node id")?;
                let v: usize = number(toks.next(), no, "node id")?;
                let w = weight(toks.next(), no)?;
                if u >= n || v >= n {
                    return Err(parse_err(no, format!("node id out of range 0..{n}")));
                }
                if u == v {
                    return Err(parse_err(no, format!("self-loop on node {u}")));
                }
                edges.push((u, v, if opts.negate { -w } else { w }, no));
            }
        }
        if toks.next().is_some() {
            return Err(parse_err(no, "unexpected trailing tokens"));
        }
    }
    let Some((kind, n, m)) = header else {
        return Err(parse_err(0, "missing 'p <kind> <nodes> <edges>' header"));
    };
    if edges.len() != m {
        return Err(parse_err(
            edges.last().map_or(0, |e| e.3),
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    let inst = ProblemInstance::new(kind, n, edges.into_iter().map(|(u, v, w, _)| (u, v, w)).collect())?;
    if opts.negate {
        constant = -constant;
    }
    Ok(inst.with_objective_constant(constant))
}

pub fn parse_str(text: &str, opts: ParseOptions) -> Result<ProblemInstance> {
    parse_instance(text.as_bytes(), opts)
}

pub fn read_instance(path: impl AsRef<Path>, opts: ParseOptions) -> Result<ProblemInstance> {
    parse_instance(File::open(path)?, opts)
}

/// Writes `inst` in the text format. Weights use the shortest decimal that
/// parses back to the same `f64`.
pub fn write_instance(inst: &ProblemInstance, mut out: impl Write) -> Result<()> {
    if inst.objective_constant() != 0.0 {
        writeln!(out, "c {CONSTANT_TAG} {}", inst.objective_constant())?;
    }
    writeln!(out, "p {} {} {}", inst.kind(), inst.node_count(), inst.edge_count())?;
    for e in inst.edges() {
        writeln!(out, "{} {} {}", e.u, e.v, e.weight)?;
    }
    Ok(())
}

pub fn to_text(inst: &ProblemInstance) -> String {
    let mut buf = Vec::new();
    write_instance(inst, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("the format is ASCII")
}
