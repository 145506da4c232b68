//! Text instance format, solution files, and content digests.
//!
//! The format is line-oriented and diffable:
//!
//! ```text
//! fgc 1
//! n 4
//! p 1 q 1
//! edge 0 1 3/2 S
//! edge 1 2 1 U
//! ```
//!
//! Capacitated instances use the `capk` tag, `k <int>`, and an integer
//! capacity in place of the safe/unsafe label. Costs are exact decimals or
//! `a/b` rationals; serialization always emits the canonical `a/b` form, so
//! parse-then-serialize is the identity on canonical files. Blank lines and
//! `#` comments are ignored.

use crate::graph::{EdgeId, EdgeLabel, EdgeSpec, GraphError, MultiGraph};
use crate::rational::{format_rational, parse_rational};
use crate::solvers::{CapEcssInstance, FgcInstance, ProblemInstance, SolveError};
use sha2::{Digest, Sha256};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

impl FormatError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        FormatError::Line { line, message: message.into() }
    }
}

pub fn serialize_instance(instance: &ProblemInstance) -> String {
    let mut out = String::new();
    match instance {
        ProblemInstance::Fgc(inst) => {
            out.push_str("fgc 1\n");
            out.push_str(&format!("n {}\n", inst.graph().vertex_count()));
            out.push_str(&format!("p {} q {}\n", inst.p(), inst.q()));
            for e in inst.graph().edges() {
                let label = if e.label == EdgeLabel::Safe { "S" } else { "U" };
                out.push_str(&format!(
                    "edge {} {} {} {}\n",
                    e.endpoints.0,
                    e.endpoints.1,
                    format_rational(&e.cost),
                    label
                ));
            }
        }
        ProblemInstance::CapEcss(inst) => {
            out.push_str("capk 1\n");
            out.push_str(&format!("n {}\n", inst.graph().vertex_count()));
            out.push_str(&format!("k {}\n", inst.k()));
            for e in inst.graph().edges() {
                out.push_str(&format!(
                    "edge {} {} {} {}\n",
                    e.endpoints.0,
                    e.endpoints.1,
                    format_rational(&e.cost),
                    e.capacity
                ));
            }
        }
    }
    out
}

/// Hex SHA-256 of the canonical serialization.
pub fn instance_digest(instance: &ProblemInstance) -> String {
    let mut hasher = Sha256::new();
    hasher.update(serialize_instance(instance).as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

struct Line<'a> {
    number: usize,
    tokens: Vec<&'a str>,
}

fn meaningful_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(idx, raw)| {
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                None
            } else {
                Some(Line { number: idx + 1, tokens: body.split_whitespace().collect() })
            }
        })
        .collect()
}

fn parse_usize(token: &str, line: usize, what: &str) -> Result<usize, FormatError> {
    token
        .parse()
        .map_err(|_| FormatError::at(line, format!("bad {what} {token:?}")))
}

pub fn parse_instance(text: &str) -> Result<ProblemInstance, FormatError> {
    let lines = meaningful_lines(text);
    let mut cursor = lines.iter();
    let header = cursor
        .next()
        .ok_or_else(|| FormatError::Invalid("empty instance file".into()))?;
    if header.tokens.len() != 2 || header.tokens[1] != "1" {
        return Err(FormatError::at(
            header.number,
            "expected header '<fgc|capk> 1'",
        ));
    }
    let kind = header.tokens[0];
    if kind != "fgc" && kind != "capk" {
        return Err(FormatError::at(header.number, format!("unknown problem tag {kind:?}")));
    }

    let n_line = cursor
        .next()
        .ok_or_else(|| FormatError::Invalid("missing 'n <count>' line".into()))?;
    if n_line.tokens.len() != 2 || n_line.tokens[0] != "n" {
        return Err(FormatError::at(n_line.number, "expected 'n <count>'"));
    }
    let n = parse_usize(n_line.tokens[1], n_line.number, "vertex count")?;

    let param_line = cursor
        .next()
        .ok_or_else(|| FormatError::Invalid("missing parameter line".into()))?;
    let params = match kind {
        "fgc" => {
            if param_line.tokens.len() != 4
                || param_line.tokens[0] != "p"
                || param_line.tokens[2] != "q"
            {
                return Err(FormatError::at(param_line.number, "expected 'p <int> q <int>'"));
            }
            let p = parse_usize(param_line.tokens[1], param_line.number, "p")?;
            let q = parse_usize(param_line.tokens[3], param_line.number, "q")?;
            (p, q)
        }
        _ => {
            if param_line.tokens.len() != 2 || param_line.tokens[0] != "k" {
                return Err(FormatError::at(param_line.number, "expected 'k <int>'"));
            }
            let k = parse_usize(param_line.tokens[1], param_line.number, "k")?;
            (k, 0)
        }
    };

    let mut specs: Vec<EdgeSpec> = Vec::new();
    let mut spec_lines: Vec<usize> = Vec::new();
    for line in cursor {
        if line.tokens[0] != "edge" || line.tokens.len() != 5 {
            return Err(FormatError::at(
                line.number,
                "expected 'edge <u> <v> <cost> <S|U|capacity>'",
            ));
        }
        let u = parse_usize(line.tokens[1], line.number, "endpoint")?;
        let v = parse_usize(line.tokens[2], line.number, "endpoint")?;
        let cost = parse_rational(line.tokens[3])
            .map_err(|message| FormatError::at(line.number, message))?;
        let spec = match kind {
            "fgc" => {
                let label = match line.tokens[4] {
                    "S" => EdgeLabel::Safe,
                    "U" => EdgeLabel::Unsafe,
                    other => {
                        return Err(FormatError::at(
                            line.number,
                            format!("bad label {other:?} (want S or U)"),
                        ))
                    }
                };
                EdgeSpec::new(u, v, cost, label)
            }
            _ => {
                let capacity =
                    parse_usize(line.tokens[4], line.number, "capacity")? as u64;
                EdgeSpec::new(u, v, cost, EdgeLabel::Safe).with_capacity(capacity)
            }
        };
        specs.push(spec);
        spec_lines.push(line.number);
    }

    let graph = MultiGraph::build(n, specs).map_err(|err| match err {
        GraphError::SelfLoop { index, vertex } => {
            FormatError::at(spec_lines[index], format!("self-loop at vertex {vertex}"))
        }
        GraphError::NegativeCost { index } => {
            FormatError::at(spec_lines[index], "negative cost".to_string())
        }
        GraphError::EndpointOutOfRange { index, vertex, n } => FormatError::at(
            spec_lines[index],
            format!("endpoint {vertex} out of range (n = {n})"),
        ),
        other => FormatError::Invalid(other.to_string()),
    })?;
    let instance = match kind {
        "fgc" => ProblemInstance::Fgc(
            FgcInstance::new(graph, params.0, params.1)
                .map_err(|err: SolveError| FormatError::Invalid(err.to_string()))?,
        ),
        _ => ProblemInstance::CapEcss(
            CapEcssInstance::new(graph, params.0)
                .map_err(|err: SolveError| FormatError::Invalid(err.to_string()))?,
        ),
    };
    Ok(instance)
}

/// Solution files: one edge id per line, `#` comments allowed.
pub fn parse_solution(text: &str, edge_count: usize) -> Result<BTreeSet<EdgeId>, FormatError> {
    let mut ids = BTreeSet::new();
    for line in meaningful_lines(text) {
        if line.tokens.len() != 1 {
            return Err(FormatError::at(line.number, "expected one edge id per line"));
        }
        let id = parse_usize(line.tokens[0], line.number, "edge id")?;
        if id >= edge_count {
            return Err(FormatError::at(
                line.number,
                format!("edge id {id} out of range (m = {edge_count})"),
            ));
        }
        ids.insert(EdgeId(id));
    }
    Ok(ids)
}

pub fn serialize_solution<'a>(ids: impl IntoIterator<Item = &'a EdgeId>) -> String {
    let mut out = String::new();
    for id in ids {
        out.push_str(&format!("{id}\n"));
    }
    out
}
