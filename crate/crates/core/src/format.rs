//! Text formats: `p dakc` instance files, DIMACS CNF, set-cover and
//! undirected edge lists, and `.labels` sidecars.
//!
//! Instance files are 1-based:
//!
//! ```text
//! c optional comment lines
//! p dakc <n> <m>
//! q <b> <k> <p>      (optional parameter line)
//! a <u> <v>          (m arc lines)
//! ```

use std::fmt::Write as _;

use crate::engine::Params;
use crate::error::{GraphError, ParseError, ParseErrorKind};
use crate::graph::DirectedGraph;
use crate::reductions::{CnfFormula, SetCoverInstance, UndirectedGraph};

/// Parsed instance file: the graph plus the optional `q` parameter line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub graph: DirectedGraph,
    pub params: Option<Params>,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError::new(line, kind)
}

fn numbers(line_no: usize, fields: &[&str], expect: usize, raw: &str) -> Result<Vec<usize>, ParseError> {
    if fields.len() != expect {
        return Err(err(line_no, ParseErrorKind::MalformedLine(raw.to_string())));
    }
    fields
        .iter()
        .map(|f| f.parse::<usize>().map_err(|_| err(line_no, ParseErrorKind::MalformedLine(raw.to_string()))))
        .collect()
}

fn one_based(line_no: usize, v: usize, n: usize) -> Result<usize, ParseError> {
    if v == 0 || v > n {
        Err(err(line_no, ParseErrorKind::VertexOutOfRange { vertex: v, n }))
    } else {
        Ok(v - 1)
    }
}

pub fn parse_instance(text: &str) -> Result<InstanceFile, ParseError> {
    let mut graph: Option<(DirectedGraph, usize)> = None;
    let mut params = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        let Some((&tag, rest)) = fields.split_first() else {
            continue;
        };
        match tag {
            "c" => {}
            "p" => {
                if graph.is_some() {
                    return Err(err(line_no, ParseErrorKind::DuplicateHeader));
                }
                if rest.first() != Some(&"dakc") {
                    return Err(err(line_no, ParseErrorKind::MalformedHeader(raw.to_string())));
                }
                let nm = numbers(line_no, &rest[1..], 2, raw)
                    .map_err(|_| err(line_no, ParseErrorKind::MalformedHeader(raw.to_string())))?;
                graph = Some((DirectedGraph::new(nm[0]), nm[1]));
            }
            "q" => {
                let v = numbers(line_no, rest, 3, raw)?;
                params = Some(Params { b: v[0], k: v[1], p: v[2] });
            }
            "a" => {
                let Some((g, _)) = graph.as_mut() else {
                    return Err(err(line_no, ParseErrorKind::MissingHeader));
                };
                let uv = numbers(line_no, rest, 2, raw)?;
                let n = g.n();
                let u = one_based(line_no, uv[0], n)?;
                let v = one_based(line_no, uv[1], n)?;
                g.add_arc(u, v).map_err(|e| {
                    let kind = match e {
                        GraphError::SelfLoop(x) => ParseErrorKind::SelfLoop(x + 1),
                        GraphError::DuplicateArc(a, b) => ParseErrorKind::DuplicateArc(a + 1, b + 1),
                        GraphError::VertexOutOfRange { vertex, n } => {
                            ParseErrorKind::VertexOutOfRange { vertex: vertex + 1, n }
                        }
                    };
                    err(line_no, kind)
                })?;
            }
            _ => return Err(err(line_no, ParseErrorKind::MalformedLine(raw.to_string()))),
        }
    }
    let Some((graph, m)) = graph else {
        return Err(err(last_line.max(1), ParseErrorKind::MissingHeader));
    };
    if graph.arc_count() != m {
        return Err(err(last_line, ParseErrorKind::CountMismatch { expected: m, found: graph.arc_count() }));
    }
    Ok(InstanceFile { graph, params })
}

pub fn parse_digraph(text: &str) -> Result<DirectedGraph, ParseError> {
    parse_instance(text).map(|f| f.graph)
}

/// Canonical serialization: header, optional `q` line, arcs in sorted order.
pub fn write_instance(graph: &DirectedGraph, params: Option<Params>) -> String {
    let mut out = String::new();
    writeln!(out, "p dakc {} {}", graph.n(), graph.arc_count()).unwrap();
    if let Some(Params { b, k, p }) = params {
        writeln!(out, "q {b} {k} {p}").unwrap();
    }
    for (u, v) in graph.arcs() {
        writeln!(out, "a {} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// `<id> <label>` per vertex, ids 1-based.
pub fn write_labels(labels: &[String]) -> String {
    let mut out = String::new();
    for (i, label) in labels.iter().enumerate() {
        writeln!(out, "{} {}", i + 1, label).unwrap();
    }
    out
}

/// DIMACS CNF (`p cnf <vars> <clauses>`, zero-terminated clauses).
pub fn parse_cnf(text: &str) -> Result<CnfFormula, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut last_line = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('%') {
            continue;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(err(line_no, ParseErrorKind::DuplicateHeader));
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if fields.len() != 4 || fields[1] != "cnf" {
                return Err(err(line_no, ParseErrorKind::MalformedHeader(raw.to_string())));
            }
            let nm = numbers(line_no, &fields[2..], 2, raw)
                .map_err(|_| err(line_no, ParseErrorKind::MalformedHeader(raw.to_string())))?;
            header = Some((nm[0], nm[1]));
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(err(line_no, ParseErrorKind::MissingHeader));
        };
        for tok in trimmed.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| err(line_no, ParseErrorKind::MalformedLine(raw.to_string())))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                let var = lit.unsigned_abs() as usize;
                if var > vars {
                    return Err(err(line_no, ParseErrorKind::VertexOutOfRange { vertex: var, n: vars }));
                }
                current.push(lit);
            }
        }
    }
    let Some((vars, m)) = header else {
        return Err(err(last_line, ParseErrorKind::MissingHeader));
    };
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != m {
        return Err(err(last_line, ParseErrorKind::CountMismatch { expected: m, found: clauses.len() }));
    }
    Ok(CnfFormula { num_vars: vars, clauses })
}

/// `u <n>` followed by one `s <elem>...` line per set (elements 1-based).
/// The budget is supplied separately.
pub fn parse_setcover(text: &str, budget: usize) -> Result<SetCoverInstance, ParseError> {
    let mut universe: Option<usize> = None;
    let mut sets = Vec::new();
    let mut last_line = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        let Some((&tag, rest)) = fields.split_first() else {
            continue;
        };
        match tag {
            "c" => {}
            "u" => {
                if universe.is_some() {
                    return Err(err(line_no, ParseErrorKind::DuplicateHeader));
                }
                let v = numbers(line_no, rest, 1, raw)
                    .map_err(|_| err(line_no, ParseErrorKind::MalformedHeader(raw.to_string())))?;
                universe = Some(v[0]);
            }
            "s" => {
                let Some(n) = universe else {
                    return Err(err(line_no, ParseErrorKind::MissingHeader));
                };
                let elems = numbers(line_no, rest, rest.len(), raw)?;
                let mut set = Vec::with_capacity(elems.len());
                for e in elems {
                    set.push(one_based(line_no, e, n)?);
                }
                set.sort_unstable();
                if set.windows(2).any(|w| w[0] == w[1]) {
                    return Err(err(line_no, ParseErrorKind::MalformedLine(raw.to_string())));
                }
                sets.push(set);
            }
            _ => return Err(err(line_no, ParseErrorKind::MalformedLine(raw.to_string()))),
        }
    }
    let Some(n) = universe else {
        return Err(err(last_line, ParseErrorKind::MissingHeader));
    };
    Ok(SetCoverInstance { universe: n, sets, budget })
}

/// `p ug <n> <m>` followed by `e <u> <v>` lines (1-based).
pub fn parse_undirected(text: &str) -> Result<UndirectedGraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut last_line = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        let Some((&tag, rest)) = fields.split_first() else {
            continue;
        };
        match tag {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(err(line_no, ParseErrorKind::DuplicateHeader));
                }
                if rest.first() != Some(&"ug") {
                    return Err(err(line_no, ParseErrorKind::MalformedHeader(raw.to_string())));
                }
                let nm = numbers(line_no, &rest[1..], 2, raw)
                    .map_err(|_| err(line_no, ParseErrorKind::MalformedHeader(raw.to_string())))?;
                header = Some((nm[0], nm[1]));
            }
            "e" => {
                let Some((n, _)) = header else {
                    return Err(err(line_no, ParseErrorKind::MissingHeader));
                };
                let uv = numbers(line_no, rest, 2, raw)?;
                let u = one_based(line_no, uv[0], n)?;
                let v = one_based(line_no, uv[1], n)?;
                if u == v {
                    return Err(err(line_no, ParseErrorKind::SelfLoop(u + 1)));
                }
                let key = (u.min(v), u.max(v));
                if edges.contains(&key) {
                    return Err(err(line_no, ParseErrorKind::DuplicateArc(key.0 + 1, key.1 + 1)));
                }
                edges.push(key);
            }
            _ => return Err(err(line_no, ParseErrorKind::MalformedLine(raw.to_string()))),
        }
    }
    let Some((n, m)) = header else {
        return Err(err(last_line, ParseErrorKind::MissingHeader));
    };
    if edges.len() != m {
        return Err(err(last_line, ParseErrorKind::CountMismatch { expected: m, found: edges.len() }));
    }
    Ok(UndirectedGraph { n, edges })
}
