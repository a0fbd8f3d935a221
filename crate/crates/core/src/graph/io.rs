use std::collections::HashMap;
use std::io::{BufRead, Write};

use super::{GraphBuilder, WeightedGraph};
use crate::error::{Error, Result};

/// What to do when the same undirected pair appears on two lines.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DuplicatePolicy {
    #[default]
    Reject,
    KeepMax,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct LoadOptions {
    pub on_duplicate: DuplicatePolicy,
}

fn parse_weight(token: &str, line: usize) -> Result<f64> {
    token.parse::<f64>().map_err(|_| Error::Parse {
        line,
        message: format!("cannot parse weight {token:?}"),
    })
}

/// Reads whitespace-separated `u v w` lines. `#` starts a comment.
pub fn load_edge_list<R: BufRead>(source: R, options: LoadOptions) -> Result<WeightedGraph> {
    let mut builder = GraphBuilder::new(options.on_duplicate);
    for (idx, line) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let content = line.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        match fields.as_slice() {
            [] => continue,
            [u, v, w] => {
                let weight = parse_weight(w, line_no)?;
                builder.add_edge(u, v, weight, line_no)?;
            }
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected `u v w`, found {} fields", fields.len()),
                })
            }
        }
    }
    Ok(builder.build())
}

/// Reads a DIMACS shortest-path `.gr` file as an undirected graph.
///
/// Reciprocal arcs collapse to one edge and must agree on weight. A lone
/// arc without its reciprocal is also taken as an undirected edge.
pub fn load_dimacs<R: BufRead>(source: R) -> Result<WeightedGraph> {
    let mut builder = GraphBuilder::new(DuplicatePolicy::KeepMax);
    let mut node_count: Option<usize> = None;
    let mut seen: HashMap<(usize, usize), (f64, usize)> = HashMap::new();

    for (idx, line) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.first().copied() {
            None | Some("c") => continue,
            Some("p") => {
                if node_count.is_some() {
                    return Err(Error::MalformedHeader(format!(
                        "line {line_no}: second problem line"
                    )));
                }
                let [_, kind, n, m] = fields.as_slice() else {
                    return Err(Error::MalformedHeader(format!(
                        "line {line_no}: expected `p sp n m`"
                    )));
                };
                if *kind != "sp" {
                    return Err(Error::MalformedHeader(format!(
                        "line {line_no}: problem type {kind:?}, expected \"sp\""
                    )));
                }
                let n: usize = n.parse().map_err(|_| {
                    Error::MalformedHeader(format!("line {line_no}: bad node count {n:?}"))
                })?;
                m.parse::<usize>().map_err(|_| {
                    Error::MalformedHeader(format!("line {line_no}: bad arc count {m:?}"))
                })?;
                for i in 1..=n {
                    builder.add_node(&i.to_string());
                }
                node_count = Some(n);
            }
            Some("a") => {
                let n = node_count.ok_or_else(|| {
                    Error::MalformedHeader(format!("line {line_no}: arc before problem line"))
                })?;
                let [_, u, v, w] = fields.as_slice() else {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "expected `a u v w`".into(),
                    });
                };
                let parse_node = |t: &str| -> Result<usize> {
                    match t.parse::<usize>() {
                        Ok(x) if (1..=n).contains(&x) => Ok(x),
                        _ => Err(Error::Parse {
                            line: line_no,
                            message: format!("node {t:?} outside 1..={n}"),
                        }),
                    }
                };
                let (a, b) = (parse_node(u)?, parse_node(v)?);
                let weight = parse_weight(w, line_no)?;
                let key = if a < b { (a, b) } else { (b, a) };
                if let Some(&(other, _)) = seen.get(&key) {
                    if other != weight {
                        return Err(Error::InconsistentReciprocal {
                            line: line_no,
                            u: u.to_string(),
                            v: v.to_string(),
                            weight,
                            other,
                        });
                    }
                    continue;
                }
                seen.insert(key, (weight, line_no));
                builder.add_edge(u, v, weight, line_no)?;
            }
            Some(other) => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("unknown line type {other:?}"),
                })
            }
        }
    }
    if node_count.is_none() {
        return Err(Error::MalformedHeader("missing `p sp n m` line".into()));
    }
    Ok(builder.build())
}

/// Writes `u v w` lines in edge-key order; `{}` formatting of `f64` is the
/// shortest representation that round-trips exactly.
pub fn write_edge_list<W: Write>(graph: &WeightedGraph, mut out: W) -> Result<()> {
    for e in graph.edges() {
        writeln!(
            out,
            "{} {} {}",
            graph.label(e.u),
            graph.label(e.v),
            e.weight
        )?;
    }
    Ok(())
}
