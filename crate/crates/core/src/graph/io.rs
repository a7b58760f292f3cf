//! Plain-text edge lists: a header `n m`, then `m` lines `u v` with 0-based
//! vertices. Text after `#` is ignored, as are blank lines.

use std::fmt::Write;
use std::str::FromStr;

use super::MultiGraph;
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<MultiGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                line,
                msg: format!("expected two integers, found `{body}`"),
            });
        }
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("`{s}` is not a nonnegative integer"),
            })
        };
        let pair = (parse(fields[0])?, parse(fields[1])?);
        if header.is_none() {
            header = Some(pair);
        } else {
            edges.push(pair);
        }
    }
    let (n, m) = header.ok_or(Error::Parse {
        line: 0,
        msg: "missing `n m` header".into(),
    })?;
    if edges.len() != m {
        return Err(Error::Parse {
            line: 0,
            msg: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    MultiGraph::new(n, edges)
}

impl MultiGraph {
    /// Edge list in id order; `parse_edge_list` reads it back unchanged.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.m());
        for &(u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    /// Like [`to_edge_list`](Self::to_edge_list), with each edge's display
    /// name as a trailing comment when the graph carries labels.
    pub fn to_annotated_edge_list(&self) -> String {
        if self.labels().is_none() {
            return self.to_edge_list();
        }
        let mut out = format!("{} {}\n", self.n(), self.m());
        for (id, &(u, v)) in self.edges().iter().enumerate() {
            writeln!(out, "{u} {v}  # {}", self.edge_label(id)).unwrap();
        }
        out
    }
}

impl FromStr for MultiGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_edge_list(s)
    }
}
