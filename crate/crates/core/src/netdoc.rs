//! Line-oriented text format for periodic nets.
//!
//! ```text
//! # comments start with '#'
//! format pgrowth-net 1
//! name square-grid
//! source standard lattice
//! rank 2
//! undirected true
//! classes o
//! edge o o 1,0
//! edge o o 0,1 1
//! position o 0,0
//! ```
//!
//! `edge SRC TGT VECTOR [WEIGHT]` lists an edge with a comma-separated
//! translation vector and an optional weight (default 1). For undirected nets
//! each listed edge is paired with a listed reverse when one exists, otherwise
//! the reverse is added. `position CLASS COORDS` gives realization
//! coordinates as rationals `p/q` or quadratic literals `p/q+r/s*sqrt(d)`.
//! `status template` marks a placeholder with no data.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{Literal, Quadratic, Rational};
use crate::graph::{EdgeRecord, QuotientGraph, Realization};

pub const FORMAT_TAG: &str = "pgrowth-net";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetDocument {
    pub version: u32,
    pub name: Option<String>,
    pub source: Option<String>,
    pub template: bool,
    pub rank: usize,
    pub undirected: bool,
    pub classes: Vec<String>,
    /// `(src, tgt, vector, weight)` with class names resolved to indices.
    pub edges: Vec<EdgeRecord>,
    /// Per-class literal coordinates, when given.
    pub positions: Option<Vec<Vec<Literal>>>,
}

/// Realization over whichever field the literals require.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyRealization {
    Rational(Realization<Rational>),
    Quadratic(Realization<Quadratic>),
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_vector(text: &str, line: usize) -> Result<Vec<i64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| err(line, format!("invalid integer `{t}` in vector `{text}`")))
        })
        .collect()
}

impl NetDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let mut version = None;
        let mut name = None;
        let mut source = None;
        let mut template = false;
        let mut rank: Option<usize> = None;
        let mut undirected = false;
        let mut classes: Option<Vec<String>> = None;
        let mut edges = Vec::new();
        let mut positions: Vec<Option<Vec<Literal>>> = Vec::new();
        let mut any_position = false;

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = match line.split_once(char::is_whitespace) {
                Some((k, r)) => (k, r.trim()),
                None => (line, ""),
            };
            if version.is_none() && key != "format" {
                return Err(err(line_no, "expected `format pgrowth-net 1` first"));
            }
            match key {
                "format" => {
                    let mut parts = rest.split_whitespace();
                    if parts.next() != Some(FORMAT_TAG) {
                        return Err(err(line_no, format!("unknown format `{rest}`")));
                    }
                    let v: u32 = parts
                        .next()
                        .and_then(|v| v.parse().ok())
                        .ok_or_else(|| err(line_no, "missing format version"))?;
                    if v != FORMAT_VERSION {
                        return Err(err(line_no, format!("unsupported format version {v}")));
                    }
                    version = Some(v);
                }
                "name" => name = Some(rest.to_string()),
                "source" => source = Some(rest.to_string()),
                "status" => match rest {
                    "template" => template = true,
                    "data" => template = false,
                    other => return Err(err(line_no, format!("unknown status `{other}`"))),
                },
                "rank" => {
                    let r: usize = rest
                        .parse()
                        .map_err(|_| err(line_no, format!("invalid rank `{rest}`")))?;
                    if r == 0 {
                        return Err(err(line_no, "rank must be positive"));
                    }
                    rank = Some(r);
                }
                "undirected" => {
                    undirected = match rest {
                        "true" | "yes" => true,
                        "false" | "no" => false,
                        other => {
                            return Err(err(line_no, format!("expected true/false, got `{other}`")))
                        }
                    }
                }
                "classes" => {
                    let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                    if list.is_empty() {
                        return Err(err(line_no, "empty class list"));
                    }
                    for (j, c) in list.iter().enumerate() {
                        if list[..j].contains(c) {
                            return Err(err(line_no, format!("duplicate class `{c}`")));
                        }
                    }
                    positions = vec![None; list.len()];
                    classes = Some(list);
                }
                "edge" => {
                    let classes = classes
                        .as_ref()
                        .ok_or_else(|| err(line_no, "`classes` must precede edges"))?;
                    let rank = rank.ok_or_else(|| err(line_no, "`rank` must precede edges"))?;
                    let parts: Vec<&str> = rest.split_whitespace().collect();
                    if parts.len() < 3 || parts.len() > 4 {
                        return Err(err(line_no, "expected `edge SRC TGT VECTOR [WEIGHT]`"));
                    }
                    let lookup = |c: &str| {
                        classes
                            .iter()
                            .position(|x| x == c)
                            .ok_or_else(|| err(line_no, format!("unknown class `{c}`")))
                    };
                    let src = lookup(parts[0])?;
                    let tgt = lookup(parts[1])?;
                    let vector = parse_vector(parts[2], line_no)?;
                    if vector.len() != rank {
                        return Err(err(
                            line_no,
                            format!("vector has {} entries but rank is {rank}", vector.len()),
                        ));
                    }
                    let weight = match parts.get(3) {
                        None => 1,
                        Some(w) => w.parse::<u64>().ok().filter(|&w| w >= 1).ok_or_else(|| {
                            err(
                                line_no,
                                format!("weight must be a positive integer, got `{w}`"),
                            )
                        })?,
                    };
                    edges.push(EdgeRecord::new(src, tgt, vector, weight));
                }
                "position" => {
                    let classes = classes
                        .as_ref()
                        .ok_or_else(|| err(line_no, "`classes` must precede positions"))?;
                    let rank = rank.ok_or_else(|| err(line_no, "`rank` must precede positions"))?;
                    let (c, coords) = rest
                        .split_once(char::is_whitespace)
                        .ok_or_else(|| err(line_no, "expected `position CLASS COORDS`"))?;
                    let idx = classes
                        .iter()
                        .position(|x| x == c)
                        .ok_or_else(|| err(line_no, format!("unknown class `{c}`")))?;
                    let lits: Vec<Literal> = coords
                        .split(',')
                        .map(|t| {
                            Literal::parse(t).map_err(|e| match e {
                                Error::Parse { message, .. } => err(line_no, message),
                                other => other,
                            })
                        })
                        .collect::<Result<_>>()?;
                    if lits.len() != rank {
                        return Err(err(
                            line_no,
                            format!("position has {} coordinates but rank is {rank}", lits.len()),
                        ));
                    }
                    if positions[idx].is_some() {
                        return Err(err(line_no, format!("duplicate position for `{c}`")));
                    }
                    positions[idx] = Some(lits);
                    any_position = true;
                }
                other => return Err(err(line_no, format!("unknown key `{other}`"))),
            }
        }
        let version = version.ok_or_else(|| err(0, "missing `format` line"))?;
        let rank = rank.ok_or_else(|| err(0, "missing `rank`"))?;
        let classes = match classes {
            Some(c) => c,
            None if template => Vec::new(),
            None => return Err(err(0, "missing `classes`")),
        };
        let positions = if any_position {
            let mut out = Vec::new();
            for (c, p) in classes.iter().zip(positions) {
                out.push(p.ok_or_else(|| err(0, format!("class `{c}` has no position")))?);
            }
            Some(out)
        } else {
            None
        };
        let radicands: Vec<u64> = positions
            .iter()
            .flatten()
            .flatten()
            .filter_map(Literal::radicand)
            .collect();
        if radicands.windows(2).any(|w| w[0] != w[1]) {
            return Err(err(0, "positions mix different quadratic fields"));
        }
        Ok(Self {
            version,
            name,
            source,
            template,
            rank,
            undirected,
            classes,
            edges,
            positions,
        })
    }

    /// Validated quotient graph.
    pub fn graph(&self) -> Result<QuotientGraph> {
        if self.template {
            return Err(Error::InvalidInput(format!(
                "`{}` is a template without net data",
                self.name.as_deref().unwrap_or("net")
            )));
        }
        let g = if self.undirected {
            QuotientGraph::undirected(self.rank, self.classes.clone(), self.edges.clone())
        } else {
            QuotientGraph::directed(self.rank, self.classes.clone(), self.edges.clone())
        };
        g.checked()
    }

    /// Realization from the listed positions, or all classes at the origin.
    pub fn realization(&self) -> Result<AnyRealization> {
        let Some(positions) = &self.positions else {
            let zero = Rational::from_integer(0.into());
            return Ok(AnyRealization::Rational(Realization::new(vec![
                vec![zero; self.rank];
                self.classes.len()
            ])));
        };
        let quadratic = positions.iter().flatten().any(|l| l.irrational.is_some());
        if quadratic {
            let coords = positions
                .iter()
                .map(|p| {
                    p.iter()
                        .map(Literal::to_quadratic)
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(AnyRealization::Quadratic(Realization::new(coords)))
        } else {
            let coords = positions
                .iter()
                .map(|p| p.iter().map(|l| l.rational.clone()).collect())
                .collect();
            Ok(AnyRealization::Rational(Realization::new(coords)))
        }
    }

    /// Canonical text; `parse(emit(doc)) == doc`.
    pub fn emit(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "format {FORMAT_TAG} {}", self.version);
        if let Some(n) = &self.name {
            let _ = writeln!(s, "name {n}");
        }
        if let Some(src) = &self.source {
            let _ = writeln!(s, "source {src}");
        }
        if self.template {
            let _ = writeln!(s, "status template");
        }
        let _ = writeln!(s, "rank {}", self.rank);
        let _ = writeln!(s, "undirected {}", self.undirected);
        if !self.classes.is_empty() {
            let _ = writeln!(s, "classes {}", self.classes.join(" "));
        }
        for e in &self.edges {
            let v: Vec<String> = e.vector.iter().map(i64::to_string).collect();
            let _ = writeln!(
                s,
                "edge {} {} {} {}",
                self.classes[e.src],
                self.classes[e.tgt],
                v.join(","),
                e.weight
            );
        }
        if let Some(pos) = &self.positions {
            for (c, p) in self.classes.iter().zip(pos) {
                let coords: Vec<String> = p.iter().map(literal_text).collect();
                let _ = writeln!(s, "position {c} {}", coords.join(","));
            }
        }
        s
    }

    /// Document describing an in-memory graph.
    pub fn from_graph(graph: &QuotientGraph, name: Option<String>) -> Self {
        let edges = match (graph.is_undirected(), graph.reverse_pairing()) {
            // one edge per reverse pair when that rebuilds the same edge order,
            // otherwise every edge with both orientations listed
            (true, Some(pairing)) => {
                let half: Vec<EdgeRecord> = graph
                    .edges()
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| pairing[i] >= i)
                    .map(|(_, e)| e.clone())
                    .collect();
                let rebuilt =
                    QuotientGraph::undirected(graph.rank(), graph.classes().to_vec(), half.clone());
                if rebuilt == *graph {
                    half
                } else {
                    graph.edges().to_vec()
                }
            }
            _ => graph.edges().to_vec(),
        };
        Self {
            version: FORMAT_VERSION,
            name,
            source: None,
            template: false,
            rank: graph.rank(),
            undirected: graph.is_undirected(),
            classes: graph.classes().to_vec(),
            edges,
            positions: None,
        }
    }
}

fn literal_text(l: &Literal) -> String {
    match &l.irrational {
        None => l.rational.to_string(),
        Some((b, d)) => {
            let sign = if *b < Rational::from_integer(0.into()) {
                ""
            } else {
                "+"
            };
            format!("{}{sign}{b}*sqrt({d})", l.rational)
        }
    }
}
