//! Vector-labelled quotient graphs and exact distances in their periodic lifts.
//!
//! A periodic graph is encoded by its finite quotient: each directed edge
//! orbit carries the lattice translation between the chosen lifts of its
//! endpoints. Vertices of the infinite graph are pairs `(class, offset)`; the
//! infinite graph itself is never materialized.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::ExactField;

/// Integer vector in `L = Z^n`.
pub type LatticeVector = Vec<i64>;

/// Default cap on the number of `(class, offset)` states a search may visit.
pub const DEFAULT_MAX_STATES: usize = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub src: usize,
    pub tgt: usize,
    pub vector: LatticeVector,
    pub weight: u64,
}

impl EdgeRecord {
    pub fn new(src: usize, tgt: usize, vector: LatticeVector, weight: u64) -> Self {
        Self {
            src,
            tgt,
            vector,
            weight,
        }
    }

    pub fn reversed(&self) -> Self {
        Self {
            src: self.tgt,
            tgt: self.src,
            vector: self.vector.iter().map(|x| -x).collect(),
            weight: self.weight,
        }
    }

    fn is_reverse_of(&self, other: &EdgeRecord) -> bool {
        self.src == other.tgt
            && self.tgt == other.src
            && self.weight == other.weight
            && self.vector.len() == other.vector.len()
            && self
                .vector
                .iter()
                .zip(&other.vector)
                .all(|(a, b)| *a == -*b)
    }
}

/// Finite quotient of a periodic graph with per-edge translation vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientGraph {
    rank: usize,
    classes: Vec<String>,
    edges: Vec<EdgeRecord>,
    undirected: bool,
    reverse_pairing: Option<Vec<usize>>,
    #[serde(skip)]
    out_edges: Vec<Vec<usize>>,
}

impl QuotientGraph {
    /// Directed graph. No validation is performed; see [`QuotientGraph::validate`].
    pub fn directed(rank: usize, classes: Vec<String>, edges: Vec<EdgeRecord>) -> Self {
        Self::from_parts(rank, classes, edges, false, None)
    }

    /// Undirected graph. Each listed edge is paired with a later listed
    /// reverse when one exists; otherwise its reverse is appended.
    pub fn undirected(rank: usize, classes: Vec<String>, mut edges: Vec<EdgeRecord>) -> Self {
        let listed = edges.len();
        let mut pairing: Vec<Option<usize>> = vec![None; listed];
        for i in 0..listed {
            if pairing[i].is_some() {
                continue;
            }
            if edges[i].is_reverse_of(&edges[i]) {
                pairing[i] = Some(i);
                continue;
            }
            let partner = (i + 1..listed)
                .find(|&j| pairing[j].is_none() && edges[j].is_reverse_of(&edges[i]));
            match partner {
                Some(j) => {
                    pairing[i] = Some(j);
                    pairing[j] = Some(i);
                }
                None => {
                    let j = edges.len();
                    edges.push(edges[i].reversed());
                    pairing[i] = Some(j);
                    pairing.push(Some(i));
                }
            }
        }
        let pairing = pairing.into_iter().map(|p| p.expect("paired")).collect();
        Self::from_parts(rank, classes, edges, true, Some(pairing))
    }

    /// Raw constructor; the pairing is taken as given.
    pub fn from_parts(
        rank: usize,
        classes: Vec<String>,
        edges: Vec<EdgeRecord>,
        undirected: bool,
        reverse_pairing: Option<Vec<usize>>,
    ) -> Self {
        let mut g = Self {
            rank,
            classes,
            edges,
            undirected,
            reverse_pairing,
            out_edges: Vec::new(),
        };
        g.rebuild_adjacency();
        g
    }

    fn rebuild_adjacency(&mut self) {
        let mut out = vec![Vec::new(); self.classes.len()];
        for (i, e) in self.edges.iter().enumerate() {
            if e.src < out.len() {
                out[e.src].push(i);
            }
        }
        self.out_edges = out;
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_index(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c == name)
    }

    pub fn edges(&self) -> &[EdgeRecord] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &EdgeRecord {
        &self.edges[index]
    }

    pub fn is_undirected(&self) -> bool {
        self.undirected
    }

    pub fn reverse_pairing(&self) -> Option<&[usize]> {
        self.reverse_pairing.as_deref()
    }

    pub fn out_edges(&self, class: usize) -> &[usize] {
        &self.out_edges[class]
    }

    pub fn max_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.weight).max().unwrap_or(1)
    }

    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.weight == 1)
    }

    /// Applies an integer matrix to every edge vector (`v -> M v`).
    pub fn transform_lattice(&self, matrix: &[Vec<i64>]) -> Self {
        let mut g = self.clone();
        for e in g.edges.iter_mut() {
            e.vector = matrix
                .iter()
                .map(|row| row.iter().zip(&e.vector).map(|(a, b)| a * b).sum())
                .collect();
        }
        g
    }

    /// Renames class `i` to position `perm[i]`.
    pub fn permute_classes(&self, perm: &[usize]) -> Self {
        let mut classes = vec![String::new(); self.classes.len()];
        for (i, name) in self.classes.iter().enumerate() {
            classes[perm[i]] = name.clone();
        }
        let edges = self
            .edges
            .iter()
            .map(|e| EdgeRecord::new(perm[e.src], perm[e.tgt], e.vector.clone(), e.weight))
            .collect();
        Self::from_parts(
            self.rank,
            classes,
            edges,
            self.undirected,
            self.reverse_pairing.clone(),
        )
    }

    /// All invariant violations; empty iff the graph is valid.
    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        if self.rank == 0 {
            issues.push("rank must be positive".to_string());
        }
        if self.classes.is_empty() {
            issues.push("at least one vertex class is required".to_string());
        }
        for (i, a) in self.classes.iter().enumerate() {
            if self.classes[..i].contains(a) {
                issues.push(format!("duplicate class identifier `{a}`"));
            }
        }
        let c = self.classes.len();
        for (i, e) in self.edges.iter().enumerate() {
            if e.weight < 1 {
                issues.push(format!(
                    "edge {i}: weight >= 1 violated (weight {})",
                    e.weight
                ));
            }
            if e.vector.len() != self.rank {
                issues.push(format!(
                    "edge {i}: vector has length {} but rank is {}",
                    e.vector.len(),
                    self.rank
                ));
            }
            if e.src >= c || e.tgt >= c {
                issues.push(format!("edge {i}: class index out of range"));
            }
        }
        if self.undirected {
            match &self.reverse_pairing {
                None => issues
                    .push("involution incomplete: undirected graph without reverse pairing".into()),
                Some(p) if p.len() != self.edges.len() => issues.push(format!(
                    "involution incomplete: pairing covers {} of {} edges",
                    p.len(),
                    self.edges.len()
                )),
                Some(p) => {
                    for (i, &j) in p.iter().enumerate() {
                        if j >= p.len() || p[j] != i {
                            issues.push(format!(
                                "involution incomplete: edge {i} is not paired back"
                            ));
                        } else if !self.edges[j].is_reverse_of(&self.edges[i]) {
                            issues.push(format!(
                                "involution incomplete: edge {j} is not the reverse of edge {i}"
                            ));
                        }
                    }
                }
            }
        }
        ValidationReport { issues }
    }

    /// Error unless the graph is valid.
    pub fn checked(self) -> Result<Self> {
        let report = self.validate();
        if report.is_valid() {
            Ok(self)
        } else {
            Err(Error::InvalidGraph(report.issues.join("; ")))
        }
    }

    /// Whether every class reaches every other class in the quotient.
    pub fn quotient_strongly_connected(&self) -> bool {
        let c = self.classes.len();
        if c == 0 {
            return false;
        }
        let reach = |forward: bool| {
            let mut seen = vec![false; c];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(v) = stack.pop() {
                for e in &self.edges {
                    let (from, to) = if forward {
                        (e.src, e.tgt)
                    } else {
                        (e.tgt, e.src)
                    };
                    if from == v && !seen[to] {
                        seen[to] = true;
                        stack.push(to);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        reach(true) && reach(false)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub issues: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Vertex `(class, offset)` of the periodic graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub class: usize,
    pub offset: LatticeVector,
}

impl Vertex {
    pub fn new(class: usize, offset: LatticeVector) -> Self {
        Self { class, offset }
    }

    pub fn origin(class: usize, rank: usize) -> Self {
        Self {
            class,
            offset: vec![0; rank],
        }
    }

    pub fn translated(&self, by: &[i64]) -> Self {
        Self {
            class: self.class,
            offset: self.offset.iter().zip(by).map(|(a, b)| a + b).collect(),
        }
    }

    /// The vertex reached by traversing `edge` from `self`.
    pub fn step(&self, edge: &EdgeRecord) -> Self {
        Self {
            class: edge.tgt,
            offset: self
                .offset
                .iter()
                .zip(&edge.vector)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// A walk given by its start vertex and a sequence of quotient edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    pub start: Vertex,
    pub edge_indices: Vec<usize>,
}

impl Walk {
    pub fn new(start: Vertex, edge_indices: Vec<usize>) -> Self {
        Self {
            start,
            edge_indices,
        }
    }

    pub fn length(&self) -> usize {
        self.edge_indices.len()
    }

    pub fn weight(&self, graph: &QuotientGraph) -> u64 {
        self.edge_indices
            .iter()
            .map(|&e| graph.edge(e).weight)
            .sum()
    }

    /// End vertex, or an error if consecutive edges do not connect.
    pub fn end(&self, graph: &QuotientGraph) -> Result<Vertex> {
        let mut v = self.start.clone();
        for (step, &e) in self.edge_indices.iter().enumerate() {
            let edge = graph.edge(e);
            if edge.src != v.class {
                return Err(Error::BrokenWalk { step });
            }
            v = v.step(edge);
        }
        Ok(v)
    }
}

/// Sum of the edge vectors of a closed walk (its image under `mu`).
pub fn closed_walk_vector(graph: &QuotientGraph, walk: &Walk) -> Result<LatticeVector> {
    let end = walk.end(graph)?;
    if end.class != walk.start.class {
        return Err(Error::NotClosed {
            start: walk.start.class,
            end: end.class,
        });
    }
    Ok(end
        .offset
        .iter()
        .zip(&walk.start.offset)
        .map(|(a, b)| a - b)
        .collect())
}

/// Periodic realization: one point per vertex class; `Phi(class, u) = u + coords[class]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization<F> {
    coords: Vec<Vec<F>>,
}

impl<F: ExactField> Realization<F> {
    pub fn new(coords: Vec<Vec<F>>) -> Self {
        Self { coords }
    }

    /// Every class placed at the origin of its cell.
    pub fn zero(graph: &QuotientGraph) -> Self {
        Self {
            coords: vec![vec![F::zero(); graph.rank()]; graph.class_count()],
        }
    }

    pub fn coords(&self) -> &[Vec<F>] {
        &self.coords
    }

    pub fn check(&self, graph: &QuotientGraph) -> Result<()> {
        if self.coords.len() != graph.class_count() {
            return Err(Error::DimensionMismatch {
                expected: graph.class_count(),
                got: self.coords.len(),
            });
        }
        for c in &self.coords {
            if c.len() != graph.rank() {
                return Err(Error::DimensionMismatch {
                    expected: graph.rank(),
                    got: c.len(),
                });
            }
        }
        Ok(())
    }

    pub fn position(&self, v: &Vertex) -> Vec<F> {
        self.coords[v.class]
            .iter()
            .zip(&v.offset)
            .map(|(c, &u)| c.clone() + F::from_int(u))
            .collect()
    }

    /// `Phi(to) - Phi(from)`.
    pub fn displacement(&self, from: &Vertex, to: &Vertex) -> Vec<F> {
        self.position(to)
            .into_iter()
            .zip(self.position(from))
            .map(|(a, b)| a - b)
            .collect()
    }
}

/// Exact distances from a start vertex up to a radius.
#[derive(Clone, Debug)]
pub struct Ball {
    start: Vertex,
    radius: u64,
    distances: HashMap<Vertex, u64>,
}

impl Ball {
    pub fn start(&self) -> &Vertex {
        &self.start
    }

    pub fn radius(&self) -> u64 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.distances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distances.is_empty()
    }

    pub fn distance(&self, v: &Vertex) -> Option<u64> {
        self.distances.get(v).copied()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.distances.contains_key(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vertex, u64)> {
        self.distances.iter().map(|(v, &d)| (v, d))
    }

    /// Entries ordered by distance, then vertex.
    pub fn sorted(&self) -> Vec<(Vertex, u64)> {
        let mut out: Vec<(Vertex, u64)> = self
            .distances
            .iter()
            .map(|(v, &d)| (v.clone(), d))
            .collect();
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        out
    }

    /// `s_0, ..., s_radius`.
    pub fn layer_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![0u64; self.radius as usize + 1];
        for &d in self.distances.values() {
            sizes[d as usize] += 1;
        }
        sizes
    }
}

/// Shortest-weight-first expansion from `x0` up to `radius`.
pub fn ball(graph: &QuotientGraph, x0: &Vertex, radius: u64, max_states: usize) -> Result<Ball> {
    let distances = dijkstra(graph, x0, radius, max_states, None)?;
    Ok(Ball {
        start: x0.clone(),
        radius,
        distances,
    })
}

fn dijkstra(
    graph: &QuotientGraph,
    x0: &Vertex,
    radius: u64,
    max_states: usize,
    target: Option<&Vertex>,
) -> Result<HashMap<Vertex, u64>> {
    let mut settled: HashMap<Vertex, u64> = HashMap::new();
    let mut best: HashMap<Vertex, u64> = HashMap::new();
    let mut heap = BinaryHeap::new();
    best.insert(x0.clone(), 0);
    heap.push(Reverse((0u64, x0.clone())));
    while let Some(Reverse((d, v))) = heap.pop() {
        if settled.contains_key(&v) {
            continue;
        }
        settled.insert(v.clone(), d);
        if target == Some(&v) {
            break;
        }
        for &ei in graph.out_edges(v.class) {
            let edge = graph.edge(ei);
            let nd = d + edge.weight;
            if nd > radius {
                continue;
            }
            let w = v.step(edge);
            if settled.contains_key(&w) {
                continue;
            }
            if best.get(&w).is_none_or(|&old| nd < old) {
                if best.len() >= max_states {
                    return Err(Error::ResourceLimit {
                        what: "ball states",
                        cap: max_states,
                    });
                }
                best.insert(w.clone(), nd);
                heap.push(Reverse((nd, w)));
            }
        }
    }
    Ok(settled)
}

/// `s_0, ..., s_{count-1}`.
pub fn growth_sequence(
    graph: &QuotientGraph,
    x0: &Vertex,
    count: usize,
    max_states: usize,
) -> Result<Vec<u64>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    Ok(ball(graph, x0, count as u64 - 1, max_states)?.layer_sizes())
}

/// `b_i = s_0 + ... + s_i`.
pub fn cumulative_sequence(growth: &[u64]) -> Vec<u64> {
    growth
        .iter()
        .scan(0u64, |acc, &s| {
            *acc += s;
            Some(*acc)
        })
        .collect()
}

/// Outcome of a bounded distance query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundedDistance {
    Exact(u64),
    NotWithinBound,
}

pub fn distance(
    graph: &QuotientGraph,
    x: &Vertex,
    y: &Vertex,
    bound: u64,
    max_states: usize,
) -> Result<BoundedDistance> {
    let start = Vertex::origin(x.class, graph.rank());
    let target = Vertex::new(
        y.class,
        y.offset.iter().zip(&x.offset).map(|(a, b)| a - b).collect(),
    );
    let settled = dijkstra(graph, &start, bound, max_states, Some(&target))?;
    Ok(match settled.get(&target) {
        Some(&d) => BoundedDistance::Exact(d),
        None => BoundedDistance::NotWithinBound,
    })
}

/// Vertices reachable from `x0` by walks with at most `max_edges` edges,
/// regardless of weight.
pub fn reachable_within_edges(graph: &QuotientGraph, x0: &Vertex, max_edges: usize) -> Vec<Vertex> {
    let mut seen: HashMap<Vertex, usize> = HashMap::new();
    seen.insert(x0.clone(), 0);
    let mut frontier = vec![x0.clone()];
    for depth in 1..=max_edges {
        let mut next = Vec::new();
        for v in &frontier {
            for &ei in graph.out_edges(v.class) {
                let w = v.step(graph.edge(ei));
                if !seen.contains_key(&w) {
                    seen.insert(w.clone(), depth);
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Vertex> = seen.into_keys().collect();
    out.sort();
    out
}

/// Distances from each class origin, grown on demand. Translation invariance
/// turns any `d(y, z)` query into a lookup in the ball of `y`'s class.
#[derive(Debug)]
pub struct DistanceTable<'g> {
    graph: &'g QuotientGraph,
    max_states: usize,
    balls: Vec<Option<Ball>>,
}

impl<'g> DistanceTable<'g> {
    pub fn new(graph: &'g QuotientGraph, max_states: usize) -> Self {
        Self {
            graph,
            max_states,
            balls: vec![None; graph.class_count()],
        }
    }

    /// Makes sure the ball of `class` covers at least `radius`.
    pub fn ensure(&mut self, class: usize, radius: u64) -> Result<()> {
        let have = self.balls[class].as_ref().map(Ball::radius);
        if have.is_none_or(|r| r < radius) {
            let origin = Vertex::origin(class, self.graph.rank());
            self.balls[class] = Some(ball(self.graph, &origin, radius, self.max_states)?);
        }
        Ok(())
    }

    pub fn radius(&self, class: usize) -> Option<u64> {
        self.balls[class].as_ref().map(Ball::radius)
    }

    /// `d(x, y)` if it is at most the current radius of `x`'s class ball.
    pub fn lookup(&self, x: &Vertex, y: &Vertex) -> Option<u64> {
        let ball = self.balls[x.class].as_ref()?;
        let rel = Vertex::new(
            y.class,
            y.offset.iter().zip(&x.offset).map(|(a, b)| a - b).collect(),
        );
        ball.distance(&rel)
    }

    /// `d(x, y)` if it is at most `bound`, growing the ball as needed.
    pub fn bounded(&mut self, x: &Vertex, y: &Vertex, bound: u64) -> Result<Option<u64>> {
        self.ensure(x.class, bound)?;
        Ok(self.lookup(x, y).filter(|&d| d <= bound))
    }

    /// Exact `d(x, y)`, doubling the search radius from `initial` until found.
    /// Requires a strongly connected graph to terminate.
    pub fn exact(&mut self, x: &Vertex, y: &Vertex, initial: u64) -> Result<u64> {
        let mut r = initial.max(1).max(self.radius(x.class).unwrap_or(0));
        loop {
            self.ensure(x.class, r)?;
            if let Some(d) = self.lookup(x, y) {
                return Ok(d);
            }
            r *= 2;
        }
    }
}
