//! Simple cycles of the quotient graph, the normalization map and the growth
//! polytope.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Rational;
use crate::geometry::{convex_hull, Polytope};
use crate::graph::{LatticeVector, QuotientGraph};
use crate::linalg::generates_full_lattice;

/// Default cap on the number of enumerated cycles.
pub const DEFAULT_MAX_CYCLES: usize = 1_000_000;

/// Simple directed cycle of the quotient graph in its canonical rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cycle {
    pub edge_indices: Vec<usize>,
    pub total_weight: u64,
    pub total_vector: LatticeVector,
    pub support: Vec<usize>,
}

impl Cycle {
    /// Builds a cycle from a closed edge sequence, rotating it into canonical
    /// (lexicographically least) form.
    pub fn from_edges(graph: &QuotientGraph, edges: &[usize]) -> Self {
        let k = edges.len();
        let best = (0..k)
            .map(|r| {
                let mut rot = edges[r..].to_vec();
                rot.extend_from_slice(&edges[..r]);
                rot
            })
            .min()
            .unwrap_or_default();
        let mut vector = vec![0i64; graph.rank()];
        let mut weight = 0;
        let mut support = BTreeSet::new();
        for &e in &best {
            let edge = graph.edge(e);
            weight += edge.weight;
            for (acc, x) in vector.iter_mut().zip(&edge.vector) {
                *acc += x;
            }
            support.insert(edge.src);
        }
        Self {
            edge_indices: best,
            total_weight: weight,
            total_vector: vector,
            support: support.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.edge_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_indices.is_empty()
    }

    pub fn passes_through(&self, class: usize) -> bool {
        self.support.binary_search(&class).is_ok()
    }
}

/// All simple cycles, each once, sorted by canonical edge sequence.
///
/// Cycles are grown from their least class `s` through classes `> s` only,
/// restricted to the part of the graph that can still return to `s`.
pub fn enumerate_cycles(graph: &QuotientGraph, max_cycles: usize) -> Result<Vec<Cycle>> {
    let c = graph.class_count();
    let mut out: Vec<Cycle> = Vec::new();
    for s in 0..c {
        // classes >= s from which s is reachable inside the subgraph on classes >= s
        let mut returns = vec![false; c];
        returns[s] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for e in graph.edges() {
                if e.src >= s && e.tgt >= s && returns[e.tgt] && !returns[e.src] {
                    returns[e.src] = true;
                    changed = true;
                }
            }
        }
        let mut on_path = vec![false; c];
        on_path[s] = true;
        let mut path: Vec<usize> = Vec::new();
        extend(
            graph,
            s,
            s,
            &returns,
            &mut on_path,
            &mut path,
            &mut out,
            max_cycles,
        )?;
    }
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    graph: &QuotientGraph,
    start: usize,
    at: usize,
    returns: &[bool],
    on_path: &mut [bool],
    path: &mut Vec<usize>,
    out: &mut Vec<Cycle>,
    cap: usize,
) -> Result<()> {
    for &ei in graph.out_edges(at) {
        let t = graph.edge(ei).tgt;
        if t == start {
            if out.len() >= cap {
                return Err(Error::ResourceLimit {
                    what: "cycles",
                    cap,
                });
            }
            path.push(ei);
            out.push(Cycle::from_edges(graph, path));
            path.pop();
        } else if t > start && returns[t] && !on_path[t] {
            on_path[t] = true;
            path.push(ei);
            extend(graph, start, t, returns, on_path, path, out, cap)?;
            path.pop();
            on_path[t] = false;
        }
    }
    Ok(())
}

/// `nu(q) = mu(q) / w(q)`.
pub fn nu(cycle: &Cycle) -> Vec<Rational> {
    let w = BigInt::from(cycle.total_weight);
    cycle
        .total_vector
        .iter()
        .map(|&x| Rational::new(BigInt::from(x), w.clone()))
        .collect()
}

/// Image of the normalization map with the weights realizing each point.
pub type NuImage = BTreeMap<Vec<Rational>, BTreeSet<u64>>;

pub fn nu_image(cycles: &[Cycle]) -> NuImage {
    let mut image = NuImage::new();
    for c in cycles {
        image.entry(nu(c)).or_default().insert(c.total_weight);
    }
    image
}

/// Cycles of a graph together with `Im(nu)` and the growth polytope.
#[derive(Clone, Debug)]
pub struct CycleSpace {
    pub cycles: Vec<Cycle>,
    pub image: NuImage,
    pub polytope: Polytope<Rational>,
}

impl CycleSpace {
    pub fn new(graph: &QuotientGraph, max_cycles: usize) -> Result<Self> {
        let cycles = enumerate_cycles(graph, max_cycles)?;
        let image = nu_image(&cycles);
        let mut points: Vec<Vec<Rational>> = image.keys().cloned().collect();
        points.push(vec![Rational::from_integer(BigInt::from(0)); graph.rank()]);
        let polytope = convex_hull(&points, false)?;
        Ok(Self {
            cycles,
            image,
            polytope,
        })
    }

    /// Whether every vertex of the growth polytope is `nu` of a cycle through `class`.
    pub fn p_initial(&self, class: usize) -> bool {
        self.polytope.vertices().iter().all(|v| {
            self.cycles
                .iter()
                .any(|c| c.passes_through(class) && nu(c) == *v)
        })
    }

    /// Minimal-weight witnesses `q_v` through `class` for every polytope vertex.
    pub fn p_initial_data(&self, class: usize) -> Result<PInitialData> {
        let mut entries = Vec::new();
        for v in self.polytope.vertices() {
            let best = self
                .cycles
                .iter()
                .filter(|c| c.passes_through(class) && nu(c) == *v)
                .min_by(|a, b| {
                    a.total_weight
                        .cmp(&b.total_weight)
                        .then_with(|| a.edge_indices.cmp(&b.edge_indices))
                });
            match best {
                Some(c) => entries.push(VertexWeight {
                    vertex: v.clone(),
                    d: c.total_weight,
                    witness: c.clone(),
                }),
                None => return Err(Error::NotPInitial { class }),
            }
        }
        Ok(PInitialData { class, entries })
    }

    /// Least weight of any cycle with `nu = v`.
    pub fn min_weight(&self, v: &[Rational]) -> Option<u64> {
        self.image.get(v).and_then(|ws| ws.iter().next().copied())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexWeight {
    pub vertex: Vec<Rational>,
    pub d: u64,
    pub witness: Cycle,
}

/// Per polytope vertex `v`: a minimal cycle `q_v` through the start class and `d_v = w(q_v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PInitialData {
    pub class: usize,
    pub entries: Vec<VertexWeight>,
}

impl PInitialData {
    /// `d_v` listed in polytope vertex order.
    pub fn d_values(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.d).collect()
    }
}

pub fn growth_polytope(graph: &QuotientGraph, max_cycles: usize) -> Result<Polytope<Rational>> {
    Ok(CycleSpace::new(graph, max_cycles)?.polytope)
}

pub fn p_initial(graph: &QuotientGraph, class: usize, max_cycles: usize) -> Result<bool> {
    Ok(CycleSpace::new(graph, max_cycles)?.p_initial(class))
}

pub fn p_initial_data(
    graph: &QuotientGraph,
    class: usize,
    max_cycles: usize,
) -> Result<PInitialData> {
    CycleSpace::new(graph, max_cycles)?.p_initial_data(class)
}

/// The three checks whose conjunction decides strong connectivity of the
/// periodic graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivityVerdict {
    pub quotient_strongly_connected: bool,
    pub cycles_generate_lattice: bool,
    pub origin_interior: bool,
}

impl ConnectivityVerdict {
    pub fn is_strongly_connected(&self) -> bool {
        self.quotient_strongly_connected && self.cycles_generate_lattice && self.origin_interior
    }
}

pub fn is_strongly_connected(
    graph: &QuotientGraph,
    max_cycles: usize,
) -> Result<ConnectivityVerdict> {
    let space = CycleSpace::new(graph, max_cycles)?;
    Ok(connectivity_of(graph, &space))
}

pub fn connectivity_of(graph: &QuotientGraph, space: &CycleSpace) -> ConnectivityVerdict {
    let vectors: Vec<Vec<i64>> = space
        .cycles
        .iter()
        .map(|c| c.total_vector.clone())
        .collect();
    ConnectivityVerdict {
        quotient_strongly_connected: graph.quotient_strongly_connected(),
        cycles_generate_lattice: generates_full_lattice(&vectors, graph.rank()),
        origin_interior: space.polytope.origin_interior(),
    }
}
