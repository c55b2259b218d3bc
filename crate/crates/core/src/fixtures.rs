//! Bundled nets.

use crate::field::{Quadratic, Rational};
use crate::geometry::{convex_hull, Polytope};
use crate::graph::{EdgeRecord, QuotientGraph, Realization};
use crate::netdoc::{AnyRealization, NetDocument};

pub const WAKATSUKI: &str = include_str!("../fixtures/wakatsuki.net");
pub const Z1: &str = include_str!("../fixtures/z1.net");
pub const Z2: &str = include_str!("../fixtures/z2.net");
pub const Z3: &str = include_str!("../fixtures/z3.net");
pub const DIA: &str = include_str!("../fixtures/dia.net");
pub const TILING_488: &str = include_str!("../fixtures/tiling-4.8.8.net");

/// Empty templates for nets whose coordinates must come from external data.
pub const TEMPLATES: &[(&str, &str)] = &[
    ("cairo", include_str!("../fixtures/templates/cairo.net")),
    (
        "3.3.4.3.4",
        include_str!("../fixtures/templates/3.3.4.3.4.net"),
    ),
    ("3.4.6.4", include_str!("../fixtures/templates/3.4.6.4.net")),
    ("3.12.12", include_str!("../fixtures/templates/3.12.12.net")),
    (
        "3.3.3.3.6",
        include_str!("../fixtures/templates/3.3.3.3.6.net"),
    ),
    (
        "snub-632",
        include_str!("../fixtures/templates/snub-632.net"),
    ),
    (
        "3-uniform-36-32434",
        include_str!("../fixtures/templates/3-uniform-36-32434.net"),
    ),
    (
        "sacada-60",
        include_str!("../fixtures/templates/sacada-60.net"),
    ),
];

/// Bundled nets with data, by name.
pub const CATALOG: &[(&str, &str)] = &[
    ("wakatsuki", WAKATSUKI),
    ("z1", Z1),
    ("z2", Z2),
    ("z3", Z3),
    ("dia", DIA),
    ("4.8.8", TILING_488),
];

pub fn document(name: &str) -> Option<NetDocument> {
    CATALOG
        .iter()
        .chain(TEMPLATES)
        .find(|(n, _)| *n == name)
        .map(|(_, text)| NetDocument::parse(text).expect("bundled fixture parses"))
}

fn graph_of(text: &str) -> QuotientGraph {
    NetDocument::parse(text)
        .and_then(|d| d.graph())
        .expect("bundled fixture is valid")
}

fn rational_realization(text: &str) -> Realization<Rational> {
    match NetDocument::parse(text).and_then(|d| d.realization()) {
        Ok(AnyRealization::Rational(r)) => r,
        other => panic!("expected a rational realization, got {other:?}"),
    }
}

pub fn wakatsuki() -> QuotientGraph {
    graph_of(WAKATSUKI)
}

pub fn wakatsuki_realization() -> Realization<Rational> {
    rational_realization(WAKATSUKI)
}

/// `Z^n` with unit steps.
pub fn grid(n: usize) -> QuotientGraph {
    match n {
        1 => graph_of(Z1),
        2 => graph_of(Z2),
        3 => graph_of(Z3),
        _ => {
            let vectors: Vec<Vec<i64>> = (0..n)
                .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
                .collect();
            let edges = vectors
                .into_iter()
                .map(|v| EdgeRecord::new(0, 0, v, 1))
                .collect();
            QuotientGraph::undirected(n, vec!["o".into()], edges)
        }
    }
}

pub fn dia() -> QuotientGraph {
    graph_of(DIA)
}

pub fn dia_realization() -> Realization<Rational> {
    rational_realization(DIA)
}

pub fn tiling_488() -> QuotientGraph {
    graph_of(TILING_488)
}

pub fn tiling_488_realization() -> Realization<Quadratic> {
    match NetDocument::parse(TILING_488).and_then(|d| d.realization()) {
        Ok(AnyRealization::Quadratic(r)) => r,
        other => panic!("expected a quadratic realization, got {other:?}"),
    }
}

/// One class with a directed unit-weight loop per vector.
pub fn single_class(rank: usize, vectors: &[Vec<i64>]) -> QuotientGraph {
    let edges = vectors
        .iter()
        .map(|v| EdgeRecord::new(0, 0, v.clone(), 1))
        .collect();
    QuotientGraph::directed(rank, vec!["o".into()], edges)
}

/// Polytopes used to build single-class graphs, by name.
pub const POLYTOPES: &[(&str, &[[i64; 2]])] = &[
    ("square", &[[-1, -1], [1, -1], [1, 1], [-1, 1]]),
    ("cross", &[[1, 0], [0, 1], [-1, 0], [0, -1]]),
    ("triangle", &[[1, 0], [0, 1], [-1, -1]]),
];

pub fn polytope(name: &str) -> Option<Polytope<Rational>> {
    let (_, points) = POLYTOPES.iter().find(|(n, _)| *n == name)?;
    let pts: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            p.iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect()
        })
        .collect();
    Some(convex_hull(&pts, false).expect("bundled polytope is valid"))
}
