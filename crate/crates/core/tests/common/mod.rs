//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use pgrowth::{QuotientGraph, Rational};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Rational {
    q(n, 1)
}

fn floor(x: &Rational) -> i64 {
    let f = x.numer().div_floor(x.denom());
    i64::try_from(f).expect("small")
}

fn ceil(x: &Rational) -> i64 {
    -floor(&-x)
}

type P2 = [Rational; 2];

fn cross(o: &P2, a: &P2, b: &P2) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Convex polygon given by its vertices in counterclockwise order.
#[derive(Clone, Debug)]
pub struct Polygon {
    pub vertices: Vec<P2>,
}

impl Polygon {
    /// Monotone chain hull; `None` unless the points span the plane.
    pub fn hull(points: &[Vec<Rational>]) -> Option<Self> {
        let mut pts: Vec<P2> = points
            .iter()
            .map(|p| [p[0].clone(), p[1].clone()])
            .collect();
        pts.sort();
        pts.dedup();
        if pts.len() < 3 {
            return None;
        }
        let chain = |iter: &mut dyn Iterator<Item = P2>| {
            let mut h: Vec<P2> = Vec::new();
            for p in iter {
                while h.len() >= 2 && !cross(&h[h.len() - 2], &h[h.len() - 1], &p).is_positive() {
                    h.pop();
                }
                h.push(p);
            }
            h.pop();
            h
        };
        let mut lower = chain(&mut pts.clone().into_iter());
        let upper = chain(&mut pts.into_iter().rev());
        lower.extend(upper);
        (lower.len() >= 3).then_some(Polygon { vertices: lower })
    }

    fn edges(&self) -> impl Iterator<Item = (&P2, &P2)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    /// Whether `y` lies in `t * self + shift`, strictly inside if `interior`.
    pub fn contains(&self, t: &Rational, shift: &[Rational], y: &[i64], interior: bool) -> bool {
        let p = [qi(y[0]) - &shift[0], qi(y[1]) - &shift[1]];
        if t.is_zero() {
            return !interior && p[0].is_zero() && p[1].is_zero();
        }
        if t.is_negative() {
            return false;
        }
        self.edges().all(|(a, b)| {
            let a = [a[0].clone() * t, a[1].clone() * t];
            let b = [b[0].clone() * t, b[1].clone() * t];
            let c = cross(&a, &b, &p);
            if interior {
                c.is_positive()
            } else {
                !c.is_negative()
            }
        })
    }

    /// Lattice points of `t * self + shift` by scanning a bounding box.
    pub fn count(&self, t: &Rational, shift: &[Rational], interior: bool) -> u64 {
        if t.is_negative() {
            return 0;
        }
        let coord = |k: usize| self.vertices.iter().map(move |v| &v[k] * t + &shift[k]);
        let lo: Vec<i64> = (0..2)
            .map(|k| coord(k).map(|x| floor(&x)).min().unwrap())
            .collect();
        let hi: Vec<i64> = (0..2)
            .map(|k| coord(k).map(|x| ceil(&x)).max().unwrap())
            .collect();
        let mut n = 0;
        for x in lo[0]..=hi[0] {
            for y in lo[1]..=hi[1] {
                if self.contains(t, shift, &[x, y], interior) {
                    n += 1;
                }
            }
        }
        n
    }

    /// Minkowski gauge, assuming the origin is interior.
    pub fn gauge(&self, y: &[i64]) -> Rational {
        let p = [qi(y[0]), qi(y[1])];
        let mut best = Rational::zero();
        for (a, b) in self.edges() {
            // outward normal n with n . x <= n . a on the polygon
            let n = [&b[1] - &a[1], &a[0] - &b[0]];
            let rhs = &n[0] * &a[0] + &n[1] * &a[1];
            let val = (&n[0] * &p[0] + &n[1] * &p[1]) / rhs;
            if val > best {
                best = val;
            }
        }
        best
    }
}

pub fn ceil_u64(x: &Rational) -> u64 {
    ceil(x) as u64
}

/// All simple directed cycles by depth-first search from every edge, each in
/// its lexicographically least rotation.
pub fn brute_force_cycles(graph: &QuotientGraph) -> BTreeSet<Vec<usize>> {
    fn extend(
        graph: &QuotientGraph,
        start: usize,
        path: &mut Vec<usize>,
        visited: &mut Vec<bool>,
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        let here = graph.edge(*path.last().unwrap()).tgt;
        if here == start {
            let k = path.len();
            let best = (0..k)
                .map(|r| [&path[r..], &path[..r]].concat())
                .min()
                .unwrap();
            out.insert(best);
            return;
        }
        if visited[here] {
            return;
        }
        visited[here] = true;
        for (e, edge) in graph.edges().iter().enumerate() {
            if edge.src == here {
                path.push(e);
                extend(graph, start, path, visited, out);
                path.pop();
            }
        }
        visited[here] = false;
    }
    let mut out = BTreeSet::new();
    for (e, edge) in graph.edges().iter().enumerate() {
        let mut visited = vec![false; graph.class_count()];
        visited[edge.src] = true;
        extend(graph, edge.src, &mut vec![e], &mut visited, &mut out);
    }
    out
}

/// Breadth-first reachability inside the window `|offset|_inf <= window`:
/// every class at offset 0 and every unit translate of the start class must
/// be reachable from every class.
pub fn windowed_strongly_connected(graph: &QuotientGraph, window: i64) -> bool {
    let n = graph.rank();
    let c = graph.class_count();
    (0..c).all(|start| {
        let origin = (start, vec![0i64; n]);
        let mut seen: HashSet<(usize, Vec<i64>)> = HashSet::from([origin.clone()]);
        let mut queue = VecDeque::from([origin]);
        while let Some((class, offset)) = queue.pop_front() {
            for edge in graph.edges().iter().filter(|e| e.src == class) {
                let next: Vec<i64> = offset
                    .iter()
                    .zip(&edge.vector)
                    .map(|(a, b)| a + b)
                    .collect();
                if next.iter().all(|x| x.abs() <= window) {
                    let key = (edge.tgt, next);
                    if seen.insert(key.clone()) {
                        queue.push_back(key);
                    }
                }
            }
        }
        let classes = (0..c).all(|k| seen.contains(&(k, vec![0; n])));
        let units = (0..n).all(|i| {
            [-1, 1].iter().all(|&s| {
                let mut u = vec![0; n];
                u[i] = s;
                seen.contains(&(start, u))
            })
        });
        classes && units
    })
}
