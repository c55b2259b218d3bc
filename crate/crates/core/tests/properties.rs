mod common;

use common::{q, qi};
use pgrowth::cycles::enumerate_cycles;
use pgrowth::{
    closed_walk_vector, convex_hull, distance, fixtures, growth_sequence, BoundedDistance,
    CycleSpace, Polytope, QuotientGraph, Rational, Vertex, Walk, DEFAULT_MAX_CYCLES,
    DEFAULT_MAX_STATES,
};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn point(dim: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(small_rational(), dim)
}

fn growth_polytopes() -> Vec<Polytope<Rational>> {
    [
        fixtures::wakatsuki(),
        fixtures::tiling_488(),
        fixtures::dia(),
    ]
    .iter()
    .map(|g| CycleSpace::new(g, DEFAULT_MAX_CYCLES).unwrap().polytope)
    .collect()
}

/// Integer matrices of determinant +-1 as products of elementary moves.
fn unimodular(dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec((0..dim, 0..dim, -2i64..=2, any::<bool>()), 0..6).prop_map(move |moves| {
        let mut m: Vec<Vec<i64>> = (0..dim)
            .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
            .collect();
        for (i, j, k, flip) in moves {
            if i != j {
                // row_i += k row_j
                let row = m[j].clone();
                for (a, b) in m[i].iter_mut().zip(row) {
                    *a += k * b;
                }
            }
            if flip {
                for a in m[i].iter_mut() {
                    *a = -*a;
                }
            }
        }
        m
    })
}

fn to_field(m: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    m.iter()
        .map(|r| r.iter().map(|&x| qi(x)).collect())
        .collect()
}

fn polytope_index() -> impl Strategy<Value = usize> {
    0usize..3
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gauge_is_homogeneous(idx in polytope_index(), y in point(3), k in 1i64..=7) {
        let p = &growth_polytopes()[idx];
        let y: Vec<Rational> = y[..p.ambient_dim()].to_vec();
        let scaled: Vec<Rational> = y.iter().map(|x| x * qi(k)).collect();
        prop_assert_eq!(p.gauge(&scaled).unwrap(), p.gauge(&y).unwrap() * qi(k));
    }

    #[test]
    fn gauge_is_subadditive(idx in polytope_index(), x in point(3), y in point(3)) {
        let p = &growth_polytopes()[idx];
        let n = p.ambient_dim();
        let sum: Vec<Rational> = x.iter().zip(&y).take(n).map(|(a, b)| a + b).collect();
        let lhs = p.gauge(&sum).unwrap();
        prop_assert!(lhs <= p.gauge(&x[..n]).unwrap() + p.gauge(&y[..n]).unwrap());
    }

    #[test]
    fn hull_contains_its_inputs(points in prop::collection::vec(point(3), 4..12)) {
        let Ok(h) = convex_hull(&points, false) else { return Ok(()); };
        for p in &points {
            prop_assert!(h.contains(p));
        }
        for v in h.vertices() {
            prop_assert!(points.contains(v));
        }
        // Centroid of the vertices is inside; a far point is not.
        let k = qi(h.vertices().len() as i64);
        let centroid: Vec<Rational> = (0..3)
            .map(|i| h.vertices().iter().map(|v| v[i].clone()).sum::<Rational>() / &k)
            .collect();
        prop_assert!(h.contains(&centroid));
        prop_assert!(!h.contains(&[qi(100), qi(0), qi(0)]));
    }

    #[test]
    fn volume_is_unimodular_invariant(
        points in prop::collection::vec(point(3), 4..10),
        m in unimodular(3),
    ) {
        let Ok(h) = convex_hull(&points, false) else { return Ok(()); };
        if !h.is_full_dimensional() {
            return Ok(());
        }
        let moved = h.transformed(&to_field(&m));
        prop_assert_eq!(moved.volume().unwrap(), h.volume().unwrap());
        let rehull = convex_hull(moved.vertices(), false).unwrap();
        prop_assert_eq!(rehull.vertices().len(), h.vertices().len());
    }
}

fn nets() -> Vec<QuotientGraph> {
    vec![
        fixtures::wakatsuki(),
        fixtures::dia(),
        fixtures::tiling_488(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn growth_is_invariant_under_relabeling(
        idx in 0usize..3,
        perm in Just((0..4).collect::<Vec<usize>>()).prop_shuffle(),
        start in 0usize..4,
    ) {
        let g = &nets()[idx];
        let c = g.class_count();
        let perm: Vec<usize> = {
            let mut p: Vec<usize> = perm.into_iter().filter(|&i| i < c).collect();
            p.truncate(c);
            p
        };
        let start = start % c;
        let h = g.permute_classes(&perm);
        prop_assert!(h.validate().is_valid());
        let a = growth_sequence(g, &Vertex::origin(start, g.rank()), 10, DEFAULT_MAX_STATES).unwrap();
        let b = growth_sequence(&h, &Vertex::origin(perm[start], h.rank()), 10, DEFAULT_MAX_STATES).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn growth_is_invariant_under_basis_change(idx in 0usize..3, m in unimodular(3), start in 0usize..4) {
        let g = &nets()[idx];
        let n = g.rank();
        let m: Vec<Vec<i64>> = m.iter().take(n).map(|r| r[..n].to_vec()).collect();
        // Truncation can break unimodularity; keep only invertible cases.
        let det = match n {
            2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
            _ => {
                m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                    - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                    + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
            }
        };
        prop_assume!(det.abs() == 1);
        let h = g.transform_lattice(&m);
        let x0 = Vertex::origin(start % g.class_count(), n);
        let a = growth_sequence(g, &x0, 10, DEFAULT_MAX_STATES).unwrap();
        let b = growth_sequence(&h, &x0, 10, DEFAULT_MAX_STATES).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn distances_are_symmetric_and_metric(
        idx in 0usize..3,
        classes in prop::collection::vec(0usize..4, 3),
        offsets in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 3),
    ) {
        let g = &nets()[idx];
        let n = g.rank();
        let v: Vec<Vertex> = classes
            .iter()
            .zip(&offsets)
            .map(|(&c, o)| Vertex::new(c % g.class_count(), o[..n].to_vec()))
            .collect();
        let d = |a: &Vertex, b: &Vertex| match distance(g, a, b, 200, DEFAULT_MAX_STATES).unwrap() {
            BoundedDistance::Exact(d) => d,
            BoundedDistance::NotWithinBound => panic!("connected graph"),
        };
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(d(x, y), d(y, x));
        prop_assert!(d(x, z) <= d(x, y) + d(y, z));
        prop_assert_eq!(d(x, x), 0);
        let shift = vec![5i64; n];
        prop_assert_eq!(d(&x.translated(&shift), &y.translated(&shift)), d(x, y));
    }

    #[test]
    fn closed_walk_vectors_add(
        idx in 0usize..3,
        picks in prop::collection::vec(any::<prop::sample::Index>(), 2),
        offset in prop::collection::vec(-4i64..=4, 3),
    ) {
        let g = &nets()[idx];
        let n = g.rank();
        let cycles = enumerate_cycles(g, DEFAULT_MAX_CYCLES).unwrap();
        let first = &cycles[picks[0].index(cycles.len())];
        let class = g.edge(first.edge_indices[0]).src;
        let through: Vec<_> = cycles.iter().filter(|c| c.passes_through(class)).collect();
        let second = through[picks[1].index(through.len())];
        // rotate the second cycle to start at `class`
        let k = second
            .edge_indices
            .iter()
            .position(|&e| g.edge(e).src == class)
            .unwrap();
        let rotated = [&second.edge_indices[k..], &second.edge_indices[..k]].concat();
        let start = Vertex::new(class, offset[..n].to_vec());
        let mu = |edges: Vec<usize>| closed_walk_vector(g, &Walk::new(start.clone(), edges)).unwrap();
        let a = mu(first.edge_indices.clone());
        let b = mu(rotated.clone());
        let both = mu([first.edge_indices.clone(), rotated].concat());
        let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        prop_assert_eq!(both, sum);
        prop_assert_eq!(a, first.total_vector.clone());
        prop_assert_eq!(b, second.total_vector.clone());
    }
}
