//! Exact convex geometry: hulls, gauges, fan triangulations, volumes and
//! lattice points.

mod hull;
mod lattice;

pub use lattice::HalfOpenRegion;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::ExactField;
use crate::linalg::{determinant, dot, nullspace, rank, row_reduce};

/// Inequality `normal . x <= rhs` together with the polytope vertices on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet<F> {
    pub normal: Vec<F>,
    pub rhs: F,
    pub vertices: Vec<usize>,
}

/// Affine equation `normal . x = rhs` satisfied by the whole polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation<F> {
    pub normal: Vec<F>,
    pub rhs: F,
}

/// Convex polytope with both representations. When the polytope is not
/// full-dimensional, `facets` are its relative facets and `equations` cut out
/// its affine hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope<F> {
    ambient: usize,
    dim: usize,
    vertices: Vec<Vec<F>>,
    facets: Vec<Facet<F>>,
    equations: Vec<Equation<F>>,
}

/// Rule for choosing the apex of a fan triangulation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ApexStrategy {
    /// Lexicographically smallest vertex of the face.
    #[default]
    LexMin,
    /// The given polytope vertex when it lies on the face, else `LexMin`.
    Vertex(usize),
}

/// Fan triangulation of one facet; simplices list polytope vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetTriangulation {
    pub facet: usize,
    pub simplices: Vec<Vec<usize>>,
}

fn differences<F: ExactField>(points: &[Vec<F>], base: &[F]) -> Vec<Vec<F>> {
    points
        .iter()
        .map(|p| {
            p.iter()
                .zip(base)
                .map(|(a, b)| a.clone() - b.clone())
                .collect()
        })
        .collect()
}

/// Dimension of the affine hull of `points`.
pub fn affine_dimension<F: ExactField>(points: &[Vec<F>]) -> usize {
    match points.first() {
        None => 0,
        Some(base) => rank(&differences(&points[1..], base)),
    }
}

/// Convex hull of `points` (plus the origin when `include_origin`).
pub fn convex_hull<F: ExactField>(points: &[Vec<F>], include_origin: bool) -> Result<Polytope<F>> {
    let ambient = match points.first() {
        Some(p) => p.len(),
        None => return Err(Error::InvalidInput("convex hull of an empty set".into())),
    };
    let mut pts: Vec<Vec<F>> = points.to_vec();
    for p in &pts {
        if p.len() != ambient {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                got: p.len(),
            });
        }
    }
    if include_origin {
        pts.push(vec![F::zero(); ambient]);
    }
    pts.sort();
    pts.dedup();
    Ok(hull_of_distinct(pts, ambient))
}

fn hull_of_distinct<F: ExactField>(pts: Vec<Vec<F>>, ambient: usize) -> Polytope<F> {
    let base = pts[0].clone();
    let diffs = differences(&pts[1..], &base);
    let (_, pivots) = row_reduce(diffs.clone());
    let dim = pivots.len();
    let equations: Vec<Equation<F>> = if dim == ambient {
        Vec::new()
    } else {
        let basis = if diffs.is_empty() {
            (0..ambient)
                .map(|i| {
                    let mut e = vec![F::zero(); ambient];
                    e[i] = F::one();
                    e
                })
                .collect()
        } else {
            nullspace(&diffs, ambient)
        };
        basis
            .into_iter()
            .map(|normal| {
                let rhs = dot(&normal, &base);
                Equation { normal, rhs }
            })
            .collect()
    };
    if dim == 0 {
        return Polytope {
            ambient,
            dim,
            vertices: pts,
            facets: Vec::new(),
            equations,
        };
    }

    let projected: Vec<Vec<F>> = pts
        .iter()
        .map(|p| pivots.iter().map(|&c| p[c].clone()).collect())
        .collect();
    let raw = hull::facets_full_dimensional(&projected);

    // vertices: points whose tight facet normals span the projected space
    let tight = |p: &Vec<F>| -> Vec<usize> {
        (0..raw.len())
            .filter(|&f| dot(&raw[f].0, p) == raw[f].1)
            .collect()
    };
    let mut vertex_ids: Vec<usize> = Vec::new();
    for (i, p) in projected.iter().enumerate() {
        let normals: Vec<Vec<F>> = tight(p).into_iter().map(|f| raw[f].0.clone()).collect();
        if rank(&normals) == dim {
            vertex_ids.push(i);
        }
    }
    let vertices: Vec<Vec<F>> = vertex_ids.iter().map(|&i| pts[i].clone()).collect();
    let mut facets: Vec<Facet<F>> = raw
        .iter()
        .map(|(a, b)| {
            let (a, b) = if *b > F::zero() {
                (a.iter().map(|x| x.clone() / b.clone()).collect(), F::one())
            } else {
                (a.clone(), b.clone())
            };
            let mut normal = vec![F::zero(); ambient];
            for (k, &c) in pivots.iter().enumerate() {
                normal[c] = a[k].clone();
            }
            let on: Vec<usize> = vertex_ids
                .iter()
                .enumerate()
                .filter(|&(_, &i)| dot(&a, &projected[i]) == b)
                .map(|(v, _)| v)
                .collect();
            Facet {
                normal,
                rhs: b,
                vertices: on,
            }
        })
        .collect();
    facets.sort_by(|x, y| x.vertices.cmp(&y.vertices));
    Polytope {
        ambient,
        dim,
        vertices,
        facets,
        equations,
    }
}

impl<F: ExactField> Polytope<F> {
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient
    }

    fn require_full(&self) -> Result<()> {
        if self.is_full_dimensional() {
            Ok(())
        } else {
            Err(Error::LowerDimensional {
                dim: self.dim,
                ambient: self.ambient,
            })
        }
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[Vec<F>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet<F>] {
        &self.facets
    }

    pub fn equations(&self) -> &[Equation<F>] {
        &self.equations
    }

    pub fn vertex_index(&self, point: &[F]) -> Option<usize> {
        self.vertices.iter().position(|v| v.as_slice() == point)
    }

    pub fn contains(&self, y: &[F]) -> bool {
        self.equations.iter().all(|e| dot(&e.normal, y) == e.rhs)
            && self.facets.iter().all(|f| dot(&f.normal, y) <= f.rhs)
    }

    /// Membership in the relative interior.
    pub fn contains_relative_interior(&self, y: &[F]) -> bool {
        self.equations.iter().all(|e| dot(&e.normal, y) == e.rhs)
            && self.facets.iter().all(|f| dot(&f.normal, y) < f.rhs)
    }

    /// True iff the polytope is full-dimensional and `0` satisfies every facet strictly.
    pub fn origin_interior(&self) -> bool {
        self.is_full_dimensional() && self.facets.iter().all(|f| f.rhs > F::zero())
    }

    /// Least `t >= 0` with `y` in `tP`.
    pub fn gauge(&self, y: &[F]) -> Result<F> {
        if !self.origin_interior() {
            return Err(Error::OriginNotInterior);
        }
        let mut best = F::zero();
        for f in &self.facets {
            let t = dot(&f.normal, y) / f.rhs.clone();
            if t > best {
                best = t;
            }
        }
        Ok(best)
    }

    /// `kP` for a nonnegative scalar `k`.
    pub fn scaled(&self, k: &F) -> Polytope<F> {
        let pts: Vec<Vec<F>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x.clone() * k.clone()).collect())
            .collect();
        convex_hull(&pts, false).expect("nonempty")
    }

    /// `-P`.
    pub fn negated(&self) -> Polytope<F> {
        self.scaled(&-F::one())
    }

    /// Applies `x -> M x` to all vertices.
    pub fn transformed(&self, matrix: &[Vec<F>]) -> Polytope<F> {
        let pts: Vec<Vec<F>> = self
            .vertices
            .iter()
            .map(|v| matrix.iter().map(|row| dot(row, v)).collect())
            .collect();
        convex_hull(&pts, false).expect("nonempty")
    }

    fn set_dimension(&self, set: &[usize]) -> usize {
        let pts: Vec<Vec<F>> = set.iter().map(|&i| self.vertices[i].clone()).collect();
        affine_dimension(&pts)
    }

    /// Fan triangulation of the face with vertex set `face` (sorted) and
    /// dimension `dim`, coning from `apex`.
    fn triangulate_face(&self, face: &[usize], dim: usize, apex: usize) -> Vec<Vec<usize>> {
        if dim == 0 || face.len() == dim + 1 {
            return vec![face.to_vec()];
        }
        let mut subfaces: Vec<Vec<usize>> = Vec::new();
        for f in &self.facets {
            let sub: Vec<usize> = face
                .iter()
                .copied()
                .filter(|v| f.vertices.contains(v))
                .collect();
            if sub.len() < dim || sub.contains(&apex) || subfaces.contains(&sub) {
                continue;
            }
            if self.set_dimension(&sub) == dim - 1 {
                subfaces.push(sub);
            }
        }
        let mut out = Vec::new();
        for sub in subfaces {
            for mut simplex in self.triangulate_face(&sub, dim - 1, sub[0]) {
                simplex.push(apex);
                simplex.sort();
                out.push(simplex);
            }
        }
        out.sort();
        out
    }

    pub fn triangulate_facet(&self, facet: usize, strategy: ApexStrategy) -> FacetTriangulation {
        let face = &self.facets[facet].vertices;
        let apex = match strategy {
            ApexStrategy::Vertex(v) if face.contains(&v) => v,
            _ => face[0],
        };
        FacetTriangulation {
            facet,
            simplices: self.triangulate_face(face, self.dim - 1, apex),
        }
    }

    /// Euclidean volume normalized to `Z^n` (unit cube has volume 1).
    pub fn volume(&self) -> Result<F> {
        self.require_full()?;
        let n = self.ambient;
        let c = 0usize;
        let mut total = F::zero();
        for (fi, f) in self.facets.iter().enumerate() {
            if f.vertices.contains(&c) {
                continue;
            }
            for simplex in self.triangulate_facet(fi, ApexStrategy::LexMin).simplices {
                let rows: Vec<Vec<F>> = simplex
                    .iter()
                    .map(|&v| {
                        self.vertices[v]
                            .iter()
                            .zip(&self.vertices[c])
                            .map(|(a, b)| a.clone() - b.clone())
                            .collect()
                    })
                    .collect();
                let det = determinant(&rows);
                total = total + if det < F::zero() { -det } else { det };
            }
        }
        let factorial: i64 = (1..=n as i64).product();
        Ok(total / F::from_int(factorial))
    }

    /// `|det|` of a facet simplex's edge vectors stacked with the facet
    /// normal. Proportional to the simplex's `(n-1)`-volume, so the pieces of
    /// one facet can be summed and compared.
    pub fn facet_piece_measure(&self, facet: usize, simplex: &[usize]) -> F {
        let f = &self.facets[facet];
        let base = &self.vertices[simplex[0]];
        let mut rows: Vec<Vec<F>> = simplex[1..]
            .iter()
            .map(|&v| {
                self.vertices[v]
                    .iter()
                    .zip(base)
                    .map(|(a, b)| a.clone() - b.clone())
                    .collect()
            })
            .collect();
        rows.push(f.normal.clone());
        let det = determinant(&rows);
        if det < F::zero() {
            -det
        } else {
            det
        }
    }

    /// Integer points `z` with `z - shift` in `dilation * P` (closed) or in
    /// its relative interior, in lexicographic order.
    pub fn lattice_points(
        &self,
        dilation: &F,
        shift: &[F],
        interior: bool,
        cap: usize,
    ) -> Result<Vec<Vec<i64>>> {
        lattice::polytope_points(self, dilation, shift, interior, cap)
    }

    /// Number of points [`Polytope::lattice_points`] returns, without listing them.
    pub fn lattice_point_count(
        &self,
        dilation: &F,
        shift: &[F],
        interior: bool,
        cap: usize,
    ) -> Result<u64> {
        lattice::polytope_point_count(self, dilation, shift, interior, cap)
    }

    /// The same polytope with coordinates embedded in another field.
    pub fn embed<G: ExactField>(&self) -> Polytope<G>
    where
        F: Into<G>,
    {
        let conv = |v: &Vec<F>| -> Vec<G> { v.iter().map(|x| x.clone().into()).collect() };
        Polytope {
            ambient: self.ambient,
            dim: self.dim,
            vertices: self.vertices.iter().map(conv).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| Facet {
                    normal: conv(&f.normal),
                    rhs: f.rhs.clone().into(),
                    vertices: f.vertices.clone(),
                })
                .collect(),
            equations: self
                .equations
                .iter()
                .map(|e| Equation {
                    normal: conv(&e.normal),
                    rhs: e.rhs.clone().into(),
                })
                .collect(),
        }
    }

    /// Least common multiple of the vertex coordinate denominators.
    pub fn denominator_lcm(&self) -> Option<BigInt> {
        use num_integer::Integer;
        let mut l = BigInt::from(1);
        for v in &self.vertices {
            for x in v {
                let r = x.as_rational()?;
                l = l.lcm(r.denom());
            }
        }
        Some(l)
    }
}

/// Decimal approximation of a point, for display.
pub fn approx_point<F: ExactField>(p: &[F]) -> Vec<f64> {
    p.iter().map(ExactField::approx).collect()
}

/// Converts an integer vector into field coordinates.
pub fn to_field<F: ExactField>(v: &[i64]) -> Vec<F> {
    v.iter().map(|&x| F::from_int(x)).collect()
}

/// Converts a field point with integral coordinates into integers.
pub fn to_integer_point<F: ExactField>(v: &[F]) -> Option<Vec<i64>> {
    v.iter()
        .map(|x| {
            let f = x.floor_int();
            (F::from(crate::field::big_int(&f)) == *x)
                .then(|| f.to_i64())
                .flatten()
        })
        .collect()
}
