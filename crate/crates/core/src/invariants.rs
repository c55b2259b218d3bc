//! The constants `C1`, `C2` comparing graph distance with the polytope gauge,
//! their asymptotic variants, the alpha-Ehrhart window and the well-arranged
//! test.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use crate::cycles::{connectivity_of, CycleSpace};
use crate::error::{Error, Result};
use crate::field::{ExactField, Rational};
use crate::geometry::{ApexStrategy, FacetTriangulation, HalfOpenRegion, Polytope};
use crate::graph::{reachable_within_edges, DistanceTable, QuotientGraph, Realization, Vertex};

/// Cap on lattice points scanned when enumerating region boxes.
const REGION_BOX_CAP: usize = 50_000_000;

/// Everything needed to compare `d_Gamma(x0, .)` with the gauge of the growth
/// polytope under a realization.
#[derive(Debug)]
pub struct Context<'a, F> {
    pub graph: &'a QuotientGraph,
    pub space: &'a CycleSpace,
    pub realization: &'a Realization<F>,
    pub x0: Vertex,
    pub polytope: Polytope<F>,
    pub max_states: usize,
}

/// Value attained at a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extremum<F> {
    pub value: F,
    pub witness: Vertex,
}

/// `C2` is only computable exactly from a `P`-initial start vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum C2Value<F> {
    Exact(Extremum<F>),
    /// Not `P`-initial; the bound is the largest `d - gauge` seen in a ball.
    Unknown {
        lower_bound: F,
        radius: u64,
    },
}

impl<F: ExactField> C2Value<F> {
    pub fn exact(&self) -> Option<&F> {
        match self {
            C2Value::Exact(e) => Some(&e.value),
            C2Value::Unknown { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport<F> {
    pub c1: Extremum<F>,
    pub c2: C2Value<F>,
    /// `[C1, 1 - C2)` when `C1 + C2 < 1`.
    pub alpha_window: Option<(F, F)>,
    pub p_initial: bool,
}

/// First vertex where graph balls and gauge balls disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartCounterexample<F> {
    pub vertex: Vertex,
    pub distance: Option<u64>,
    pub gauge: F,
}

/// A vertex breaking `d(x0, y) + d(y, z) = sum d_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub facet: usize,
    pub simplex: Vec<usize>,
    pub subset: Vec<usize>,
    pub y: Vertex,
    pub z: Vertex,
    pub expected: u64,
    /// `d(x0, y) + d(y, z)` when both are at most `expected`.
    pub found: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WellArrangedVerdict {
    WellArranged {
        /// `d_v` in polytope vertex order.
        d: Vec<u64>,
        triangulations: Vec<FacetTriangulation>,
    },
    NotWellArranged {
        reason: String,
    },
    Unknown {
        /// One failing instance per multiplier tried.
        counterexamples: Vec<Violation>,
    },
}

impl WellArrangedVerdict {
    pub fn is_well_arranged(&self) -> bool {
        matches!(self, WellArrangedVerdict::WellArranged { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellArrangedConfig {
    /// `d_v` in polytope vertex order; default: minimal cycle weights through `x0`.
    pub d_overrides: Option<Vec<u64>>,
    /// Uniform multipliers `1..=multiplier_bound` applied to the `d_v`.
    pub multiplier_bound: u64,
}

impl Default for WellArrangedConfig {
    fn default() -> Self {
        Self {
            d_overrides: None,
            multiplier_bound: 2,
        }
    }
}

/// `[c1, 1 - c2)` if nonempty.
pub fn alpha_ehrhart_window<F: ExactField>(c1: &F, c2: &F) -> Option<(F, F)> {
    (c1.clone() + c2.clone() < F::one()).then(|| (c1.clone(), F::one() - c2.clone()))
}

fn ceil_u64<F: ExactField>(x: &F) -> u64 {
    let c = x.ceil_int();
    u64::try_from(c).unwrap_or(0)
}

impl<'a, F: ExactField> Context<'a, F> {
    pub fn new(
        graph: &'a QuotientGraph,
        space: &'a CycleSpace,
        realization: &'a Realization<F>,
        x0: Vertex,
        max_states: usize,
    ) -> Result<Self>
    where
        Rational: Into<F>,
    {
        realization.check(graph)?;
        if x0.class >= graph.class_count() || x0.offset.len() != graph.rank() {
            return Err(Error::InvalidInput(
                "start vertex does not belong to the graph".into(),
            ));
        }
        if !connectivity_of(graph, space).is_strongly_connected() {
            return Err(Error::NotStronglyConnected);
        }
        Ok(Self {
            graph,
            space,
            realization,
            x0,
            polytope: space.polytope.embed(),
            max_states,
        })
    }

    /// Gauge of `Phi(y) - Phi(x0)`.
    pub fn gauge_of(&self, y: &Vertex) -> F {
        self.polytope
            .gauge(&self.realization.displacement(&self.x0, y))
            .expect("origin is interior for strongly connected graphs")
    }

    pub fn distances(&self) -> DistanceTable<'a> {
        DistanceTable::new(self.graph, self.max_states)
    }

    /// Maximum of `gauge - d` over the vertices reachable by at most `c - 1` edges.
    pub fn c1(&self) -> Result<Extremum<F>> {
        let c = self.graph.class_count();
        let candidates = reachable_within_edges(self.graph, &self.x0, c - 1);
        let bound = (c as u64 - 1) * self.graph.max_weight();
        let mut table = self.distances();
        let mut best = Extremum {
            value: F::zero(),
            witness: self.x0.clone(),
        };
        for y in candidates {
            let d = table
                .bounded(&self.x0, &y, bound)?
                .expect("walk of at most c-1 edges exists");
            let value = self.gauge_of(&y) - F::from_int(d as i64);
            if value > best.value {
                best = Extremum { value, witness: y };
            }
        }
        Ok(best)
    }

    /// Largest `gauge - d` over a ball; approximates `C1` from below.
    pub fn c1_empirical(&self, radius: u64) -> Result<F> {
        let ball = crate::graph::ball(self.graph, &self.x0, radius, self.max_states)?;
        let mut best = F::zero();
        for (y, d) in ball.iter() {
            let v = self.gauge_of(y) - F::from_int(d as i64);
            if v > best {
                best = v;
            }
        }
        Ok(best)
    }

    /// Largest `d - gauge` over a ball; a lower bound for `C2`.
    pub fn c2_empirical(&self, radius: u64) -> Result<F> {
        let ball = crate::graph::ball(self.graph, &self.x0, radius, self.max_states)?;
        let mut best = F::zero();
        for (y, d) in ball.iter() {
            let v = F::from_int(d as i64) - self.gauge_of(y);
            if v > best {
                best = v;
            }
        }
        Ok(best)
    }

    fn default_triangulations(&self) -> Vec<FacetTriangulation> {
        (0..self.polytope.facets().len())
            .map(|f| self.polytope.triangulate_facet(f, ApexStrategy::LexMin))
            .collect()
    }

    /// Vertices `y` with `Phi(y) - Phi(x0)` in the half-open region spanned by
    /// `d_v v` over `subset`.
    fn region_vertices(&self, subset: &[usize], d: &[u64]) -> Result<Vec<Vertex>> {
        let n = self.graph.rank();
        let generators: Vec<(Vec<F>, F)> = subset
            .iter()
            .map(|&v| {
                (
                    self.polytope.vertices()[v].clone(),
                    F::from_int(d[v] as i64),
                )
            })
            .collect();
        let region = HalfOpenRegion::new(vec![F::zero(); n], generators)?;
        let base = self.realization.position(&self.x0);
        let mut out = Vec::new();
        for class in 0..self.graph.class_count() {
            // u + phi_class - Phi(x0) in region
            let shift: Vec<F> = base
                .iter()
                .zip(&self.realization.coords()[class])
                .map(|(b, p)| b.clone() - p.clone())
                .collect();
            for u in region.lattice_points(&shift, REGION_BOX_CAP)? {
                out.push(Vertex::new(class, u));
            }
        }
        Ok(out)
    }

    /// Vertices over the region `Q`, the union over facet simplices of
    /// `sum_v [0, 1) d_v v`.
    fn q_vertices(&self, d: &[u64], triangulations: &[FacetTriangulation]) -> Result<Vec<Vertex>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for t in triangulations {
            for simplex in &t.simplices {
                for y in self.region_vertices(simplex, d)? {
                    if seen.insert(y.clone()) {
                        out.push(y);
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Exact distances from `x0` to every target, growing the search radius
    /// from `ceil(max gauge) + 2` by doubling.
    fn settle(&self, targets: &[Vertex]) -> Result<Vec<u64>> {
        let max_gauge = targets
            .iter()
            .map(|y| self.gauge_of(y))
            .max()
            .unwrap_or_else(F::zero);
        let mut radius = ceil_u64(&max_gauge) + 2;
        let mut table = self.distances();
        loop {
            table.ensure(self.x0.class, radius)?;
            let found: Option<Vec<u64>> =
                targets.iter().map(|y| table.lookup(&self.x0, y)).collect();
            if let Some(ds) = found {
                return Ok(ds);
            }
            radius *= 2;
        }
    }

    /// `C2` for a `P`-initial start vertex: maximum of `d - gauge` over the
    /// vertices above `Q`, with `d_v` the minimal cycle weights through `x0`
    /// and lexicographic fan triangulations.
    pub fn c2(&self) -> Result<Extremum<F>> {
        let data = self.space.p_initial_data(self.x0.class)?;
        self.c2_with(&data.d_values(), &self.default_triangulations())
    }

    pub fn c2_with(&self, d: &[u64], triangulations: &[FacetTriangulation]) -> Result<Extremum<F>> {
        let targets = self.q_vertices(d, triangulations)?;
        let dist = self.settle(&targets)?;
        let mut best = Extremum {
            value: F::zero(),
            witness: self.x0.clone(),
        };
        for (y, d) in targets.into_iter().zip(dist) {
            let v = F::from_int(d as i64) - self.gauge_of(&y);
            if v > best.value {
                best = Extremum {
                    value: v,
                    witness: y,
                };
            }
        }
        Ok(best)
    }

    /// `C2` when computable, else an empirical lower bound over a ball.
    pub fn c2_value(&self, fallback_radius: u64) -> Result<C2Value<F>> {
        if self.space.p_initial(self.x0.class) {
            Ok(C2Value::Exact(self.c2()?))
        } else {
            Ok(C2Value::Unknown {
                lower_bound: self.c2_empirical(fallback_radius)?,
                radius: fallback_radius,
            })
        }
    }

    pub fn report(&self, fallback_radius: u64) -> Result<InvariantReport<F>> {
        let c1 = self.c1()?;
        let c2 = self.c2_value(fallback_radius)?;
        let alpha_window = c2
            .exact()
            .and_then(|c2| alpha_ehrhart_window(&c1.value, c2));
        Ok(InvariantReport {
            c1,
            c2,
            alpha_window,
            p_initial: self.space.p_initial(self.x0.class),
        })
    }

    /// Minimal weight of a walk from `x0` to each vertex whose image visits
    /// every class, for walks of weight at most `radius`.
    pub fn full_support_distances(&self, radius: u64) -> Result<HashMap<Vertex, u64>> {
        let c = self.graph.class_count();
        if c > 64 {
            return Err(Error::InvalidInput(
                "full-support search needs at most 64 classes".into(),
            ));
        }
        let full: u64 = if c == 64 { u64::MAX } else { (1u64 << c) - 1 };
        let start = (self.x0.clone(), 1u64 << self.x0.class);
        let mut best: HashMap<(Vertex, u64), u64> = HashMap::new();
        let mut settled: HashSet<(Vertex, u64)> = HashSet::new();
        let mut heap = BinaryHeap::new();
        best.insert(start.clone(), 0);
        heap.push(Reverse((0u64, start.0, start.1)));
        let mut out = HashMap::new();
        while let Some(Reverse((d, v, mask))) = heap.pop() {
            if !settled.insert((v.clone(), mask)) {
                continue;
            }
            if mask == full {
                out.entry(v.clone()).or_insert(d);
            }
            for &ei in self.graph.out_edges(v.class) {
                let e = self.graph.edge(ei);
                let nd = d + e.weight;
                if nd > radius {
                    continue;
                }
                let key = (v.step(e), mask | (1u64 << e.tgt));
                if settled.contains(&key) {
                    continue;
                }
                if best.get(&key).is_none_or(|&old| nd < old) {
                    if best.len() >= self.max_states {
                        return Err(Error::ResourceLimit {
                            what: "full-support search states",
                            cap: self.max_states,
                        });
                    }
                    best.insert(key.clone(), nd);
                    heap.push(Reverse((nd, key.0, key.1)));
                }
            }
        }
        Ok(out)
    }

    /// `d'(x0, y)` exactly, doubling the radius until found.
    pub fn full_support_distance(&self, y: &Vertex) -> Result<u64> {
        let mut radius = self.graph.max_weight() * self.graph.class_count() as u64 + 2;
        loop {
            if let Some(&d) = self.full_support_distances(radius)?.get(y) {
                return Ok(d);
            }
            radius *= 2;
        }
    }

    /// `(C'1, C'2)`: `C'1` equals the finite maximum defining `C1`; `C'2` is
    /// the maximum of `d' - gauge` over vertices above `Q`, with `d_v` the
    /// minimal weight of any cycle in `nu^{-1}(v)`.
    pub fn asymptotic_constants(&self) -> Result<(Extremum<F>, Extremum<F>)> {
        let c1 = self.c1()?;
        let d: Vec<u64> = self
            .space
            .polytope
            .vertices()
            .iter()
            .map(|v| {
                self.space
                    .min_weight(v)
                    .expect("polytope vertices lie in Im(nu)")
            })
            .collect();
        let targets = self.q_vertices(&d, &self.default_triangulations())?;
        let max_gauge = targets
            .iter()
            .map(|y| self.gauge_of(y))
            .max()
            .unwrap_or_else(F::zero);
        let mut radius =
            ceil_u64(&max_gauge) + self.graph.max_weight() * self.graph.class_count() as u64 + 2;
        let table = loop {
            let table = self.full_support_distances(radius)?;
            if targets.iter().all(|y| table.contains_key(y)) {
                break table;
            }
            radius *= 2;
        };
        let mut best: Option<Extremum<F>> = None;
        for y in targets {
            let v = F::from_int(table[&y] as i64) - self.gauge_of(&y);
            if best.as_ref().is_none_or(|b| v > b.value) {
                best = Some(Extremum {
                    value: v,
                    witness: y,
                });
            }
        }
        let c2 = best.expect("x0 lies above Q");
        Ok((c1, c2))
    }

    /// Checks `B_{x0,i} = {y : gauge(Phi(y) - Phi(x0)) <= i + alpha}` for all
    /// `0 <= i <= radius`.
    pub fn verify_alpha_ehrhart(
        &self,
        alpha: &F,
        radius: u64,
    ) -> Result<std::result::Result<(), EhrhartCounterexample<F>>> {
        // smallest i >= 0 with gauge <= i + alpha
        let threshold = |g: &F| -> u64 {
            let t = (g.clone() - alpha.clone()).ceil_int();
            u64::try_from(t).unwrap_or(0)
        };
        let ball = crate::graph::ball(self.graph, &self.x0, radius, self.max_states)?;
        for (y, d) in ball.sorted() {
            let g = self.gauge_of(&y);
            if threshold(&g) != d {
                return Ok(Err(EhrhartCounterexample {
                    vertex: y,
                    distance: Some(d),
                    gauge: g,
                }));
            }
        }
        let dilation = F::from_int(radius as i64) + alpha.clone();
        let base = self.realization.position(&self.x0);
        let mut extra = Vec::new();
        for class in 0..self.graph.class_count() {
            let shift: Vec<F> = base
                .iter()
                .zip(&self.realization.coords()[class])
                .map(|(b, p)| b.clone() - p.clone())
                .collect();
            for u in self
                .polytope
                .lattice_points(&dilation, &shift, false, REGION_BOX_CAP)?
            {
                let y = Vertex::new(class, u);
                if !ball.contains(&y) {
                    extra.push(y);
                }
            }
        }
        extra.sort();
        if let Some(y) = extra.into_iter().next() {
            let g = self.gauge_of(&y);
            return Ok(Err(EhrhartCounterexample {
                vertex: y,
                distance: None,
                gauge: g,
            }));
        }
        Ok(Ok(()))
    }

    /// Searches `d_v` (uniform multiples of the defaults) and fan
    /// triangulations (every apex per facet) satisfying the additivity
    /// condition on every half-open region.
    pub fn well_arranged(&self, config: &WellArrangedConfig) -> Result<WellArrangedVerdict> {
        if !self.graph.is_undirected() {
            return Err(Error::NotUndirected);
        }
        if !self.space.p_initial(self.x0.class) {
            return Ok(WellArrangedVerdict::NotWellArranged {
                reason: format!(
                    "start class {} is not P-initial",
                    self.graph.classes()[self.x0.class]
                ),
            });
        }
        let base_d = match &config.d_overrides {
            Some(d) => {
                if d.len() != self.polytope.vertices().len() || d.contains(&0) {
                    return Err(Error::InvalidInput(
                        "need one positive d_v per polytope vertex".into(),
                    ));
                }
                for (v, &dv) in self.space.polytope.vertices().iter().zip(d) {
                    let scaled = v
                        .iter()
                        .all(|x| (x * Rational::from_integer(dv.into())).is_integer());
                    if !scaled {
                        return Err(Error::InvalidInput(
                            "d_v * v must be a lattice vector".into(),
                        ));
                    }
                }
                d.clone()
            }
            None => self.space.p_initial_data(self.x0.class)?.d_values(),
        };
        let mut table = self.distances();
        let mut counterexamples = Vec::new();
        'multiplier: for k in 1..=config.multiplier_bound.max(1) {
            let d: Vec<u64> = base_d.iter().map(|x| x * k).collect();
            let mut chosen = Vec::new();
            for facet in 0..self.polytope.facets().len() {
                let mut first_failure = None;
                let mut tried: Vec<FacetTriangulation> = Vec::new();
                let mut passed = None;
                for &apex in &self.polytope.facets()[facet].vertices {
                    let t = self
                        .polytope
                        .triangulate_facet(facet, ApexStrategy::Vertex(apex));
                    if tried.contains(&t) {
                        continue;
                    }
                    match self.check_triangulation(&t, &d, &mut table)? {
                        None => {
                            passed = Some(t);
                            break;
                        }
                        Some(v) => {
                            first_failure.get_or_insert(v);
                            tried.push(t);
                        }
                    }
                }
                match passed {
                    Some(t) => chosen.push(t),
                    None => {
                        counterexamples.extend(first_failure);
                        continue 'multiplier;
                    }
                }
            }
            return Ok(WellArrangedVerdict::WellArranged {
                d,
                triangulations: chosen,
            });
        }
        Ok(WellArrangedVerdict::Unknown { counterexamples })
    }

    /// First violation of the additivity condition over one facet triangulation.
    fn check_triangulation(
        &self,
        t: &FacetTriangulation,
        d: &[u64],
        table: &mut DistanceTable<'_>,
    ) -> Result<Option<Violation>> {
        for simplex in &t.simplices {
            let k = simplex.len();
            for mask in 0u32..(1 << k) {
                let subset: Vec<usize> = (0..k)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| simplex[i])
                    .collect();
                let expected: u64 = subset.iter().map(|&v| d[v]).sum();
                let mut z_offset = self.x0.offset.clone();
                for &v in &subset {
                    let step = &self.space.polytope.vertices()[v];
                    for (acc, x) in z_offset.iter_mut().zip(step) {
                        let s = x * Rational::from_integer(d[v].into());
                        *acc += i64::try_from(s.to_integer()).expect("lattice vector fits i64");
                    }
                }
                let z = Vertex::new(self.x0.class, z_offset);
                for y in self.region_vertices(&subset, d)? {
                    let a = table.bounded(&self.x0, &y, expected)?;
                    let b = table.bounded(&y, &z, expected)?;
                    let found = match (a, b) {
                        (Some(a), Some(b)) => Some(a + b),
                        _ => None,
                    };
                    if found != Some(expected) {
                        return Ok(Some(Violation {
                            facet: t.facet,
                            simplex: simplex.clone(),
                            subset,
                            y,
                            z,
                            expected,
                            found,
                        }));
                    }
                }
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::DEFAULT_MAX_CYCLES;
    use crate::field::{int, rat, Quadratic};
    use crate::fixtures;
    use crate::graph::DEFAULT_MAX_STATES;

    fn space(g: &QuotientGraph) -> CycleSpace {
        CycleSpace::new(g, DEFAULT_MAX_CYCLES).unwrap()
    }

    #[test]
    fn grid_constants_vanish() {
        let g = fixtures::grid(2);
        let s = space(&g);
        let r = Realization::<Rational>::zero(&g);
        let ctx = Context::new(&g, &s, &r, Vertex::origin(0, 2), DEFAULT_MAX_STATES).unwrap();
        assert_eq!(ctx.c1().unwrap().value, int(0));
        assert_eq!(ctx.c2().unwrap().value, int(0));
        assert!(ctx.verify_alpha_ehrhart(&rat(1, 2), 10).unwrap().is_ok());
        let v = ctx.well_arranged(&WellArrangedConfig::default()).unwrap();
        match v {
            WellArrangedVerdict::WellArranged { d, .. } => assert!(d.iter().all(|&x| x == 1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wakatsuki_v2() {
        let g = fixtures::wakatsuki();
        let s = space(&g);
        let r = fixtures::wakatsuki_realization();
        let ctx = Context::new(&g, &s, &r, Vertex::origin(2, 2), DEFAULT_MAX_STATES).unwrap();
        assert_eq!(ctx.c1().unwrap().value, int(1));
        assert!(matches!(ctx.c2(), Err(Error::NotPInitial { class: 2 })));
        assert_eq!(ctx.full_support_distance(&Vertex::origin(2, 2)).unwrap(), 3);
        let v = ctx.well_arranged(&WellArrangedConfig::default()).unwrap();
        assert!(matches!(v, WellArrangedVerdict::NotWellArranged { .. }));
        assert!(ctx.verify_alpha_ehrhart(&int(0), 6).unwrap().is_err());
    }

    #[test]
    fn window() {
        assert_eq!(
            alpha_ehrhart_window(&int(0), &int(0)),
            Some((int(0), int(1)))
        );
        assert_eq!(
            alpha_ehrhart_window(&rat(1, 3), &rat(1, 3)),
            Some((rat(1, 3), rat(2, 3)))
        );
        let x = Quadratic::from(int(2)) - Quadratic::sqrt(2).unwrap();
        assert_eq!(alpha_ehrhart_window(&x, &x), None);
        assert_eq!(alpha_ehrhart_window(&rat(1, 2), &rat(1, 2)), None);
    }

    #[test]
    fn directed_graph_rejected_by_well_arranged() {
        let g = fixtures::single_class(1, &[vec![1], vec![-1]]);
        let s = space(&g);
        let r = Realization::<Rational>::zero(&g);
        let ctx = Context::new(&g, &s, &r, Vertex::origin(0, 1), DEFAULT_MAX_STATES).unwrap();
        assert!(matches!(
            ctx.well_arranged(&WellArrangedConfig::default()),
            Err(Error::NotUndirected)
        ));
    }
}
