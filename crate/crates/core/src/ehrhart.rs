//! Shifted Ehrhart counting and the single-class graphs built from polytopes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{int, ExactField, Rational};
use crate::geometry::Polytope;
use crate::graph::{EdgeRecord, QuotientGraph};
use crate::series::QuasiPolynomial;

/// Cap on scanned box points per count.
pub const COUNT_CAP: usize = 50_000_000;

/// `h(d) = #((v + (d + alpha) P) ∩ Z^N)` and its interior variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedEhrhartProblem {
    polytope: Polytope<Rational>,
    shift: Vec<Rational>,
    alpha: Rational,
}

impl ShiftedEhrhartProblem {
    pub fn new(
        polytope: Polytope<Rational>,
        shift: Vec<Rational>,
        alpha: Rational,
    ) -> Result<Self> {
        if shift.len() != polytope.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: polytope.ambient_dim(),
                got: shift.len(),
            });
        }
        Ok(Self {
            polytope,
            shift,
            alpha,
        })
    }

    /// Unshifted `#(dP ∩ Z^N)`.
    pub fn plain(polytope: Polytope<Rational>) -> Self {
        let n = polytope.ambient_dim();
        Self {
            polytope,
            shift: vec![Rational::zero(); n],
            alpha: Rational::zero(),
        }
    }

    pub fn polytope(&self) -> &Polytope<Rational> {
        &self.polytope
    }

    pub fn shift(&self) -> &[Rational] {
        &self.shift
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    /// `(-P, -v, alpha)`, which has the same counts.
    pub fn reflected(&self) -> Self {
        Self {
            polytope: self.polytope.negated(),
            shift: self.shift.iter().map(|x| -x).collect(),
            alpha: self.alpha.clone(),
        }
    }

    /// `(P, -v, -alpha)`, whose interior counts mirror this problem's
    /// quasi-polynomial at negative arguments.
    pub fn dual(&self) -> Self {
        Self {
            polytope: self.polytope.clone(),
            shift: self.shift.iter().map(|x| -x).collect(),
            alpha: -self.alpha.clone(),
        }
    }

    fn dilation(&self, d: i64) -> Rational {
        int(d) + self.alpha.clone()
    }

    /// Lattice points of `v + (d + alpha) P`; empty when `d + alpha < 0`.
    pub fn points(&self, d: i64) -> Result<Vec<Vec<i64>>> {
        let t = self.dilation(d);
        if t.is_negative() {
            return Ok(Vec::new());
        }
        self.polytope
            .lattice_points(&t, &self.shift, false, COUNT_CAP)
    }

    pub fn count(&self, d: i64) -> Result<u64> {
        let t = self.dilation(d);
        if t.is_negative() {
            return Ok(0);
        }
        self.polytope
            .lattice_point_count(&t, &self.shift, false, COUNT_CAP)
    }

    /// Lattice points of `v + (d + alpha) relint(P)`; empty when `d + alpha <= 0`.
    pub fn count_interior(&self, d: i64) -> Result<u64> {
        let t = self.dilation(d);
        if !t.is_positive() {
            return Ok(0);
        }
        self.polytope
            .lattice_point_count(&t, &self.shift, true, COUNT_CAP)
    }

    /// First `d` of the quasi-polynomial range, `ceil(-alpha)`.
    pub fn first_index(&self) -> i64 {
        to_i64(&(-self.alpha.clone()).ceil_int())
    }

    /// `a * den(alpha)` with `a` the vertex denominator LCM.
    pub fn default_period(&self) -> usize {
        let a = self.polytope.denominator_lcm().unwrap_or_else(BigInt::one);
        to_i64(&a.lcm(self.alpha.denom())) as usize
    }
}

fn to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("integer fits in i64")
}

/// Quasi-polynomial agreeing with `count` on `d >= ceil(-alpha)`, fitted from
/// `M + 1` values per residue class and checked on three further periods.
pub fn fit_shifted_qp(
    problem: &ShiftedEhrhartProblem,
    period_hint: Option<usize>,
) -> Result<QuasiPolynomial> {
    let period = period_hint
        .unwrap_or_else(|| problem.default_period())
        .max(1);
    let degree_bound = problem.polytope.dim() + 1;
    let start = problem.first_index();
    let total = period * (degree_bound + 3);
    let values = (0..total as i64)
        .map(|k| {
            problem
                .count(start + k)
                .map(|c| Rational::from_integer(c.into()))
        })
        .collect::<Result<Vec<_>>>()?;
    QuasiPolynomial::fit_values(&values, start, period, degree_bound)
}

/// Checks `f(-i) = (-1)^M h°_{P,-v,-alpha}(i)` for integers `alpha < i <= range`,
/// together with the reflection identities `h_{P,v,alpha} = h_{-P,-v,alpha}`.
pub fn verify_reciprocity(problem: &ShiftedEhrhartProblem, range: i64) -> Result<bool> {
    let qp = fit_shifted_qp(problem, None)?;
    let dual = problem.dual();
    let reflected = problem.reflected();
    let sign_negative = problem.polytope.dim() % 2 == 1;
    let first = to_i64(&problem.alpha.floor_int()) + 1;
    for i in first..=range {
        let mut expected = Rational::from_integer(dual.count_interior(i)?.into());
        if sign_negative {
            expected = -expected;
        }
        if qp.eval(-i) != expected {
            return Ok(false);
        }
    }
    for d in 0..=range {
        if problem.count(d)? != reflected.count(d)?
            || problem.count_interior(d)? != reflected.count_interior(d)?
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Least positive `a` with `aQ` a lattice polytope.
pub fn minimal_dilation(q: &Polytope<Rational>) -> u64 {
    q.denominator_lcm()
        .and_then(|a| a.to_u64())
        .expect("denominator LCM fits in u64")
}

/// The single-class graph on `Z^N` with a loop of weight `i` and vector `m`
/// for every `0 < i < a(d+1)` and `m ∈ iQ ∩ Z^N`.
pub fn gamma_q(q: &Polytope<Rational>) -> Result<QuotientGraph> {
    let a = minimal_dilation(q);
    let bound = a * (q.dim() as u64 + 1);
    let n = q.ambient_dim();
    let origin = vec![Rational::zero(); n];
    let mut edges = Vec::new();
    for i in 1..bound {
        for m in q.lattice_points(&int(i as i64), &origin, false, COUNT_CAP)? {
            edges.push(EdgeRecord::new(0, 0, m, i));
        }
    }
    Ok(QuotientGraph::directed(n, vec!["x".into()], edges))
}

fn require_lattice(q: &Polytope<Rational>) -> Result<()> {
    if !q.is_full_dimensional() {
        return Err(Error::LowerDimensional {
            dim: q.dim(),
            ambient: q.ambient_dim(),
        });
    }
    if q.vertices().iter().flatten().any(|x| !x.is_integer()) {
        return Err(Error::NotLatticePolytope);
    }
    Ok(())
}

/// Whether the lattice polytope `Q` has the origin inside and every facet of
/// the form `a . x <= 1` with integral `a`.
pub fn is_reflexive(q: &Polytope<Rational>) -> Result<bool> {
    require_lattice(q)?;
    Ok(q.origin_interior()
        && q.facets()
            .iter()
            .all(|f| f.rhs.is_one() && f.normal.iter().all(|x| x.is_integer())))
}

/// Checks `(i+1) int(Q) ∩ Z^N = iQ ∩ Z^N` for `i = 0..=bound`.
pub fn interior_shell_check(q: &Polytope<Rational>, bound: u64) -> Result<bool> {
    require_lattice(q)?;
    let origin = vec![Rational::zero(); q.ambient_dim()];
    for i in 0..=bound {
        let inner = q.lattice_points(&int(i as i64 + 1), &origin, true, COUNT_CAP)?;
        let closed = q.lattice_points(&int(i as i64), &origin, false, COUNT_CAP)?;
        if inner != closed {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that every point of `kQ ∩ Z^N` is a point of `(k-a)Q ∩ Z^N` plus a
/// point of `aQ ∩ Z^N`, for `k = a(d+1) .. a(d+1) + extra`.
pub fn normality_check(q: &Polytope<Rational>, extra: u64) -> Result<bool> {
    let a = minimal_dilation(q);
    let n = q.ambient_dim();
    let origin = vec![Rational::zero(); n];
    let first = a * (q.dim() as u64 + 1);
    let small = q.lattice_points(&int(a as i64), &origin, false, COUNT_CAP)?;
    for k in first..=first + extra {
        let rest = q.lattice_points(&int((k - a) as i64), &origin, false, COUNT_CAP)?;
        let rest: std::collections::HashSet<Vec<i64>> = rest.into_iter().collect();
        for p in q.lattice_points(&int(k as i64), &origin, false, COUNT_CAP)? {
            let split = small.iter().any(|s| {
                let r: Vec<i64> = p.iter().zip(s).map(|(x, y)| x - y).collect();
                rest.contains(&r)
            });
            if !split {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `ceil` of the gauge of `Q` at an integer point.
pub fn ceil_gauge(q: &Polytope<Rational>, x: &[i64]) -> Result<u64> {
    let y: Vec<Rational> = x.iter().map(|&v| int(v)).collect();
    let g = q.gauge(&y)?;
    Ok(g.ceil_int().to_u64().expect("gauge fits in u64"))
}
