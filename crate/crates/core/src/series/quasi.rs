use num_traits::{One, Zero};
use serde::Serialize;

use super::poly::Polynomial;
use super::rational::{RationalSeries, SeriesKind};
use crate::cycles::CycleSpace;
use crate::error::{Error, Result};
use crate::field::{int, Rational};
use crate::graph::QuotientGraph;

/// Largest `k` tried when looking for `D | (1 - t^N)^k`.
pub const MAX_POLE_ORDER: usize = 32;

/// `f(n) = constituents[n mod period](n)` for `n >= valid_from`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    period: usize,
    constituents: Vec<Polynomial>,
    valid_from: i64,
}

/// Serializable view with coefficients as exact literals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiPolynomialSummary {
    pub period: usize,
    pub valid_from: i64,
    pub constituents: Vec<Vec<String>>,
}

impl QuasiPolynomial {
    pub fn new(constituents: Vec<Polynomial>, valid_from: i64) -> Result<Self> {
        if constituents.is_empty() {
            return Err(Error::InvalidInput(
                "quasi-polynomial needs a constituent".into(),
            ));
        }
        Ok(Self {
            period: constituents.len(),
            constituents,
            valid_from,
        })
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn constituents(&self) -> &[Polynomial] {
        &self.constituents
    }

    pub fn constituent(&self, residue: usize) -> &Polynomial {
        &self.constituents[residue % self.period]
    }

    pub fn valid_from(&self) -> i64 {
        self.valid_from
    }

    /// Largest constituent degree.
    pub fn degree(&self) -> usize {
        self.constituents
            .iter()
            .map(Polynomial::degree)
            .max()
            .unwrap_or(0)
    }

    /// Evaluates at any integer, negative ones included.
    pub fn eval(&self, n: i64) -> Rational {
        let r = n.rem_euclid(self.period as i64) as usize;
        self.constituents[r].eval(&int(n))
    }

    pub fn summary(&self) -> QuasiPolynomialSummary {
        QuasiPolynomialSummary {
            period: self.period,
            valid_from: self.valid_from,
            constituents: self
                .constituents
                .iter()
                .map(|c| c.coeffs().iter().map(ToString::to_string).collect())
                .collect(),
        }
    }

    /// Fits constituents of degree `< degree_bound` to `values[i] = f(start + i)`,
    /// interpolating from the tail and checking every earlier value.
    pub fn fit_values(
        values: &[Rational],
        start: i64,
        period: usize,
        degree_bound: usize,
    ) -> Result<Self> {
        let per_class = degree_bound.max(1);
        if values.len() < period * per_class {
            return Err(Error::InsufficientTerms {
                needed: period * per_class,
                got: values.len(),
            });
        }
        let tail = values.len() - period * per_class;
        let mut constituents = vec![Polynomial::zero(); period];
        for offset in 0..period {
            let idx: Vec<usize> = (0..per_class).map(|j| tail + offset + j * period).collect();
            let xs: Vec<Rational> = idx.iter().map(|&i| int(start + i as i64)).collect();
            let ys: Vec<Rational> = idx.iter().map(|&i| values[i].clone()).collect();
            let r = (start + (tail + offset) as i64).rem_euclid(period as i64) as usize;
            constituents[r] = interpolate(&xs, &ys);
        }
        let qp = Self::new(constituents, start)?;
        for (i, v) in values.iter().enumerate() {
            if qp.eval(start + i as i64) != *v {
                return Err(Error::VerificationFailed(format!(
                    "quasi-polynomial disagrees with value at {}",
                    start + i as i64
                )));
            }
        }
        Ok(qp)
    }
}

/// Lagrange interpolation through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Polynomial {
    let mut out = Polynomial::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Polynomial::one();
        let mut denom = Rational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = &basis * &Polynomial::new(vec![-xj.clone(), Rational::one()]);
                denom *= xi - xj;
            }
        }
        out = &out + &basis.scale(&(yi / denom));
    }
    out
}

/// Smallest `k <= MAX_POLE_ORDER` with `denominator | (1 - t^period)^k`.
pub fn pole_order(denominator: &Polynomial, period: usize) -> Option<usize> {
    let base = Polynomial::one_minus_t_pow(period);
    let mut power = Polynomial::one();
    for k in 0..=MAX_POLE_ORDER {
        if denominator.divides(&power) {
            return Some(k);
        }
        power = &power * &base;
    }
    None
}

/// Constituents of the coefficient sequence of `series` with the given
/// period, valid from index `valid_from` on.
///
/// Writing the series as `P / (1 - t^N)^k`, coefficients past
/// `deg P - kN` are provably quasi-polynomial of degree `< k`; the
/// constituents are interpolated there and then checked against every
/// coefficient from `valid_from` on, plus `2kN` further ones.
pub fn to_quasi_polynomial(
    series: &RationalSeries,
    period: usize,
    valid_from: i64,
) -> Result<QuasiPolynomial> {
    if period == 0 {
        return Err(Error::InvalidInput("period must be positive".into()));
    }
    let k = pole_order(series.denominator(), period).ok_or(Error::PeriodIncompatible {
        period,
        max_power: MAX_POLE_ORDER,
    })?;
    if k == 0 {
        // a polynomial: eventually zero
        let start = series.numerator().degree() as i64 + 1;
        return check_from(
            series,
            QuasiPolynomial::new(vec![Polynomial::zero(); period], start)?,
            valid_from,
        );
    }
    let cofactor = Polynomial::one_minus_t_pow(period)
        .pow(k as u32)
        .div_rem(series.denominator())
        .0;
    let p = series.numerator() * &cofactor;
    let proven_from = (p.degree() as i64 - (k * period) as i64 + 1).max(0);
    let first = proven_from.max(valid_from.max(0)) as usize;
    let count = first + 2 * k * period;
    let values = series.expand(count);
    let qp = QuasiPolynomial::fit_values(&values[first..], first as i64, period, k)?;
    if qp.degree() >= k {
        return Err(Error::DegreeOverflow { bound: k - 1 });
    }
    check_from(series, qp, valid_from)
}

/// Smallest `N <= max_period` with `denominator | (1 - t^N)^k` for some `k`.
pub fn minimal_period(denominator: &Polynomial, max_period: usize) -> Option<usize> {
    (1..=max_period).find(|&n| pole_order(denominator, n).is_some())
}

/// Quasi-polynomial of the coefficients with the earliest start index it
/// fits, found by extending the provable range downwards.
pub fn eventual_quasi_polynomial(
    series: &RationalSeries,
    period: usize,
) -> Result<QuasiPolynomial> {
    let k = pole_order(series.denominator(), period).ok_or(Error::PeriodIncompatible {
        period,
        max_power: MAX_POLE_ORDER,
    })?;
    let proven_from = if k == 0 {
        series.numerator().degree() as i64 + 1
    } else {
        let cofactor = Polynomial::one_minus_t_pow(period)
            .pow(k as u32)
            .div_rem(series.denominator())
            .0;
        ((series.numerator() * &cofactor).degree() as i64 - (k * period) as i64 + 1).max(0)
    };
    let qp = to_quasi_polynomial(series, period, proven_from)?;
    let values = series.expand(proven_from as usize);
    let mut start = proven_from;
    while start > 0 && qp.eval(start - 1) == values[start as usize - 1] {
        start -= 1;
    }
    Ok(QuasiPolynomial {
        valid_from: start,
        ..qp
    })
}

fn check_from(
    series: &RationalSeries,
    qp: QuasiPolynomial,
    valid_from: i64,
) -> Result<QuasiPolynomial> {
    let end = qp.valid_from.max(valid_from.max(0)) as usize + 4 * qp.period;
    let values = series.expand(end);
    let start = valid_from.max(0) as usize;
    for (i, value) in values.iter().enumerate().take(end).skip(start) {
        if qp.eval(i as i64) != *value {
            return Err(Error::VerificationFailed(format!(
                "quasi-polynomial disagrees with coefficient {i}"
            )));
        }
    }
    Ok(QuasiPolynomial { valid_from, ..qp })
}

/// `qp(-i)`, using the constituent of `-i mod period`.
pub fn negative_evaluation(qp: &QuasiPolynomial, i: i64) -> Rational {
    qp.eval(-i)
}

/// Checks `f_s(-i) = (-1)^(n+1) f_s(i)` (growth) or
/// `f_b(-i) = (-1)^n f_b(i - 1)` (cumulative) for `i = 1..=range`.
pub fn reciprocity_qp_check(qp: &QuasiPolynomial, n: usize, kind: SeriesKind, range: i64) -> bool {
    (1..=range).all(|i| {
        let (exponent, other) = match kind {
            SeriesKind::Growth => (n + 1, qp.eval(i)),
            SeriesKind::Cumulative => (n, qp.eval(i - 1)),
        };
        let rhs = if exponent % 2 == 0 { other } else { -other };
        negative_evaluation(qp, i) == rhs
    })
}

/// `n * #classes * Vol(P_Gamma)`.
pub fn topological_density(graph: &QuotientGraph, space: &CycleSpace) -> Result<Rational> {
    let vol = space.polytope.volume()?;
    Ok(vol * int(graph.rank() as i64) * int(graph.class_count() as i64))
}

/// Whether the mean of the degree `n - 1` coefficients of the growth
/// constituents equals `density`.
pub fn density_cross_check(qp_s: &QuasiPolynomial, n: usize, density: &Rational) -> bool {
    if n == 0 {
        return false;
    }
    let sum = qp_s
        .constituents()
        .iter()
        .fold(Rational::zero(), |acc, c| acc + c.coeff(n - 1));
    sum / int(qp_s.period() as i64) == *density
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::DEFAULT_MAX_CYCLES;
    use crate::field::rat;
    use crate::fixtures;
    use crate::series::rational::{cumulative_series, fit_rational};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn wakatsuki_v0() -> RationalSeries {
        let terms: Vec<u64> = (0..20)
            .map(|n: u64| match n {
                0 => 1,
                _ if n.is_multiple_of(2) => 9 * n / 2 - 1,
                _ => (9 * n - 1) / 2,
            })
            .collect();
        fit_rational(&terms, &Polynomial::one_minus_t_pow(2).pow(2), 8).unwrap()
    }

    #[test]
    fn wakatsuki_constituents() {
        let qp = to_quasi_polynomial(&wakatsuki_v0(), 2, 1).unwrap();
        assert_eq!(
            qp.constituent(0),
            &Polynomial::new(vec![int(-1), rat(9, 2)])
        );
        assert_eq!(
            qp.constituent(1),
            &Polynomial::new(vec![rat(-1, 2), rat(9, 2)])
        );
        assert_eq!(qp.valid_from(), 1);
        assert!(to_quasi_polynomial(&wakatsuki_v0(), 2, 0).is_err());
        assert!(density_cross_check(&qp, 2, &rat(9, 2)));
    }

    #[test]
    fn trivial_and_incompatible() {
        let s = RationalSeries::from_ints(&[1], &[1, -1]).unwrap();
        let qp = to_quasi_polynomial(&s, 1, 0).unwrap();
        assert_eq!(qp.constituents(), &[p(&[1])]);
        let s = RationalSeries::from_ints(&[1], &[1, 0, 1]).unwrap();
        assert_eq!(
            to_quasi_polynomial(&s, 3, 0),
            Err(Error::PeriodIncompatible {
                period: 3,
                max_power: MAX_POLE_ORDER
            })
        );
        assert!(to_quasi_polynomial(&s, 4, 0).is_ok());
    }

    #[test]
    fn dia_constituents_match_expansion() {
        let dia = RationalSeries::from_ints(&[1, 2, 4, 2, 1], &[1, -2, 0, 2, -1]).unwrap();
        let qp = to_quasi_polynomial(&dia, 4, 1).unwrap();
        let terms = dia.expand(60);
        for i in 1..60 {
            assert_eq!(qp.eval(i), terms[i as usize]);
        }
        assert_eq!(qp.degree(), 2);
        assert!(reciprocity_qp_check(&qp, 3, SeriesKind::Growth, 10));
        let b = to_quasi_polynomial(&cumulative_series(&dia), 4, 0).unwrap();
        assert!(reciprocity_qp_check(&b, 3, SeriesKind::Cumulative, 10));
        assert!(!reciprocity_qp_check(&b, 2, SeriesKind::Cumulative, 10));
    }

    #[test]
    fn grid_reciprocity() {
        let qp = QuasiPolynomial::new(vec![p(&[0, 4])], 1).unwrap();
        assert!(reciprocity_qp_check(&qp, 2, SeriesKind::Growth, 10));
        assert_eq!(negative_evaluation(&qp, 3), int(-12));
    }

    #[test]
    fn densities() {
        let w = fixtures::wakatsuki();
        let space = CycleSpace::new(&w, DEFAULT_MAX_CYCLES).unwrap();
        assert_eq!(topological_density(&w, &space).unwrap(), rat(9, 2));
        let g = fixtures::grid(2);
        let space = CycleSpace::new(&g, DEFAULT_MAX_CYCLES).unwrap();
        assert_eq!(topological_density(&g, &space).unwrap(), int(4));
    }

    #[test]
    fn eventual_start() {
        let qp = eventual_quasi_polynomial(&wakatsuki_v0(), 2).unwrap();
        assert_eq!(qp.valid_from(), 1);
        assert_eq!(minimal_period(wakatsuki_v0().denominator(), 10), Some(2));
        let dia = RationalSeries::from_ints(&[1, 2, 4, 2, 1], &[1, -2, 0, 2, -1]).unwrap();
        assert_eq!(minimal_period(dia.denominator(), 10), Some(2));
    }

    #[test]
    fn interpolation() {
        let xs = [int(0), int(1), int(2)];
        let ys = [int(1), int(3), int(7)];
        assert_eq!(interpolate(&xs, &ys), p(&[1, 1, 1]));
    }
}
