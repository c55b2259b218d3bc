use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::field::Rational;

/// Number of extra terms that must satisfy the recurrence after fitting.
pub const DEFAULT_GUARD: usize = 8;

/// A generating function `numerator / denominator` in lowest terms with
/// `denominator(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalSeries {
    numerator: Polynomial,
    denominator: Polynomial,
}

/// Which reciprocity law to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    /// `G(1/t) = (-1)^n G(t)` for the growth series.
    Growth,
    /// `G(1/t) = (-1)^(n+1) t G(t)` for the cumulative series.
    Cumulative,
}

impl RationalSeries {
    /// Reduces `numerator / denominator`; fails when `denominator(0) = 0`.
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Result<Self> {
        if denominator.coeff(0).is_zero() {
            return Err(Error::InvalidInput(
                "denominator must have a nonzero constant term".into(),
            ));
        }
        let g = numerator.gcd(&denominator);
        let (mut num, mut den) = if g.is_zero() || g.degree() == 0 {
            (numerator, denominator)
        } else {
            (numerator.div_rem(&g).0, denominator.div_rem(&g).0)
        };
        let c = den.coeff(0);
        if !c.is_one() {
            let inv = Rational::one() / c;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(Self {
            numerator: num,
            denominator: den,
        })
    }

    pub fn from_ints(numerator: &[i64], denominator: &[i64]) -> Result<Self> {
        Self::new(
            Polynomial::from_ints(numerator),
            Polynomial::from_ints(denominator),
        )
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    /// The first `count` power series coefficients.
    pub fn expand(&self, count: usize) -> Vec<Rational> {
        let d = self.denominator.coeffs();
        let mut out: Vec<Rational> = Vec::with_capacity(count);
        for i in 0..count {
            let mut s = self.numerator.coeff(i);
            for (j, dj) in d.iter().enumerate().skip(1).take(i) {
                if !dj.is_zero() {
                    s -= dj * &out[i - j];
                }
            }
            // d[0] == 1
            out.push(s);
        }
        out
    }

    /// Expansion as integers, or `None` if a coefficient is fractional.
    pub fn expand_integers(&self, count: usize) -> Option<Vec<BigInt>> {
        self.expand(count)
            .into_iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

fn to_rationals<T: Clone + Into<BigInt>>(terms: &[T]) -> Vec<Rational> {
    terms
        .iter()
        .map(|t| Rational::from_integer(t.clone().into()))
        .collect()
}

/// Fits `N / denominator` to `terms` with `deg N <= deg denominator`; the
/// last `guard` terms must satisfy the recurrence of the denominator.
pub fn fit_rational<T: Clone + Into<BigInt>>(
    terms: &[T],
    denominator: &Polynomial,
    guard: usize,
) -> Result<RationalSeries> {
    fit_rational_with_numerator_degree(terms, denominator, denominator.degree(), guard)
}

/// Like [`fit_rational`] with an explicit bound on the numerator degree,
/// for sequences that become quasi-polynomial only after a few terms.
pub fn fit_rational_with_numerator_degree<T: Clone + Into<BigInt>>(
    terms: &[T],
    denominator: &Polynomial,
    numerator_degree: usize,
    guard: usize,
) -> Result<RationalSeries> {
    if denominator.coeff(0).is_zero() {
        return Err(Error::InvalidInput(
            "denominator must have a nonzero constant term".into(),
        ));
    }
    let needed = numerator_degree + guard + 1;
    if terms.len() < needed {
        return Err(Error::InsufficientTerms {
            needed,
            got: terms.len(),
        });
    }
    let s = to_rationals(terms);
    let d = denominator.coeffs();
    let convolve = |i: usize| -> Rational {
        let mut acc = Rational::zero();
        for (j, dj) in d.iter().enumerate().take(i + 1) {
            if !dj.is_zero() {
                acc += dj * &s[i - j];
            }
        }
        acc
    };
    let numerator = Polynomial::new((0..=numerator_degree).map(convolve).collect());
    if let Some(index) = (numerator_degree + 1..s.len()).find(|&i| !convolve(i).is_zero()) {
        return Err(Error::RecurrenceViolation { index });
    }
    RationalSeries::new(numerator, denominator.clone())
}

/// Least common multiple of the `d_v`, a quasi-period of the growth sequence
/// from a P-initial start.
pub fn quasi_period_p_initial(d_values: &[u64]) -> u64 {
    d_values.iter().fold(1, |acc, &d| acc.lcm(&d.max(1)))
}

/// Polynomial LCM over simplices of `prod (1 - t^{d_v})`.
pub fn wa_denominator(simplex_d_values: &[Vec<u64>]) -> Polynomial {
    simplex_d_values.iter().fold(Polynomial::one(), |acc, ds| {
        let product = ds.iter().fold(Polynomial::one(), |p, &d| {
            &p * &Polynomial::one_minus_t_pow(d as usize)
        });
        acc.lcm(&product)
    })
}

/// Tests the reciprocity law for a rank `n` series as a polynomial identity.
pub fn reciprocity_check(series: &RationalSeries, n: usize, kind: SeriesKind) -> bool {
    let num = series.numerator();
    let den = series.denominator();
    let (dn, dd) = (num.degree(), den.degree());
    let m = dn.max(dd);
    let exponent = match kind {
        SeriesKind::Growth => n,
        SeriesKind::Cumulative => n + 1,
    };
    let extra = usize::from(kind == SeriesKind::Cumulative);
    // G(1/t) = num*(t) t^{dd - dn} / den*(t)
    let lhs = &num.reversed().shift(m - dn) * den;
    let mut rhs = &den.reversed().shift(m - dd + extra) * num;
    if exponent % 2 == 1 {
        rhs = -&rhs;
    }
    lhs == rhs
}

/// `growth / (1 - t)`.
pub fn cumulative_series(growth: &RationalSeries) -> RationalSeries {
    RationalSeries::new(
        growth.numerator().clone(),
        growth.denominator() * &Polynomial::one_minus_t_pow(1),
    )
    .expect("constant term stays nonzero")
}
