//! Polynomials, rational generating functions and quasi-polynomials.

mod pipeline;
mod poly;
mod quasi;
mod rational;

pub use pipeline::{growth_series, DenominatorSource, GrowthSeries};
pub use poly::Polynomial;
pub use quasi::{
    density_cross_check, eventual_quasi_polynomial, interpolate, minimal_period,
    negative_evaluation, pole_order, reciprocity_qp_check, to_quasi_polynomial,
    topological_density, QuasiPolynomial, QuasiPolynomialSummary, MAX_POLE_ORDER,
};
pub use rational::{
    cumulative_series, fit_rational, fit_rational_with_numerator_degree, quasi_period_p_initial,
    reciprocity_check, wa_denominator, RationalSeries, SeriesKind, DEFAULT_GUARD,
};

/// Coefficient polynomials in the series API; coefficients are integral in practice.
pub type IntPolynomial = Polynomial;
