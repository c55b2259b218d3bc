//! From a graph and start vertex to a fitted growth series.

use num_integer::Integer;
use serde::Serialize;

use super::poly::Polynomial;
use super::rational::{
    fit_rational_with_numerator_degree, quasi_period_p_initial, reciprocity_check, wa_denominator,
    RationalSeries, SeriesKind,
};
use crate::error::{Error, Result};
use crate::field::{ExactField, Rational};
use crate::graph::growth_sequence;
use crate::invariants::{Context, WellArrangedConfig, WellArrangedVerdict};

/// Where the fitting denominator came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DenominatorSource {
    /// LCM over simplices of `prod (1 - t^{d_v})`; the fit is a proof.
    WellArranged,
    /// `(1 - t^N)^n` for a quasi-period `N`; the numerator degree is guessed,
    /// so the fit is only checked on the guard window.
    QuasiPeriod,
}

#[derive(Clone, Debug)]
pub struct GrowthSeries {
    pub terms: Vec<u64>,
    pub denominator: Polynomial,
    pub source: DenominatorSource,
    pub series: RationalSeries,
    pub reciprocity: bool,
    pub verdict: Option<WellArrangedVerdict>,
}

impl GrowthSeries {
    /// Whether the series is determined by theorem rather than by the guard terms alone.
    pub fn certified(&self) -> bool {
        self.source == DenominatorSource::WellArranged
    }
}

/// How many quasi-periods past `deg D` the numerator degree may reach in the
/// uncertified fallback.
const FALLBACK_PERIODS: usize = 4;

/// Well-arranged check, denominator, fit with `guard` extra terms, reciprocity.
///
/// When the start vertex is not shown well-arranged, falls back to
/// `(1 - t^N)^n` with `N` the LCM of the `d_v` (P-initial start) or of
/// `1..=c * max_weight` (otherwise), and increases the numerator degree by
/// `N` until the guard terms agree.
pub fn growth_series<F: ExactField>(
    ctx: &Context<'_, F>,
    config: &WellArrangedConfig,
    guard: usize,
) -> Result<GrowthSeries> {
    let graph = ctx.graph;
    let n = graph.rank();
    let verdict = if graph.is_undirected() {
        Some(ctx.well_arranged(config)?)
    } else {
        None
    };
    if let Some(WellArrangedVerdict::WellArranged { d, triangulations }) = &verdict {
        let simplices: Vec<Vec<u64>> = triangulations
            .iter()
            .flat_map(|t| t.simplices.iter())
            .map(|s| s.iter().map(|&i| d[i]).collect())
            .collect();
        let denominator = wa_denominator(&simplices);
        let deg = denominator.degree();
        let terms = growth_sequence(graph, &ctx.x0, deg + guard + 1, ctx.max_states)?;
        let series = fit_rational_with_numerator_degree(&terms, &denominator, deg, guard)?;
        let reciprocity = reciprocity_check(&series, n, SeriesKind::Growth);
        return Ok(GrowthSeries {
            terms,
            denominator,
            source: DenominatorSource::WellArranged,
            series,
            reciprocity,
            verdict,
        });
    }
    let period = if ctx.space.p_initial(ctx.x0.class) {
        quasi_period_p_initial(&ctx.space.p_initial_data(ctx.x0.class)?.d_values())
    } else {
        let c = graph.class_count() as u64 * graph.max_weight().max(1);
        (1..=c).fold(1u64, |acc, k| acc.lcm(&k))
    } as usize;
    let denominator = Polynomial::one_minus_t_pow(period).pow(n as u32);
    let deg = denominator.degree();
    let max_numerator = deg + FALLBACK_PERIODS * period;
    let terms = growth_sequence(graph, &ctx.x0, max_numerator + guard + 1, ctx.max_states)?;
    let mut last = Error::InsufficientTerms {
        needed: max_numerator + guard + 1,
        got: terms.len(),
    };
    for numerator_degree in (deg..=max_numerator).step_by(period) {
        let window = &terms[..numerator_degree + guard + 1];
        match fit_rational_with_numerator_degree(window, &denominator, numerator_degree, guard) {
            Ok(series) => {
                // the remaining computed terms must agree as well
                let expanded = series.expand(terms.len());
                if expanded
                    .iter()
                    .zip(&terms)
                    .all(|(a, &b)| *a == Rational::from_integer(b.into()))
                {
                    let reciprocity = reciprocity_check(&series, n, SeriesKind::Growth);
                    return Ok(GrowthSeries {
                        terms,
                        denominator,
                        source: DenominatorSource::QuasiPeriod,
                        series,
                        reciprocity,
                        verdict,
                    });
                }
            }
            Err(e) => last = e,
        }
    }
    Err(last)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::{CycleSpace, DEFAULT_MAX_CYCLES};
    use crate::fixtures;
    use crate::graph::{Vertex, DEFAULT_MAX_STATES};

    #[test]
    fn dia_pipeline() {
        let g = fixtures::dia();
        let space = CycleSpace::new(&g, DEFAULT_MAX_CYCLES).unwrap();
        let r = fixtures::dia_realization();
        let ctx = Context::new(&g, &space, &r, Vertex::origin(0, 3), DEFAULT_MAX_STATES).unwrap();
        let out = growth_series(&ctx, &WellArrangedConfig::default(), 8).unwrap();
        assert!(out.certified());
        assert_eq!(
            out.series,
            RationalSeries::from_ints(&[1, 2, 4, 2, 1], &[1, -2, 0, 2, -1]).unwrap()
        );
        assert!(out.reciprocity);
    }

    #[test]
    fn wakatsuki_fallback() {
        let g = fixtures::wakatsuki();
        let space = CycleSpace::new(&g, DEFAULT_MAX_CYCLES).unwrap();
        let r = fixtures::wakatsuki_realization();
        let ctx = Context::new(&g, &space, &r, Vertex::origin(2, 2), DEFAULT_MAX_STATES).unwrap();
        let out = growth_series(&ctx, &WellArrangedConfig::default(), 8).unwrap();
        assert!(!out.certified());
        assert!(!out.reciprocity);
        let expected: Vec<Rational> = out
            .terms
            .iter()
            .map(|&t| Rational::from_integer(t.into()))
            .collect();
        assert_eq!(out.series.expand(out.terms.len()), expected);
    }
}
