use std::path::Path;

use pgrowth::cycles::connectivity_of;
use pgrowth::ehrhart::{ceil_gauge, COUNT_CAP};
use pgrowth::field::{parse_rational, Rational};
use pgrowth::geometry::approx_point;
use pgrowth::invariants::{C2Value, Context, WellArrangedConfig, WellArrangedVerdict};
use pgrowth::series::{
    density_cross_check, eventual_quasi_polynomial, growth_series, minimal_period,
    reciprocity_check, DenominatorSource, Polynomial, QuasiPolynomial, SeriesKind,
};
use pgrowth::{
    ball, convex_hull, cumulative_sequence, fit_rational, fixtures, gamma_q, growth_sequence,
    interior_shell_check, is_reflexive, minimal_dilation, verify_reciprocity, AnyRealization,
    CycleSpace, ExactField, NetDocument, Polytope, QuotientGraph, ShiftedEhrhartProblem, Vertex,
};

use crate::cli::{Cli, Command, GlobalOptions, PlotKind};
use crate::error::CliError;
use crate::plot::{geometry_svg, sequence_csv, Labelled};
use crate::report::*;

/// A report plus the process exit status (0 success, 1 negative verdict).
pub struct Outcome {
    pub report: AnalysisReport,
    pub status: u8,
}

type Result<T> = std::result::Result<T, CliError>;

struct Net {
    doc: NetDocument,
    graph: QuotientGraph,
    realization: AnyRealization,
}

fn load_net(source_arg: &str) -> Result<Net> {
    let doc = if Path::new(source_arg).is_file() {
        let text = std::fs::read_to_string(source_arg).map_err(|source| CliError::Io {
            path: source_arg.into(),
            source,
        })?;
        NetDocument::parse(&text).map_err(|source| CliError::Net {
            path: source_arg.into(),
            source,
        })?
    } else {
        fixtures::document(source_arg).ok_or_else(|| {
            let names: Vec<&str> = fixtures::CATALOG.iter().map(|(n, _)| *n).collect();
            CliError::Usage(format!(
                "`{source_arg}` is neither a file nor a bundled net ({})",
                names.join(", ")
            ))
        })?
    };
    let wrap = |source| CliError::Net {
        path: source_arg.into(),
        source,
    };
    let graph = doc.graph().map_err(wrap)?;
    let realization = doc.realization().map_err(wrap)?;
    Ok(Net {
        doc,
        graph,
        realization,
    })
}

fn net_info(net: &Net) -> NetInfo {
    NetInfo {
        name: net.doc.name.clone(),
        rank: net.graph.rank(),
        classes: net.graph.classes().to_vec(),
        directed_edges: net.graph.edges().len(),
        undirected: net.graph.is_undirected(),
    }
}

fn start_vertex(graph: &QuotientGraph, start: &Option<String>) -> Result<Vertex> {
    let class = match start {
        None => 0,
        Some(name) => graph.class_index(name).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown class `{name}`; classes are {}",
                graph.classes().join(", ")
            ))
        })?,
    };
    Ok(Vertex::origin(class, graph.rank()))
}

fn strings<F: ToString>(xs: &[F]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn parse_point(text: &str) -> Result<Vec<Rational>> {
    text.split(',')
        .map(|t| parse_rational(t.trim()).map_err(CliError::Core))
        .collect()
}

fn parse_polytope(source_arg: &str) -> Result<Polytope<Rational>> {
    if let Some(p) = fixtures::polytope(source_arg) {
        return Ok(p);
    }
    let points = source_arg
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(parse_point)
        .collect::<Result<Vec<_>>>()?;
    if points.is_empty() {
        return Err(CliError::Usage("polytope needs at least one vertex".into()));
    }
    Ok(convex_hull(&points, false)?)
}

fn write_plot(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn constituents_report(qp: &QuasiPolynomial) -> ConstituentsReport {
    let s = qp.summary();
    ConstituentsReport {
        period: s.period,
        valid_from: s.valid_from,
        constituents: s.constituents,
    }
}

macro_rules! with_realization {
    ($net:expr, |$r:ident| $body:expr) => {
        match &$net.realization {
            AnyRealization::Rational($r) => $body,
            AnyRealization::Quadratic($r) => $body,
        }
    };
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Growth { net, start, terms } => growth(g, &net.net, &start.start, *terms),
        Command::Polytope { net, plot_kind } => polytope(g, &net.net, *plot_kind),
        Command::Invariants { net, start, radius } => {
            invariants(g, &net.net, &start.start, *radius)
        }
        Command::Wellarranged {
            net,
            start,
            multipliers,
        } => well_arranged(g, &net.net, &start.start, *multipliers),
        Command::Series {
            net,
            start,
            guard,
            denominator,
            terms,
        } => series(
            g,
            &net.net,
            &start.start,
            *guard,
            denominator.as_deref(),
            *terms,
        ),
        Command::Density { net, start, guard } => density(g, &net.net, &start.start, *guard),
        Command::Ehrhart {
            polytope,
            shift,
            alpha,
            terms,
        } => ehrhart(g, &polytope.polytope, shift.as_deref(), alpha, *terms),
        Command::Gammaq {
            polytope,
            terms,
            radius,
        } => gammaq(g, &polytope.polytope, *terms, *radius),
    }
}

fn no_plot(g: &GlobalOptions, command: &str) -> Result<()> {
    if g.plot.is_some() {
        return Err(CliError::Usage(format!(
            "`{command}` does not produce a plot"
        )));
    }
    Ok(())
}

fn growth(
    g: &GlobalOptions,
    source_arg: &str,
    start: &Option<String>,
    terms: usize,
) -> Result<Outcome> {
    let net = load_net(source_arg)?;
    let x0 = start_vertex(&net.graph, start)?;
    let s = growth_sequence(&net.graph, &x0, terms, g.max_states)?;
    if let Some(path) = &g.plot {
        write_plot(path, &sequence_csv(&s))?;
    }
    Ok(Outcome {
        report: AnalysisReport {
            command: "growth".into(),
            net: Some(net_info(&net)),
            growth: Some(GrowthReport {
                start: net.graph.classes()[x0.class].clone(),
                cumulative: cumulative_sequence(&s),
                terms: s,
            }),
            ..Default::default()
        },
        status: 0,
    })
}

fn polytope(g: &GlobalOptions, source_arg: &str, kind: PlotKind) -> Result<Outcome> {
    let net = load_net(source_arg)?;
    let space = CycleSpace::new(&net.graph, g.max_cycles)?;
    let p = &space.polytope;
    let volume = p.volume().ok().map(|v| Scalar::of(&v));
    if let Some(path) = &g.plot {
        let vertices: Vec<Vec<f64>> = p.vertices().iter().map(|v| approx_point(v)).collect();
        let points: Vec<Labelled> = match kind {
            PlotKind::Polytope => Vec::new(),
            PlotKind::NuImage => space
                .image
                .iter()
                .map(|(pt, ws)| Labelled {
                    point: approx_point(pt),
                    label: strings(&ws.iter().copied().collect::<Vec<_>>()).join(","),
                })
                .collect(),
        };
        let title = format!(
            "{} of {}",
            match kind {
                PlotKind::NuImage => "Im(nu) and growth polytope",
                PlotKind::Polytope => "growth polytope",
            },
            net.doc.name.as_deref().unwrap_or(source_arg)
        );
        write_plot(
            path,
            &geometry_svg(net.graph.rank(), &vertices, &points, &title)?,
        )?;
    }
    let report = PolytopeReport {
        cycles: space.cycles.len(),
        dim: p.dim(),
        vertices: p.vertices().iter().map(|v| strings(v)).collect(),
        facets: p
            .facets()
            .iter()
            .map(|f| FacetReport {
                normal: strings(&f.normal),
                rhs: f.rhs.to_string(),
            })
            .collect(),
        volume,
        nu_image: space
            .image
            .iter()
            .map(|(pt, ws)| NuPoint {
                point: strings(pt),
                weights: ws.iter().copied().collect(),
            })
            .collect(),
        strongly_connected: connectivity_of(&net.graph, &space).is_strongly_connected(),
        p_initial: (0..net.graph.class_count())
            .map(|c| space.p_initial(c))
            .collect(),
    };
    Ok(Outcome {
        report: AnalysisReport {
            command: "polytope".into(),
            net: Some(net_info(&net)),
            polytope: Some(report),
            ..Default::default()
        },
        status: 0,
    })
}

fn invariants_of<F: ExactField>(ctx: &Context<'_, F>, radius: u64) -> Result<InvariantsReport>
where
    Rational: Into<F>,
{
    let report = ctx.report(radius)?;
    let (a1, a2) = ctx.asymptotic_constants()?;
    let p_initial = ctx.space.p_initial(ctx.x0.class);
    let d_values = if p_initial {
        Some(ctx.space.p_initial_data(ctx.x0.class)?.d_values())
    } else {
        None
    };
    let c2 = match &report.c2 {
        C2Value::Exact(e) => C2Report {
            exact: Some(Scalar::of(&e.value)),
            lower_bound: None,
            radius: None,
        },
        C2Value::Unknown {
            lower_bound,
            radius,
        } => C2Report {
            exact: None,
            lower_bound: Some(Scalar::of(lower_bound)),
            radius: Some(*radius),
        },
    };
    Ok(InvariantsReport {
        start: ctx.graph.classes()[ctx.x0.class].clone(),
        p_initial,
        d_values,
        c1: Scalar::of(&report.c1.value),
        c2,
        alpha_window: report
            .alpha_window
            .map(|(lo, hi)| [Scalar::of(&lo), Scalar::of(&hi)]),
        asymptotic_c1: Scalar::of(&a1.value),
        asymptotic_c2: Scalar::of(&a2.value),
    })
}

fn invariants(
    g: &GlobalOptions,
    source_arg: &str,
    start: &Option<String>,
    radius: u64,
) -> Result<Outcome> {
    no_plot(g, "invariants")?;
    let net = load_net(source_arg)?;
    let x0 = start_vertex(&net.graph, start)?;
    let space = CycleSpace::new(&net.graph, g.max_cycles)?;
    let report = with_realization!(net, |r| {
        let ctx = Context::new(&net.graph, &space, r, x0.clone(), g.max_states)?;
        invariants_of(&ctx, radius)?
    });
    Ok(Outcome {
        report: AnalysisReport {
            command: "invariants".into(),
            net: Some(net_info(&net)),
            invariants: Some(report),
            ..Default::default()
        },
        status: 0,
    })
}

fn well_arranged_report(start: String, verdict: &WellArrangedVerdict) -> WellArrangedReport {
    match verdict {
        WellArrangedVerdict::WellArranged { d, triangulations } => WellArrangedReport {
            start,
            verdict: "well-arranged".into(),
            d: Some(d.clone()),
            simplices: Some(
                triangulations
                    .iter()
                    .flat_map(|t| t.simplices.iter().cloned())
                    .collect(),
            ),
            reason: None,
            counterexamples: 0,
        },
        WellArrangedVerdict::NotWellArranged { reason } => WellArrangedReport {
            start,
            verdict: "not-well-arranged".into(),
            d: None,
            simplices: None,
            reason: Some(reason.clone()),
            counterexamples: 0,
        },
        WellArrangedVerdict::Unknown { counterexamples } => WellArrangedReport {
            start,
            verdict: "unknown".into(),
            d: None,
            simplices: None,
            reason: None,
            counterexamples: counterexamples.len(),
        },
    }
}

fn well_arranged(
    g: &GlobalOptions,
    source_arg: &str,
    start: &Option<String>,
    multipliers: u64,
) -> Result<Outcome> {
    no_plot(g, "wellarranged")?;
    let net = load_net(source_arg)?;
    let x0 = start_vertex(&net.graph, start)?;
    let space = CycleSpace::new(&net.graph, g.max_cycles)?;
    let config = WellArrangedConfig {
        multiplier_bound: multipliers,
        ..Default::default()
    };
    let verdict = with_realization!(net, |r| {
        let ctx = Context::new(&net.graph, &space, r, x0.clone(), g.max_states)?;
        ctx.well_arranged(&config)?
    });
    let status = if verdict.is_well_arranged() { 0 } else { 1 };
    Ok(Outcome {
        report: AnalysisReport {
            command: "wellarranged".into(),
            net: Some(net_info(&net)),
            well_arranged: Some(well_arranged_report(
                net.graph.classes()[x0.class].clone(),
                &verdict,
            )),
            ..Default::default()
        },
        status,
    })
}

fn parse_coefficients(text: &str) -> Result<Polynomial> {
    let coeffs = text
        .split(',')
        .map(|t| parse_rational(t.trim()).map_err(CliError::Core))
        .collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::new(coeffs))
}

fn series(
    g: &GlobalOptions,
    source_arg: &str,
    start: &Option<String>,
    guard: usize,
    denominator: Option<&str>,
    terms: Option<usize>,
) -> Result<Outcome> {
    let net = load_net(source_arg)?;
    let x0 = start_vertex(&net.graph, start)?;
    let n = net.graph.rank();
    let (terms, fitting, source, certified, fitted) = match denominator {
        Some(text) => {
            let den = parse_coefficients(text)?;
            let count = (den.degree() + guard + 1).max(terms.unwrap_or(0));
            let s = growth_sequence(&net.graph, &x0, count, g.max_states)?;
            let fitted = fit_rational(&s, &den, guard)?;
            (s, den, "supplied".to_string(), false, fitted)
        }
        None => {
            let space = CycleSpace::new(&net.graph, g.max_cycles)?;
            let out = with_realization!(net, |r| {
                let ctx = Context::new(&net.graph, &space, r, x0.clone(), g.max_states)?;
                growth_series(&ctx, &WellArrangedConfig::default(), guard)?
            });
            let source = match out.source {
                DenominatorSource::WellArranged => "well-arranged",
                DenominatorSource::QuasiPeriod => "quasi-period",
            };
            let certified = out.certified();
            let mut s = out.terms;
            if let Some(t) = terms.filter(|&t| t > s.len()) {
                s = growth_sequence(&net.graph, &x0, t, g.max_states)?;
            }
            (
                s,
                out.denominator,
                source.to_string(),
                certified,
                out.series,
            )
        }
    };
    if let Some(path) = &g.plot {
        write_plot(path, &sequence_csv(&terms))?;
    }
    let report = SeriesReport {
        start: net.graph.classes()[x0.class].clone(),
        source,
        certified,
        fitting_denominator: strings(fitting.coeffs()),
        numerator: strings(fitted.numerator().coeffs()),
        denominator: strings(fitted.denominator().coeffs()),
        rendered: fitted.to_string(),
        reciprocity: reciprocity_check(&fitted, n, SeriesKind::Growth),
        terms,
    };
    Ok(Outcome {
        report: AnalysisReport {
            command: "series".into(),
            net: Some(net_info(&net)),
            series: Some(report),
            ..Default::default()
        },
        status: 0,
    })
}

/// Periods tried when reading constituents off a fitted series.
const MAX_PERIOD: usize = 720;

fn density(
    g: &GlobalOptions,
    source_arg: &str,
    start: &Option<String>,
    guard: usize,
) -> Result<Outcome> {
    no_plot(g, "density")?;
    let net = load_net(source_arg)?;
    let x0 = start_vertex(&net.graph, start)?;
    let n = net.graph.rank();
    let space = CycleSpace::new(&net.graph, g.max_cycles)?;
    let volume = space.polytope.volume()?;
    let density = pgrowth::series::topological_density(&net.graph, &space)?;
    let fitted = with_realization!(net, |r| {
        let ctx = Context::new(&net.graph, &space, r, x0.clone(), g.max_states)?;
        growth_series(&ctx, &WellArrangedConfig::default(), guard)?
    });
    let qp = minimal_period(fitted.series.denominator(), MAX_PERIOD)
        .map(|p| eventual_quasi_polynomial(&fitted.series, p))
        .transpose()?;
    let (mean, check) = match &qp {
        Some(qp) => {
            let sum = qp
                .constituents()
                .iter()
                .fold(Rational::from_integer(0.into()), |acc, c| {
                    acc + c.coeff(n - 1)
                });
            let mean = sum / Rational::from_integer((qp.period() as i64).into());
            (
                Some(Scalar::of(&mean)),
                Some(density_cross_check(qp, n, &density)),
            )
        }
        None => (None, None),
    };
    let status = if check == Some(false) { 1 } else { 0 };
    Ok(Outcome {
        report: AnalysisReport {
            command: "density".into(),
            net: Some(net_info(&net)),
            density: Some(DensityReport {
                density: Scalar::of(&density),
                volume: Scalar::of(&volume),
                growth: qp.as_ref().map(constituents_report),
                constituent_mean: mean,
                cross_check: check,
            }),
            ..Default::default()
        },
        status,
    })
}

fn polytope_svg(g: &GlobalOptions, q: &Polytope<Rational>, title: &str) -> Result<()> {
    if let Some(path) = &g.plot {
        let vertices: Vec<Vec<f64>> = q.vertices().iter().map(|v| approx_point(v)).collect();
        write_plot(path, &geometry_svg(q.ambient_dim(), &vertices, &[], title)?)?;
    }
    Ok(())
}

fn ehrhart(
    g: &GlobalOptions,
    source_arg: &str,
    shift: Option<&str>,
    alpha: &str,
    terms: usize,
) -> Result<Outcome> {
    let q = parse_polytope(source_arg)?;
    let shift = match shift {
        Some(text) => parse_point(text)?,
        None => vec![Rational::from_integer(0.into()); q.ambient_dim()],
    };
    let alpha = parse_rational(alpha)?;
    let problem = ShiftedEhrhartProblem::new(q.clone(), shift.clone(), alpha.clone())?;
    let counts = (0..terms as i64)
        .map(|d| problem.count(d))
        .collect::<pgrowth::Result<Vec<_>>>()?;
    let interior_counts = (0..terms as i64)
        .map(|d| problem.count_interior(d))
        .collect::<pgrowth::Result<Vec<_>>>()?;
    let qp = pgrowth::fit_shifted_qp(&problem, None)?;
    let reciprocity = verify_reciprocity(&problem, terms as i64)?;
    polytope_svg(g, &q, "polytope")?;
    Ok(Outcome {
        report: AnalysisReport {
            command: "ehrhart".into(),
            ehrhart: Some(EhrhartReport {
                vertices: q.vertices().iter().map(|v| strings(v)).collect(),
                dim: q.dim(),
                shift: strings(&shift),
                alpha: alpha.to_string(),
                counts,
                interior_counts,
                quasi_polynomial: constituents_report(&qp),
                reciprocity,
            }),
            ..Default::default()
        },
        status: if reciprocity { 0 } else { 1 },
    })
}

fn gammaq(g: &GlobalOptions, source_arg: &str, terms: usize, radius: u64) -> Result<Outcome> {
    let q = parse_polytope(source_arg)?;
    let graph = gamma_q(&q)?;
    let n = q.ambient_dim();
    let x0 = Vertex::origin(0, n);
    let cumulative = cumulative_sequence(&growth_sequence(&graph, &x0, terms, g.max_states)?);
    let plain = ShiftedEhrhartProblem::plain(q.clone());
    let lattice_counts = (0..terms as i64)
        .map(|d| plain.count(d))
        .collect::<pgrowth::Result<Vec<_>>>()?;
    let zero = vec![Rational::from_integer(0.into()); n];
    let counts_match = !q.contains(&zero) || cumulative == lattice_counts;
    let distance_check = if q.origin_interior() {
        let points = box_points(n, radius as i64)?;
        let gauges = points
            .iter()
            .map(|x| ceil_gauge(&q, x))
            .collect::<pgrowth::Result<Vec<_>>>()?;
        let max = gauges.iter().copied().max().unwrap_or(0);
        let b = ball(&graph, &x0, max, g.max_states)?;
        Some(
            points
                .iter()
                .zip(&gauges)
                .all(|(x, &want)| b.distance(&Vertex::new(0, x.clone())) == Some(want)),
        )
    } else {
        None
    };
    let reflexive = is_reflexive(&q).ok();
    let shell_check = match reflexive {
        Some(true) => Some(interior_shell_check(&q, 6)?),
        _ => None,
    };
    polytope_svg(g, &q, "polytope")?;
    let ok = counts_match && distance_check != Some(false) && shell_check != Some(false);
    Ok(Outcome {
        report: AnalysisReport {
            command: "gammaq".into(),
            gamma_q: Some(GammaQReport {
                vertices: q.vertices().iter().map(|v| strings(v)).collect(),
                minimal_dilation: minimal_dilation(&q),
                edges: graph.edges().len(),
                cumulative,
                lattice_counts,
                counts_match,
                distance_check,
                reflexive,
                shell_check,
            }),
            ..Default::default()
        },
        status: if ok { 0 } else { 1 },
    })
}

/// Integer points of `[-r, r]^n` in lexicographic order.
fn box_points(n: usize, r: i64) -> Result<Vec<Vec<i64>>> {
    let side = (2 * r + 1) as u128;
    if side
        .checked_pow(n as u32)
        .is_none_or(|c| c > COUNT_CAP as u128)
    {
        return Err(CliError::Usage("distance check box is too large".into()));
    }
    let mut points = vec![Vec::new()];
    for _ in 0..n {
        points = points
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-r..=r).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    Ok(points)
}
