//! Acceptance run: one line per criterion with its timing. Exits nonzero if
//! any criterion fails or exceeds its time limit.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{brute_force_cycles, ceil_u64, q, qi, Polygon};
use pgrowth::cycles::{nu, Cycle};
use pgrowth::ehrhart::fit_shifted_qp;
use pgrowth::invariants::{C2Value, Context, WellArrangedConfig};
use pgrowth::series::{
    fit_rational_with_numerator_degree, growth_series, topological_density, DenominatorSource,
    DEFAULT_GUARD,
};
use pgrowth::{
    ball, closed_walk_vector, cumulative_sequence, enumerate_cycles, fit_rational, fixtures,
    gamma_q, growth_sequence, interior_shell_check, is_reflexive, reciprocity_check, CycleSpace,
    ExactField, Polynomial, Polytope, QuotientGraph, Rational, RationalSeries, Realization,
    SeriesKind, ShiftedEhrhartProblem, Vertex, Walk, DEFAULT_MAX_CYCLES, DEFAULT_MAX_STATES,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn space(g: &QuotientGraph) -> Result<CycleSpace, String> {
    CycleSpace::new(g, DEFAULT_MAX_CYCLES).map_err(err)
}

fn series(num: &[i64], den: &[i64]) -> RationalSeries {
    RationalSeries::from_ints(num, den).expect("valid series")
}

fn terms_of(f: impl Fn(u64) -> u64, count: u64) -> Vec<u64> {
    (0..count).map(f).collect()
}

fn wakatsuki_v0(n: u64) -> u64 {
    match n {
        0 => 1,
        _ if n.is_multiple_of(2) => 9 * n / 2 - 1,
        _ => (9 * n - 1) / 2,
    }
}

fn wakatsuki_v2(n: u64) -> u64 {
    match n {
        0 => 1,
        1 => 2,
        2 => 4,
        _ if n.is_multiple_of(2) => 3 * n,
        _ => 6 * n - 6,
    }
}

fn criterion_1() -> Outcome {
    let g = fixtures::wakatsuki();
    for (class, expected) in [
        (0, terms_of(wakatsuki_v0, 51)),
        (1, terms_of(wakatsuki_v0, 51)),
        (2, terms_of(wakatsuki_v2, 51)),
    ] {
        let s =
            growth_sequence(&g, &Vertex::origin(class, 2), 51, DEFAULT_MAX_STATES).map_err(err)?;
        ensure!(s == expected, "class v{class}: {s:?}");
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let g = fixtures::wakatsuki();
    let r = fixtures::wakatsuki_realization();
    let s = space(&g)?;
    for (edges, mu) in [(vec![5, 0], vec![1, 0]), (vec![6, 3, 9], vec![1, 1])] {
        let start = Vertex::origin(g.edge(edges[0]).src, 2);
        let v = closed_walk_vector(&g, &Walk::new(start, edges.clone())).map_err(err)?;
        ensure!(v == mu, "mu of {edges:?} is {v:?}");
        let c = Cycle::from_edges(&g, &edges);
        let w = qi(edges.len() as i64);
        ensure!(
            nu(&c) == mu.iter().map(|&x| qi(x) / &w).collect::<Vec<_>>(),
            "nu of {edges:?}"
        );
    }
    ensure!(s.polytope.vertices().len() == 6, "polytope vertices");
    ensure!(s.polytope.volume().map_err(err)? == q(3, 4), "volume");
    ensure!(
        topological_density(&g, &s).map_err(err)? == q(9, 2),
        "density"
    );
    let verdicts: Vec<bool> = (0..3).map(|c| s.p_initial(c)).collect();
    ensure!(verdicts == [true, true, false], "P-initial {verdicts:?}");
    let ctx = Context::new(&g, &s, &r, Vertex::origin(2, 2), DEFAULT_MAX_STATES).map_err(err)?;
    ensure!(ctx.c1().map_err(err)?.value == qi(1), "c1 at v2");
    let (a1, a2) = ctx.asymptotic_constants().map_err(err)?;
    ensure!(
        (a1.value.clone(), a2.value.clone()) == (qi(1), qi(3)),
        "asymptotic constants ({}, {})",
        a1.value,
        a2.value
    );
    let d = ctx
        .full_support_distance(&Vertex::origin(2, 2))
        .map_err(err)?;
    ensure!(d == 3, "d'(x0, x0) = {d}");
    Ok(())
}

fn criterion_3() -> Outcome {
    let one_minus = Polynomial::one_minus_t_pow;
    let a = fit_rational(
        &[1u64, 6, 12, 12, 24, 30, 36, 36, 42, 54, 54, 60],
        &(&one_minus(4) * &one_minus(7)),
        0,
    )
    .map_err(err)?;
    ensure!(
        a == series(
            &[1, 5, 7, 5, 18, 6, 18, 5, 7, 5, 1],
            &[1, -1, 1, -1, 0, 0, 0, -1, 1, -1, 1]
        ),
        "(a) got {a}"
    );
    let b = fit_rational(
        &[1u64, 4, 12, 24, 42, 64, 92, 124, 162, 204, 252, 304, 362],
        &one_minus(4).pow(3),
        0,
    )
    .map_err(err)?;
    ensure!(
        b == series(&[1, 2, 4, 2, 1], &[1, -2, 0, 2, -1]),
        "(b) got {b}"
    );
    let c = fit_rational(&SACADA_60, &one_minus(12).pow(3), 0).map_err(err)?;
    ensure!(
        c == series(&[1, 3, 7, 11, 11, 7, 3, 1], &[1, -1, 0, -2, 2, 0, 1, -1]),
        "(c) got {c}"
    );
    Ok(())
}

const SACADA_60: [u64; 37] = [
    1, 4, 11, 24, 41, 62, 90, 122, 157, 200, 247, 296, 354, 416, 479, 552, 629, 706, 794, 886, 977,
    1080, 1187, 1292, 1410, 1532, 1651, 1784, 1921, 2054, 2202, 2354, 2501, 2664, 2831, 2992, 3170,
];

fn criterion_4() -> Outcome {
    let holds: [(&str, RationalSeries, usize); 7] = [
        ("Cairo x2", series(&[1, 2, 1], &[1, -2, 1]), 2),
        ("3^2.4.3.4", series(&[1, 4, 6, 4, 1], &[1, -1, 0, -1, 1]), 2),
        ("4.8^2", series(&[1, 2, 2, 2, 1], &[1, -1, 0, -1, 1]), 2),
        ("3.4.6.4", series(&[1, 2, 1], &[1, -2, 1]), 2),
        (
            "3^4.6",
            series(&[1, 4, 4, 6, 4, 4, 1], &[1, -1, 0, 0, 0, -1, 1]),
            2,
        ),
        ("diamond", series(&[1, 2, 4, 2, 1], &[1, -2, 0, 2, -1]), 3),
        (
            "#60",
            series(&[1, 3, 7, 11, 11, 7, 3, 1], &[1, -1, 0, -2, 2, 0, 1, -1]),
            3,
        ),
    ];
    for (name, s, n) in &holds {
        ensure!(
            reciprocity_check(s, *n, SeriesKind::Growth),
            "{name} should satisfy reciprocity"
        );
    }
    let cairo0 = series(&[1, 1, 4, 0, 2, 1, -1], &[1, -2, 2, -2, 1]);
    let v2_terms = terms_of(wakatsuki_v2, 30);
    let v2 = fit_rational_with_numerator_degree(
        &v2_terms,
        &Polynomial::one_minus_t_pow(2).pow(2),
        6,
        DEFAULT_GUARD,
    )
    .map_err(err)?;
    let v2_back: Vec<Rational> = v2_terms.iter().map(|&t| qi(t as i64)).collect();
    ensure!(v2.expand(30) == v2_back, "Wakatsuki v2 fit");
    for (name, s) in [("Cairo x0", &cairo0), ("Wakatsuki v2", &v2)] {
        ensure!(
            !reciprocity_check(s, 2, SeriesKind::Growth),
            "{name} should violate reciprocity"
        );
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let g = fixtures::dia();
    let r = fixtures::dia_realization();
    let s = space(&g)?;
    let x0 = Vertex::origin(0, 3);
    let terms = growth_sequence(&g, &x0, 13, DEFAULT_MAX_STATES).map_err(err)?;
    ensure!(
        terms == [1, 4, 12, 24, 42, 64, 92, 124, 162, 204, 252, 304, 362],
        "terms {terms:?}"
    );
    let ctx = Context::new(&g, &s, &r, x0, DEFAULT_MAX_STATES).map_err(err)?;
    let gs = growth_series(&ctx, &WellArrangedConfig::default(), DEFAULT_GUARD).map_err(err)?;
    ensure!(
        gs.source == DenominatorSource::WellArranged && gs.certified(),
        "denominator not certified"
    );
    let expected = series(&[1, 2, 4, 2, 1], &[1, -2, 0, 2, -1]);
    ensure!(gs.series == expected, "series {}", gs.series);
    let refit = fit_rational(&terms, &gs.denominator, 0).map_err(err)?;
    ensure!(refit == expected, "13-term refit {refit}");
    ensure!(gs.reciprocity, "reciprocity");
    Ok(())
}

const STEPS: [(i64, i64); 5] = [(0, 1), (1, 2), (-1, 2), (1, 3), (-1, 3)];

fn random_problem(rng: &mut ChaCha8Rng) -> (Polygon, Vec<Vec<Rational>>, Vec<Rational>, Rational) {
    loop {
        let k = rng.gen_range(3..=6);
        let points: Vec<Vec<Rational>> = (0..k)
            .map(|_| {
                (0..2)
                    .map(|_| {
                        let d = rng.gen_range(1..=3);
                        q(rng.gen_range(-4 * d..=4 * d), d)
                    })
                    .collect()
            })
            .collect();
        let Some(polygon) = Polygon::hull(&points) else {
            continue;
        };
        let mut pick = || {
            let (n, d) = STEPS[rng.gen_range(0..STEPS.len())];
            q(n, d)
        };
        let shift = vec![pick(), pick()];
        let alpha = pick();
        return (polygon, points, shift, alpha);
    }
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x005e_ed2d);
    for case in 0..20 {
        let (oracle, points, v, alpha) = random_problem(&mut rng);
        let p: Polytope<Rational> = pgrowth::convex_hull(&points, false).map_err(err)?;
        let problem = ShiftedEhrhartProblem::new(p, v.clone(), alpha.clone()).map_err(err)?;
        for d in 0..=6 {
            let t = qi(d) + &alpha;
            let closed = problem.count(d).map_err(err)?;
            let open = problem.count_interior(d).map_err(err)?;
            ensure!(
                closed == oracle.count(&t, &v, false) && open == oracle.count(&t, &v, true),
                "case {case}: counts differ at d = {d}"
            );
        }
        let qp = fit_shifted_qp(&problem, None).map_err(err)?;
        let neg_v: Vec<Rational> = v.iter().map(|x| -x).collect();
        for i in 1..=6 {
            let expected = oracle.count(&(qi(i) - &alpha), &neg_v, true);
            ensure!(
                qp.eval(-i) == qi(expected as i64),
                "case {case}: reciprocity fails at i = {i}"
            );
        }
        ensure!(
            pgrowth::verify_reciprocity(&problem, 6).map_err(err)?,
            "case {case}: library reciprocity check"
        );
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    for name in ["square", "cross", "triangle"] {
        let p = fixtures::polytope(name).expect("bundled polytope");
        let oracle = Polygon::hull(p.vertices()).expect("full dimensional");
        let g = gamma_q(&p).map_err(err)?;
        let b = ball(&g, &Vertex::origin(0, 2), 30, DEFAULT_MAX_STATES).map_err(err)?;
        for x in -10i64..=10 {
            for y in -10i64..=10 {
                let expected = ceil_u64(&oracle.gauge(&[x, y]));
                let got = b.distance(&Vertex::new(0, vec![x, y]));
                ensure!(
                    got == Some(expected),
                    "{name}: distance to ({x}, {y}) is {got:?}, expected {expected}"
                );
            }
        }
        let s = growth_sequence(&g, &Vertex::origin(0, 2), 9, DEFAULT_MAX_STATES).map_err(err)?;
        let b_seq = cumulative_sequence(&s);
        let zero = vec![qi(0), qi(0)];
        let counts: Vec<u64> = (0..9).map(|i| oracle.count(&qi(i), &zero, false)).collect();
        ensure!(b_seq == counts, "{name}: {b_seq:?} vs {counts:?}");
        ensure!(is_reflexive(&p).map_err(err)?, "{name} is reflexive");
        ensure!(
            interior_shell_check(&p, 6).map_err(err)?,
            "{name}: interior shell check"
        );
        for i in 0..=6 {
            ensure!(
                oracle.count(&qi(i + 1), &zero, true) == oracle.count(&qi(i), &zero, false),
                "{name}: shell oracle at {i}"
            );
        }
    }
    Ok(())
}

fn random_point(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Rational> {
    (0..dim)
        .map(|_| q(rng.gen_range(-20..=20), rng.gen_range(1..=6)))
        .collect()
}

fn fixture_checks<F: ExactField>(name: &str, g: &QuotientGraph, r: &Realization<F>) -> Outcome
where
    Rational: Into<F>,
{
    let s = space(g)?;
    let half = F::from(q(1, 2));
    for class in 0..g.class_count() {
        let x0 = Vertex::origin(class, g.rank());
        let ctx = Context::new(g, &s, r, x0, DEFAULT_MAX_STATES).map_err(err)?;
        let report = ctx.report(20).map_err(err)?;
        let c1 = report.c1.value.clone();
        ensure!(
            ctx.c1_empirical(20).map_err(err)? == c1 && ctx.c1_empirical(40).map_err(err)? == c1,
            "{name}/{class}: c1 does not stabilize"
        );
        let c2 = match &report.c2 {
            C2Value::Exact(e) => e.value.clone(),
            C2Value::Unknown { lower_bound, .. } => lower_bound.clone(),
        };
        ensure!(
            c2 >= F::one() || report.p_initial,
            "{name}/{class}: c2 < 1 without P-initial"
        );
        if g.is_undirected() && c1 < half && c2 < half && report.p_initial {
            let v = ctx
                .well_arranged(&WellArrangedConfig::default())
                .map_err(err)?;
            ensure!(
                v.is_well_arranged(),
                "{name}/{class}: c1, c2 < 1/2 but {v:?}"
            );
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let polytopes: Vec<Polytope<Rational>> = [
        fixtures::wakatsuki(),
        fixtures::tiling_488(),
        fixtures::dia(),
    ]
    .iter()
    .map(|g| space(g).map(|s| s.polytope))
    .collect::<Result<_, _>>()?;
    for k in 0..1000 {
        let p = &polytopes[k % polytopes.len()];
        let n = p.ambient_dim();
        let x = random_point(&mut rng, n);
        let y = random_point(&mut rng, n);
        let m = rng.gen_range(1..=9);
        let gx = p.gauge(&x).map_err(err)?;
        let scaled: Vec<Rational> = x.iter().map(|c| c * qi(m)).collect();
        ensure!(
            p.gauge(&scaled).map_err(err)? == &gx * qi(m),
            "homogeneity at {x:?}"
        );
        let sum: Vec<Rational> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        ensure!(
            p.gauge(&sum).map_err(err)? <= gx + p.gauge(&y).map_err(err)?,
            "subadditivity at {x:?}, {y:?}"
        );
    }
    let graphs = [
        ("wakatsuki", fixtures::wakatsuki()),
        ("z1", fixtures::grid(1)),
        ("z2", fixtures::grid(2)),
        ("z3", fixtures::grid(3)),
        ("dia", fixtures::dia()),
        ("4.8.8", fixtures::tiling_488()),
    ];
    for (name, g) in &graphs {
        let fast: std::collections::BTreeSet<Vec<usize>> = enumerate_cycles(g, DEFAULT_MAX_CYCLES)
            .map_err(err)?
            .into_iter()
            .map(|c| c.edge_indices)
            .collect();
        ensure!(fast == brute_force_cycles(g), "{name}: cycle sets differ");
    }
    fixture_checks(
        "wakatsuki",
        &graphs[0].1,
        &fixtures::wakatsuki_realization(),
    )?;
    for (name, g) in &graphs[1..4] {
        fixture_checks(name, g, &Realization::<Rational>::zero(g))?;
    }
    fixture_checks("dia", &graphs[4].1, &fixtures::dia_realization())?;
    fixture_checks("4.8.8", &graphs[5].1, &fixtures::tiling_488_realization())?;
    Ok(())
}

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    // Ignore the harness flags cargo passes; `--list` must print nothing.
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let criteria = [
        Criterion {
            id: 1,
            title: "Wakatsuki growth sequences",
            limit: Duration::from_secs(5),
            run: criterion_1,
        },
        Criterion {
            id: 2,
            title: "Wakatsuki structure and constants",
            limit: Duration::from_secs(10),
            run: criterion_2,
        },
        Criterion {
            id: 3,
            title: "series fitting from listed terms",
            limit: Duration::from_secs(1),
            run: criterion_3,
        },
        Criterion {
            id: 4,
            title: "reciprocity battery",
            limit: Duration::from_secs(1),
            run: criterion_4,
        },
        Criterion {
            id: 5,
            title: "end-to-end diamond pipeline",
            limit: Duration::from_secs(30),
            run: criterion_5,
        },
        Criterion {
            id: 6,
            title: "shifted Ehrhart oracle suite",
            limit: Duration::from_secs(60),
            run: criterion_6,
        },
        Criterion {
            id: 7,
            title: "single-class polytope graphs",
            limit: Duration::from_secs(30),
            run: criterion_7,
        },
        Criterion {
            id: 8,
            title: "property suites",
            limit: Duration::from_secs(120),
            run: criterion_8,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let verdict = match &outcome {
            Err(e) => format!("FAIL ({e})"),
            Ok(()) if elapsed > c.limit => "FAIL (time limit)".to_owned(),
            Ok(()) => "PASS".to_owned(),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!(
            "criterion {}: {verdict} {:.3}s (limit {}s) {}",
            c.id,
            elapsed.as_secs_f64(),
            c.limit.as_secs(),
            c.title
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
