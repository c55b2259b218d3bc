//! The machine-readable result document and its text rendering.

use std::fmt::Write;

use pgrowth::ExactField;
use serde::{Deserialize, Serialize};

/// An exact value with a decimal approximation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scalar {
    pub exact: String,
    pub approx: f64,
}

impl Scalar {
    pub fn of<F: ExactField>(x: &F) -> Self {
        Self {
            exact: x.to_string(),
            approx: x.approx(),
        }
    }

    fn render(&self) -> String {
        if self.exact.parse::<i64>().is_ok() {
            self.exact.clone()
        } else {
            format!("{} ({:.6})", self.exact, self.approx)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetInfo {
    pub name: Option<String>,
    pub rank: usize,
    pub classes: Vec<String>,
    pub directed_edges: usize,
    pub undirected: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub start: String,
    pub terms: Vec<u64>,
    pub cumulative: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FacetReport {
    pub normal: Vec<String>,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NuPoint {
    pub point: Vec<String>,
    pub weights: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolytopeReport {
    pub cycles: usize,
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
    pub facets: Vec<FacetReport>,
    pub volume: Option<Scalar>,
    pub nu_image: Vec<NuPoint>,
    pub strongly_connected: bool,
    pub p_initial: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct C2Report {
    pub exact: Option<Scalar>,
    pub lower_bound: Option<Scalar>,
    pub radius: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub start: String,
    pub p_initial: bool,
    pub d_values: Option<Vec<u64>>,
    pub c1: Scalar,
    pub c2: C2Report,
    pub alpha_window: Option<[Scalar; 2]>,
    pub asymptotic_c1: Scalar,
    pub asymptotic_c2: Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WellArrangedReport {
    pub start: String,
    pub verdict: String,
    pub d: Option<Vec<u64>>,
    pub simplices: Option<Vec<Vec<usize>>>,
    pub reason: Option<String>,
    pub counterexamples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub start: String,
    pub terms: Vec<u64>,
    pub source: String,
    pub certified: bool,
    pub fitting_denominator: Vec<String>,
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
    pub rendered: String,
    pub reciprocity: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstituentsReport {
    pub period: usize,
    pub valid_from: i64,
    pub constituents: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub density: Scalar,
    pub volume: Scalar,
    pub growth: Option<ConstituentsReport>,
    pub constituent_mean: Option<Scalar>,
    pub cross_check: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EhrhartReport {
    pub vertices: Vec<Vec<String>>,
    pub dim: usize,
    pub shift: Vec<String>,
    pub alpha: String,
    pub counts: Vec<u64>,
    pub interior_counts: Vec<u64>,
    pub quasi_polynomial: ConstituentsReport,
    pub reciprocity: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaQReport {
    pub vertices: Vec<Vec<String>>,
    pub minimal_dilation: u64,
    pub edges: usize,
    pub cumulative: Vec<u64>,
    pub lattice_counts: Vec<u64>,
    pub counts_match: bool,
    pub distance_check: Option<bool>,
    pub reflexive: Option<bool>,
    pub shell_check: Option<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub net: Option<NetInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub growth: Option<GrowthReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polytope: Option<PolytopeReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub well_arranged: Option<WellArrangedReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<DensityReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ehrhart: Option<EhrhartReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_q: Option<GammaQReport>,
}

fn point(p: &[String]) -> String {
    format!("({})", p.join(", "))
}

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn verdict(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}

fn constituents(out: &mut String, c: &ConstituentsReport) {
    let _ = writeln!(out, "  period: {}, valid from: {}", c.period, c.valid_from);
    for (r, coeffs) in c.constituents.iter().enumerate() {
        let _ = writeln!(out, "  n = {r} mod {}: [{}]", c.period, coeffs.join(", "));
    }
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(net) = &self.net {
            let _ = writeln!(
                out,
                "net: {} (rank {}, {} classes, {} directed edges, {})",
                net.name.as_deref().unwrap_or("-"),
                net.rank,
                net.classes.len(),
                net.directed_edges,
                if net.undirected {
                    "undirected"
                } else {
                    "directed"
                }
            );
        }
        if let Some(g) = &self.growth {
            let _ = writeln!(out, "start: {}", g.start);
            let _ = writeln!(out, "growth: {}", list(&g.terms));
            let _ = writeln!(out, "cumulative: {}", list(&g.cumulative));
        }
        if let Some(p) = &self.polytope {
            let _ = writeln!(out, "cycles: {}", p.cycles);
            let _ = writeln!(out, "strongly connected: {}", p.strongly_connected);
            let _ = writeln!(out, "polytope dimension: {}", p.dim);
            let _ = writeln!(out, "vertices ({}):", p.vertices.len());
            for v in &p.vertices {
                let _ = writeln!(out, "  {}", point(v));
            }
            let _ = writeln!(out, "facets ({}):", p.facets.len());
            for f in &p.facets {
                let _ = writeln!(out, "  {} . x <= {}", point(&f.normal), f.rhs);
            }
            if let Some(v) = &p.volume {
                let _ = writeln!(out, "volume: {}", v.render());
            }
            let _ = writeln!(out, "Im(nu) ({} points):", p.nu_image.len());
            for n in &p.nu_image {
                let _ = writeln!(out, "  {} weights {}", point(&n.point), list(&n.weights));
            }
            let _ = writeln!(out, "P-initial by class: {}", list(&p.p_initial));
        }
        if let Some(i) = &self.invariants {
            let _ = writeln!(out, "start: {}", i.start);
            let _ = writeln!(out, "P-initial: {}", i.p_initial);
            if let Some(d) = &i.d_values {
                let _ = writeln!(out, "d_v: {}", list(d));
            }
            let _ = writeln!(out, "C1: {}", i.c1.render());
            match (&i.c2.exact, &i.c2.lower_bound) {
                (Some(c2), _) => {
                    let _ = writeln!(out, "C2: {}", c2.render());
                }
                (None, Some(lb)) => {
                    let _ = writeln!(
                        out,
                        "C2: unknown (>= {} over radius {})",
                        lb.render(),
                        i.c2.radius.unwrap_or(0)
                    );
                }
                _ => {}
            }
            match &i.alpha_window {
                Some([lo, hi]) => {
                    let _ = writeln!(out, "alpha window: [{}, {})", lo.render(), hi.render());
                }
                None => {
                    let _ = writeln!(out, "alpha window: none");
                }
            }
            let _ = writeln!(out, "C'1: {}", i.asymptotic_c1.render());
            let _ = writeln!(out, "C'2: {}", i.asymptotic_c2.render());
        }
        if let Some(w) = &self.well_arranged {
            let _ = writeln!(out, "start: {}", w.start);
            let _ = writeln!(out, "verdict: {}", w.verdict);
            if let Some(d) = &w.d {
                let _ = writeln!(out, "d_v: {}", list(d));
            }
            if let Some(s) = &w.simplices {
                let _ = writeln!(out, "simplices: {}", s.len());
            }
            if let Some(r) = &w.reason {
                let _ = writeln!(out, "reason: {r}");
            }
            if w.counterexamples > 0 {
                let _ = writeln!(out, "counterexamples: {}", w.counterexamples);
            }
        }
        if let Some(s) = &self.series {
            let _ = writeln!(out, "start: {}", s.start);
            let _ = writeln!(out, "terms: {}", list(&s.terms));
            let _ = writeln!(
                out,
                "denominator source: {}{}",
                s.source,
                if s.certified {
                    ""
                } else {
                    " (unverified beyond the computed terms)"
                }
            );
            let _ = writeln!(out, "series: {}", s.rendered);
            let _ = writeln!(out, "reciprocity: {}", verdict(s.reciprocity));
        }
        if let Some(d) = &self.density {
            let _ = writeln!(out, "volume: {}", d.volume.render());
            let _ = writeln!(out, "density: {}", d.density.render());
            if let Some(g) = &d.growth {
                let _ = writeln!(out, "growth quasi-polynomial:");
                constituents(&mut out, g);
            }
            if let Some(m) = &d.constituent_mean {
                let _ = writeln!(out, "mean leading coefficient: {}", m.render());
            }
            if let Some(c) = d.cross_check {
                let _ = writeln!(out, "cross-check: {}", verdict(c));
            }
        }
        if let Some(e) = &self.ehrhart {
            let _ = writeln!(
                out,
                "polytope: {} (dimension {})",
                e.vertices
                    .iter()
                    .map(|v| point(v))
                    .collect::<Vec<_>>()
                    .join(" "),
                e.dim
            );
            let _ = writeln!(out, "shift: {}, alpha: {}", point(&e.shift), e.alpha);
            let _ = writeln!(out, "counts: {}", list(&e.counts));
            let _ = writeln!(out, "interior counts: {}", list(&e.interior_counts));
            let _ = writeln!(out, "quasi-polynomial:");
            constituents(&mut out, &e.quasi_polynomial);
            let _ = writeln!(out, "reciprocity: {}", verdict(e.reciprocity));
        }
        if let Some(g) = &self.gamma_q {
            let _ = writeln!(
                out,
                "polytope: {}",
                g.vertices
                    .iter()
                    .map(|v| point(v))
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            let _ = writeln!(out, "minimal dilation: {}", g.minimal_dilation);
            let _ = writeln!(out, "loop edges: {}", g.edges);
            let _ = writeln!(out, "cumulative: {}", list(&g.cumulative));
            let _ = writeln!(out, "lattice counts: {}", list(&g.lattice_counts));
            let _ = writeln!(out, "counts match: {}", g.counts_match);
            if let Some(c) = g.distance_check {
                let _ = writeln!(out, "distance = ceil(gauge): {}", verdict(c));
            }
            if let Some(r) = g.reflexive {
                let _ = writeln!(out, "reflexive: {r}");
            }
            if let Some(c) = g.shell_check {
                let _ = writeln!(out, "interior shell check: {}", verdict(c));
            }
        }
        out
    }
}
