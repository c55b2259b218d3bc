use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pgrowth::{DEFAULT_MAX_CYCLES, DEFAULT_MAX_STATES};

/// Growth sequences, growth polytopes, invariants and rational growth
/// series of periodic graphs.
#[derive(Debug, Parser)]
#[command(name = "pgrowth", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: GlobalOptions,
}

#[derive(Debug, Args)]
pub struct GlobalOptions {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write a plot (SVG for geometry, CSV for sequences) to this path.
    #[arg(long, global = true)]
    pub plot: Option<PathBuf>,

    /// Cap on vertices settled by ball searches.
    #[arg(long, default_value_t = DEFAULT_MAX_STATES, global = true)]
    pub max_states: usize,

    /// Cap on enumerated cycles of the quotient graph.
    #[arg(long, default_value_t = DEFAULT_MAX_CYCLES, global = true)]
    pub max_cycles: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    /// Points of Im(nu) labelled with their weights, and the polytope outline.
    NuImage,
    /// The polytope outline and vertices only.
    Polytope,
}

#[derive(Debug, Args)]
pub struct NetArgs {
    /// Net file, or the name of a bundled net (see `pgrowth growth --help`).
    pub net: String,
}

#[derive(Debug, Args)]
pub struct StartArgs {
    /// Start vertex class; defaults to the first class.
    #[arg(long)]
    pub start: Option<String>,
}

#[derive(Debug, Args)]
pub struct PolytopeArgs {
    /// Bundled polytope name (square, cross, triangle) or vertex list
    /// `x1,y1;x2,y2;...` with rational coordinates.
    pub polytope: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Growth sequence s_0, s_1, ... and its cumulative sums.
    Growth {
        #[command(flatten)]
        net: NetArgs,
        #[command(flatten)]
        start: StartArgs,
        /// Number of terms.
        #[arg(long, default_value_t = 13)]
        terms: usize,
    },
    /// Cycles, Im(nu) and the growth polytope.
    Polytope {
        #[command(flatten)]
        net: NetArgs,
        /// What `--plot` draws.
        #[arg(long, value_enum, default_value_t = PlotKind::NuImage)]
        plot_kind: PlotKind,
    },
    /// C1, C2, P-initial verdict, alpha window and asymptotic constants.
    Invariants {
        #[command(flatten)]
        net: NetArgs,
        #[command(flatten)]
        start: StartArgs,
        /// Ball radius for the empirical C2 bound when C2 is not computable.
        #[arg(long, default_value_t = 20)]
        radius: u64,
    },
    /// Decide whether the start vertex is well-arranged.
    Wellarranged {
        #[command(flatten)]
        net: NetArgs,
        #[command(flatten)]
        start: StartArgs,
        /// Largest uniform multiplier of the d_v tried.
        #[arg(long, default_value_t = 2)]
        multipliers: u64,
    },
    /// Rational growth series fitted with a theorem-provided denominator.
    Series {
        #[command(flatten)]
        net: NetArgs,
        #[command(flatten)]
        start: StartArgs,
        /// Extra terms that must satisfy the recurrence.
        #[arg(long, default_value_t = pgrowth::series::DEFAULT_GUARD)]
        guard: usize,
        /// Use this denominator (coefficients `c0,c1,...`) instead of the
        /// well-arranged pipeline.
        #[arg(long, allow_hyphen_values = true)]
        denominator: Option<String>,
        /// Compute at least this many terms.
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Topological density and its check against the fitted growth series.
    Density {
        #[command(flatten)]
        net: NetArgs,
        #[command(flatten)]
        start: StartArgs,
        /// Extra terms that must satisfy the recurrence.
        #[arg(long, default_value_t = pgrowth::series::DEFAULT_GUARD)]
        guard: usize,
    },
    /// Shifted Ehrhart counts, fitted quasi-polynomial and reciprocity.
    Ehrhart {
        #[command(flatten)]
        polytope: PolytopeArgs,
        /// Shift vector `v`, comma separated rationals; defaults to 0.
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
        /// Dilation offset.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        alpha: String,
        /// Number of counts d = 0, 1, ... to report; also the reciprocity range.
        #[arg(long, default_value_t = 7)]
        terms: usize,
    },
    /// The single-class periodic graph of a polytope and its checks.
    Gammaq {
        #[command(flatten)]
        polytope: PolytopeArgs,
        /// Number of cumulative terms compared with lattice point counts.
        #[arg(long, default_value_t = 9)]
        terms: usize,
        /// Distances are compared with the gauge for |x|_inf <= radius.
        #[arg(long, default_value_t = 10)]
        radius: u64,
    },
}
