//! Exact analysis of periodic graphs: growth sequences, growth polytopes,
//! the constants bounding graph distance against the polytope gauge, rational
//! growth series with certified denominators, and shifted Ehrhart counting.
//!
//! A periodic graph is given by its [`QuotientGraph`]: finitely many vertex
//! classes and edges labelled with lattice translations.
//!
//! ```
//! use pgrowth::{fixtures, growth_sequence, Vertex, DEFAULT_MAX_STATES};
//!
//! let dia = fixtures::dia();
//! let s = growth_sequence(&dia, &Vertex::origin(0, 3), 6, DEFAULT_MAX_STATES).unwrap();
//! assert_eq!(s, vec![1, 4, 12, 24, 42, 64]);
//! ```

pub mod cycles;
pub mod ehrhart;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod geometry;
pub mod graph;
pub mod invariants;
pub mod linalg;
pub mod netdoc;
pub mod series;

pub use cycles::{
    enumerate_cycles, growth_polytope, is_strongly_connected, nu, p_initial, p_initial_data,
    ConnectivityVerdict, Cycle, CycleSpace, NuImage, PInitialData, DEFAULT_MAX_CYCLES,
};
pub use ehrhart::{
    fit_shifted_qp, gamma_q, interior_shell_check, is_reflexive, minimal_dilation,
    verify_reciprocity, ShiftedEhrhartProblem,
};
pub use error::{Error, Result};
pub use field::{ExactField, Literal, Quadratic, Rational};
pub use geometry::{
    convex_hull, ApexStrategy, Facet, FacetTriangulation, HalfOpenRegion, Polytope,
};
pub use graph::{
    ball, closed_walk_vector, cumulative_sequence, distance, growth_sequence, Ball,
    BoundedDistance, EdgeRecord, QuotientGraph, Realization, ValidationReport, Vertex, Walk,
    DEFAULT_MAX_STATES,
};
pub use netdoc::{AnyRealization, NetDocument};
pub use series::{
    fit_rational, reciprocity_check, Polynomial, QuasiPolynomial, RationalSeries, SeriesKind,
};
