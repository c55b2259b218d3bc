//! Benchmark inputs shared by the criterion harness.

use pgrowth::field::rat;
use pgrowth::{fixtures, gamma_q, QuotientGraph, Rational};

/// Nets of increasing size used by the ball and cycle benchmarks.
pub fn nets() -> Vec<(&'static str, QuotientGraph)> {
    vec![
        ("z2", fixtures::grid(2)),
        ("wakatsuki", fixtures::wakatsuki()),
        ("dia", fixtures::dia()),
        ("4.8.8", fixtures::tiling_488()),
        (
            "gamma-square",
            gamma_q(&fixtures::polytope("square").expect("bundled")).expect("lattice polytope"),
        ),
    ]
}

/// Deterministic rational points scattered through a box, many of them on
/// the hull.
pub fn cloud(count: usize, dim: usize) -> Vec<Vec<Rational>> {
    const STEPS: [i64; 4] = [7, 11, 13, 17];
    (0..count as i64)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let m = STEPS[j % STEPS.len()];
                    rat((i * m + j as i64 * 5) % 41 - 20, 1 + (i + j as i64) % 3)
                })
                .collect()
        })
        .collect()
}

/// The growth sequence of #60, as listed in the literature.
pub const SACADA_60: [u64; 37] = [
    1, 4, 11, 24, 41, 62, 90, 122, 157, 200, 247, 296, 354, 416, 479, 552, 629, 706, 794, 886, 977,
    1080, 1187, 1292, 1410, 1532, 1651, 1784, 1921, 2054, 2202, 2354, 2501, 2664, 2831, 2992, 3170,
];
